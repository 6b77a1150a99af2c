// Copyright 2026 The qtransfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qtransfer/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <locale>
#include <map>
#include <random>
#include <sstream>

#include "qtransfer/error.hpp"

namespace qtransfer {

namespace {

constexpr std::size_t kMaxMaskQubits = 63;

void check_num_qubits(std::size_t n) {
    require(n >= 1, ErrorCode::InvalidSize, "a Pauli sum needs at least one qubit");
    require(n <= kMaxMaskQubits, ErrorCode::InvalidSize,
            "at most " + std::to_string(kMaxMaskQubits) + " qubits are supported");
}

void check_dense_size(std::size_t n) {
    require(n <= kMaxDenseQubits, ErrorCode::SizeLimit,
            std::to_string(n) + " qubits exceeds the dense limit of " +
                std::to_string(kMaxDenseQubits));
}

PauliAxis axis_from_char(char c, const std::string &context) {
    switch (c) {
    case 'X':
        return PauliAxis::X;
    case 'Y':
        return PauliAxis::Y;
    case 'Z':
        return PauliAxis::Z;
    default:
        fail(ErrorCode::Parse, context + ": unknown Pauli axis '" + std::string(1, c) + "'");
    }
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

// Restarted Lanczos with full reorthogonalization. Only the lowest pair is
// needed, so a modest Krylov dimension and Ritz-vector restarts suffice.
GroundState lanczos_ground_state(const PauliSum &h) {
    const std::size_t dim = std::size_t{1} << h.num_qubits();
    const std::size_t krylov = std::min<std::size_t>(dim, 80);
    const double tolerance = 1e-10 * std::max(1.0, h.coefficient_norm());

    std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
    auto unit = [&gen] { return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0; };
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = Complex(unit(), unit());
    }
    v.normalize();

    Eigen::VectorXcd hv(v.size());
    GroundState best;
    for (int restart = 0; restart < 500; ++restart) {
        Eigen::MatrixXcd basis(v.size(), static_cast<Eigen::Index>(krylov));
        std::vector<double> alpha;
        std::vector<double> beta;
        basis.col(0) = v;
        Eigen::VectorXcd w(v.size());
        for (std::size_t j = 0; j < krylov; ++j) {
            const auto col = static_cast<Eigen::Index>(j);
            Eigen::VectorXcd qj = basis.col(col);
            apply_pauli_sum(h, {qj.data(), dim}, {w.data(), dim});
            alpha.push_back(qj.dot(w).real());
            for (int pass = 0; pass < 2; ++pass) {
                for (Eigen::Index i = 0; i <= col; ++i) {
                    w -= basis.col(i).dot(w) * basis.col(i);
                }
            }
            const double b = w.norm();
            if (j + 1 == krylov || b < 1e-12) {
                break;
            }
            beta.push_back(b);
            basis.col(col + 1) = w / b;
        }
        const auto k = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < k) {
                tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
        const Eigen::VectorXd y = small.eigenvectors().col(0);
        v = basis.leftCols(k) * y.cast<Complex>();
        v.normalize();
        apply_pauli_sum(h, {v.data(), dim}, {hv.data(), dim});
        const double energy = v.dot(hv).real();
        best.energy = energy;
        best.vector = v;
        if ((hv - energy * v).norm() < tolerance) {
            break;
        }
    }
    return best;
}

} // namespace

char axis_char(PauliAxis axis) noexcept {
    switch (axis) {
    case PauliAxis::X:
        return 'X';
    case PauliAxis::Y:
        return 'Y';
    case PauliAxis::Z:
        return 'Z';
    }
    return '?';
}

std::size_t PauliTerm::max_qubit() const {
    std::size_t m = 0;
    for (const auto &f : factors) {
        m = std::max(m, f.qubit);
    }
    return m;
}

std::string PauliTerm::label() const {
    if (factors.empty()) {
        return "I";
    }
    std::string out;
    for (const auto &f : factors) {
        if (!out.empty()) {
            out += ' ';
        }
        out += axis_char(f.axis);
        out += std::to_string(f.qubit);
    }
    return out;
}

PauliTerm pauli_term(double coefficient, std::string_view label) {
    PauliTerm term{coefficient, {}};
    for (auto token : split_ws(label)) {
        if (token == "I") {
            continue;
        }
        require(token.size() >= 2, ErrorCode::Parse, "bad Pauli factor '" + std::string(token) + "'");
        const auto axis = axis_from_char(token[0], "Pauli label");
        std::size_t qubit = 0;
        const auto digits = token.substr(1);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), qubit);
        require(ec == std::errc{} && ptr == digits.data() + digits.size(), ErrorCode::Parse,
                "bad qubit index in '" + std::string(token) + "'");
        term.factors.push_back({qubit, axis});
    }
    std::sort(term.factors.begin(), term.factors.end());
    for (std::size_t i = 1; i < term.factors.size(); ++i) {
        require(term.factors[i].qubit != term.factors[i - 1].qubit, ErrorCode::InvalidArgument,
                "duplicate qubit in Pauli label '" + std::string(label) + "'");
    }
    return term;
}

Complex PauliMask::phase(std::uint64_t index) const noexcept {
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex base = kIPow[num_y & 3U];
    return (std::popcount(index & z) & 1) != 0 ? -base : base;
}

PauliMask to_mask(const PauliTerm &term) {
    PauliMask mask;
    for (const auto &f : term.factors) {
        require(f.qubit < kMaxMaskQubits, ErrorCode::OutOfRange, "qubit index too large for a mask");
        const std::uint64_t bit = std::uint64_t{1} << f.qubit;
        switch (f.axis) {
        case PauliAxis::X:
            mask.x |= bit;
            break;
        case PauliAxis::Y:
            mask.x |= bit;
            mask.z |= bit;
            ++mask.num_y;
            break;
        case PauliAxis::Z:
            mask.z |= bit;
            break;
        }
    }
    return mask;
}

bool commutes(const PauliTerm &a, const PauliTerm &b) {
    const auto ma = to_mask(a);
    const auto mb = to_mask(b);
    return (std::popcount((ma.x & mb.z) ^ (ma.z & mb.x)) & 1) == 0;
}

PauliSum::PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) { check_num_qubits(num_qubits); }

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {}

PauliSum PauliSum::identity(std::size_t num_qubits, double coefficient) {
    return canonicalize({PauliTerm{coefficient, {}}}, num_qubits);
}

double PauliSum::coefficient_norm() const noexcept {
    double s = 0.0;
    for (const auto &t : terms_) {
        s += std::abs(t.coefficient);
    }
    return s;
}

bool PauliSum::is_commuting() const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        for (std::size_t j = i + 1; j < terms_.size(); ++j) {
            if (!commutes(terms_[i], terms_[j])) {
                return false;
            }
        }
    }
    return true;
}

PauliSum PauliSum::scaled(double factor) const {
    std::vector<PauliTerm> terms = terms_;
    for (auto &t : terms) {
        t.coefficient *= factor;
    }
    return canonicalize(std::move(terms), num_qubits_);
}

PauliSum operator+(const PauliSum &a, const PauliSum &b) {
    require(a.num_qubits() == b.num_qubits(), ErrorCode::ShapeMismatch,
            "cannot add Pauli sums on different qubit counts");
    std::vector<PauliTerm> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return canonicalize(std::move(terms), a.num_qubits());
}

PauliSum canonicalize(std::vector<PauliTerm> terms, std::size_t num_qubits) {
    check_num_qubits(num_qubits);
    std::map<std::vector<PauliFactor>, double> merged;
    for (auto &term : terms) {
        require(std::isfinite(term.coefficient), ErrorCode::InvalidArgument,
                "non-finite coefficient on " + term.label());
        std::sort(term.factors.begin(), term.factors.end());
        for (std::size_t i = 0; i < term.factors.size(); ++i) {
            require(term.factors[i].qubit < num_qubits, ErrorCode::OutOfRange,
                    "qubit " + std::to_string(term.factors[i].qubit) + " out of range for " +
                        std::to_string(num_qubits) + " qubits");
            require(i == 0 || term.factors[i].qubit != term.factors[i - 1].qubit,
                    ErrorCode::InvalidArgument, "duplicate qubit in term " + term.label());
        }
        merged[term.factors] += term.coefficient;
    }
    std::vector<PauliTerm> out;
    out.reserve(merged.size());
    for (auto &[factors, coefficient] : merged) {
        if (std::abs(coefficient) >= kCoefficientCutoff) {
            out.push_back(PauliTerm{coefficient, factors});
        }
    }
    return PauliSum(num_qubits, std::move(out));
}

void apply_pauli_sum(const PauliSum &h, std::span<const Complex> in, std::span<Complex> out) {
    const std::size_t dim = std::size_t{1} << h.num_qubits();
    require(in.size() == dim && out.size() == dim, ErrorCode::ShapeMismatch,
            "amplitude buffers do not match the Hamiltonian size");
    std::fill(out.begin(), out.end(), Complex{});
    for (const auto &term : h.terms()) {
        const auto mask = to_mask(term);
        for (std::uint64_t i = 0; i < dim; ++i) {
            out[i ^ mask.x] += term.coefficient * mask.phase(i) * in[i];
        }
    }
}

Eigen::MatrixXcd to_dense(const PauliSum &h) {
    check_dense_size(h.num_qubits());
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.num_qubits());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &term : h.terms()) {
        const auto mask = to_mask(term);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto col = static_cast<std::uint64_t>(i);
            m(static_cast<Eigen::Index>(col ^ mask.x), i) += term.coefficient * mask.phase(col);
        }
    }
    return m;
}

GroundState ground_state(const PauliSum &h) {
    check_dense_size(h.num_qubits());
    if (h.num_qubits() > kMaxDirectDiagonalizationQubits) {
        return lanczos_ground_state(h);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(h));
    require(solver.info() == Eigen::Success, ErrorCode::InternalConsistency,
            "dense eigensolver did not converge");
    return GroundState{solver.eigenvalues()[0], solver.eigenvectors().col(0)};
}

double ground_energy(const PauliSum &h) { return ground_state(h).energy; }

Eigen::MatrixXcd ground_space(const PauliSum &h, double tolerance) {
    check_dense_size(h.num_qubits());
    if (h.num_qubits() > kMaxDirectDiagonalizationQubits) {
        return lanczos_ground_state(h).vector;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(h));
    require(solver.info() == Eigen::Success, ErrorCode::InternalConsistency,
            "dense eigensolver did not converge");
    const auto &values = solver.eigenvalues();
    Eigen::Index count = 1;
    while (count < values.size() && values[count] - values[0] <= tolerance) {
        ++count;
    }
    return solver.eigenvectors().leftCols(count);
}

std::string format_double(double value, int significant_digits) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, significant_digits);
    require(ec == std::errc{}, ErrorCode::InternalConsistency, "number formatting failed");
    return {buf, ptr};
}

std::optional<double> parse_double(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        return std::nullopt;
    }
    return value;
}

std::string pauli_word(const PauliTerm &term, std::size_t num_qubits) {
    std::string word(num_qubits, 'I');
    for (const auto &f : term.factors) {
        require(f.qubit < num_qubits, ErrorCode::OutOfRange, "term does not fit the word length");
        word[f.qubit] = axis_char(f.axis);
    }
    return word;
}

HamiltonianText parse_hamiltonian(std::string_view text) {
    std::optional<std::size_t> num_qubits;
    std::optional<double> reference;
    std::vector<PauliTerm> terms;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        const std::string where = "line " + std::to_string(line_no);
        if (line.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) {
                continue;
            }
            const auto key = trim(body.substr(0, colon));
            const auto value = trim(body.substr(colon + 1));
            if (key == "qubits") {
                std::size_t n = 0;
                const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
                require(ec == std::errc{} && ptr == value.data() + value.size() && n >= 1,
                        ErrorCode::Parse, where + ": invalid qubit count '" + std::string(value) + "'");
                require(!num_qubits, ErrorCode::Parse, where + ": duplicate qubits header");
                num_qubits = n;
            } else if (key == "reference_energy") {
                const auto e = parse_double(value);
                require(e.has_value(), ErrorCode::Parse,
                        where + ": invalid reference energy '" + std::string(value) + "'");
                reference = e;
            }
            continue;
        }
        require(num_qubits.has_value(), ErrorCode::Parse,
                where + ": term before the '# qubits: <n>' header");
        const auto tokens = split_ws(line);
        require(tokens.size() == 2, ErrorCode::Parse,
                where + ": expected '<coefficient> <pauli-word>', got '" + std::string(line) + "'");
        const auto coeff_text = tokens[0];
        require(coeff_text.find_first_of("ij()") == std::string_view::npos, ErrorCode::Parse,
                where + ": complex coefficients are not supported");
        const auto coefficient = parse_double(coeff_text);
        require(coefficient.has_value() && std::isfinite(*coefficient), ErrorCode::Parse,
                where + ": invalid coefficient '" + std::string(coeff_text) + "'");
        const auto word = tokens[1];
        require(word.size() == *num_qubits, ErrorCode::Parse,
                where + ": Pauli word '" + std::string(word) + "' has length " +
                    std::to_string(word.size()) + ", expected " + std::to_string(*num_qubits));
        PauliTerm term{*coefficient, {}};
        for (std::size_t k = 0; k < word.size(); ++k) {
            if (word[k] != 'I') {
                term.factors.push_back({k, axis_from_char(word[k], where)});
            }
        }
        terms.push_back(std::move(term));
    }
    require(num_qubits.has_value(), ErrorCode::Parse, "missing '# qubits: <n>' header");
    return HamiltonianText{canonicalize(std::move(terms), *num_qubits), reference};
}

std::string format_hamiltonian(const PauliSum &h, std::optional<double> reference_energy) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << "# qubits: " << h.num_qubits() << '\n';
    if (reference_energy) {
        out << "# reference_energy: " << format_double(*reference_energy) << '\n';
    }
    for (const auto &term : h.terms()) {
        out << format_double(term.coefficient) << ' ' << pauli_word(term, h.num_qubits()) << '\n';
    }
    return out.str();
}

} // namespace qtransfer
