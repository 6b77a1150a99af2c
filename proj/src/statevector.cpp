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
#include "qtransfer/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qtransfer/error.hpp"

namespace qtransfer {

namespace {

void check_state_size(std::size_t n) {
    require(n >= 1 && n <= kMaxStateQubits, ErrorCode::InvalidSize,
            "state vectors support 1.." + std::to_string(kMaxStateQubits) + " qubits, got " +
                std::to_string(n));
}

void check_same_size(const StateVector &a, const StateVector &b) {
    require(a.num_qubits() == b.num_qubits(), ErrorCode::ShapeMismatch,
            "qubit counts differ: " + std::to_string(a.num_qubits()) + " vs " +
                std::to_string(b.num_qubits()));
}

} // namespace

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::zero(std::size_t num_qubits) { return basis(num_qubits, 0); }

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    check_state_size(num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    require(index < dim, ErrorCode::OutOfRange, "basis index out of range");
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    require(dim >= 2 && (dim & (dim - 1)) == 0, ErrorCode::InvalidSize,
            "amplitude count must be a power of two, got " + std::to_string(dim));
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    check_state_size(n);
    StateVector s(n, std::move(amplitudes));
    require(std::abs(s.norm_squared() - 1.0) < 1e-10, ErrorCode::InvalidArgument,
            "amplitudes are not normalized");
    return s;
}

double StateVector::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto &a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

void StateVector::check_qubit(std::size_t qubit) const {
    require(qubit < num_qubits_, ErrorCode::OutOfRange,
            "qubit " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits_) +
                " qubits");
}

void StateVector::apply_mask_exp(const PauliMask &mask, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const std::size_t dim = amplitudes_.size();
    if (mask.x == 0) {
        // Diagonal string: eigenvalue +-1 per basis state.
        const Complex plus(c, -s);
        const Complex minus(c, s);
        for (std::size_t i = 0; i < dim; ++i) {
            amplitudes_[i] *= (std::popcount(i & mask.z) & 1) != 0 ? minus : plus;
        }
        return;
    }
    const Complex minus_i_s(0.0, -s);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t j = i ^ mask.x;
        if (j < i) {
            continue;
        }
        const Complex a = amplitudes_[i];
        const Complex b = amplitudes_[j];
        amplitudes_[i] = c * a + minus_i_s * mask.phase(j) * b;
        amplitudes_[j] = c * b + minus_i_s * mask.phase(i) * a;
    }
}

void StateVector::apply_rotation(RotationAxis axis, std::size_t qubit, double angle) {
    check_qubit(qubit);
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    PauliMask mask;
    if (axis == RotationAxis::X) {
        mask.x = bit;
    } else {
        mask.z = bit;
    }
    apply_mask_exp(mask, 0.5 * angle);
}

void StateVector::apply_cz(std::size_t control, std::size_t target) {
    check_qubit(control);
    check_qubit(target);
    require(control != target, ErrorCode::InvalidPair, "CZ needs two distinct qubits");
    const std::size_t both = (std::size_t{1} << control) | (std::size_t{1} << target);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & both) == both) {
            amplitudes_[i] = -amplitudes_[i];
        }
    }
}

void StateVector::apply_pauli_exp(const PauliTerm &term, double angle) {
    if (!term.factors.empty()) {
        check_qubit(term.max_qubit());
    }
    apply_mask_exp(to_mask(term), angle * term.coefficient);
}

void StateVector::apply_pauli(const PauliTerm &term) {
    if (!term.factors.empty()) {
        check_qubit(term.max_qubit());
    }
    const auto mask = to_mask(term);
    std::vector<Complex> out(amplitudes_.size());
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        out[i ^ mask.x] = mask.phase(i) * amplitudes_[i];
    }
    amplitudes_ = std::move(out);
}

void StateVector::apply_hamiltonian(const PauliSum &h) {
    require(h.num_qubits() == num_qubits_, ErrorCode::ShapeMismatch,
            "Hamiltonian and state qubit counts differ");
    std::vector<Complex> out(amplitudes_.size());
    apply_pauli_sum(h, amplitudes_, out);
    amplitudes_ = std::move(out);
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    check_same_size(a, b);
    Complex s{};
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double expectation(const StateVector &s, const PauliSum &h) {
    require(h.num_qubits() == s.num_qubits(), ErrorCode::ShapeMismatch,
            "Hamiltonian has " + std::to_string(h.num_qubits()) + " qubits, state has " +
                std::to_string(s.num_qubits()));
    const auto amps = s.amplitudes();
    Complex total{};
    for (const auto &term : h.terms()) {
        const auto mask = to_mask(term);
        Complex acc{};
        for (std::size_t i = 0; i < amps.size(); ++i) {
            acc += std::conj(amps[i ^ mask.x]) * mask.phase(i) * amps[i];
        }
        total += term.coefficient * acc;
    }
    require(std::abs(total.imag()) < 1e-10, ErrorCode::InternalConsistency,
            "expectation value has imaginary residue " + std::to_string(total.imag()));
    return total.real();
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::min(1.0, std::norm(inner_product(a, b)));
}

StateVector tensor_product(const StateVector &low, const StateVector &high) {
    const std::size_t n = low.num_qubits() + high.num_qubits();
    check_state_size(n);
    std::vector<Complex> amps(std::size_t{1} << n);
    for (std::size_t h = 0; h < high.dimension(); ++h) {
        for (std::size_t l = 0; l < low.dimension(); ++l) {
            amps[(h << low.num_qubits()) | l] = high[h] * low[l];
        }
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector from_eigen(const Eigen::VectorXcd &v) {
    return StateVector::from_amplitudes(std::vector<Complex>(v.data(), v.data() + v.size()));
}

} // namespace qtransfer
