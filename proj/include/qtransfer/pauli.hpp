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
/**
 * @file
 * Pauli strings, real-weighted Pauli sums and exact ground-state solving.
 *
 * Basis ordering is little-endian throughout the library: qubit k is bit k
 * of the computational-basis index.
 */
#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qtransfer {

using Complex = std::complex<double>;

/// Terms with |coefficient| below this are dropped, equal strings merged.
inline constexpr double kCoefficientCutoff = 1e-12;

/// Largest register for which dense materialization is allowed.
inline constexpr std::size_t kMaxDenseQubits = 12;

/// Dense diagonalization is used up to this size; Lanczos above it.
inline constexpr std::size_t kMaxDirectDiagonalizationQubits = 10;

enum class PauliAxis : std::uint8_t { X, Y, Z };

char axis_char(PauliAxis axis) noexcept;

struct PauliFactor {
    std::size_t qubit;
    PauliAxis axis;

    auto operator<=>(const PauliFactor &) const = default;
};

struct PauliTerm {
    double coefficient = 0.0;
    std::vector<PauliFactor> factors; // empty == identity

    bool operator==(const PauliTerm &) const = default;

    [[nodiscard]] bool is_identity() const noexcept { return factors.empty(); }
    [[nodiscard]] std::size_t max_qubit() const;
    /// Compact label such as "Z0 X1"; "I" for the identity.
    [[nodiscard]] std::string label() const;
};

/**
 * Builds a term from a label like "X1 Z0" or "I". Factor order in the label
 * is free; the factors are sorted by qubit and duplicates are rejected.
 */
PauliTerm pauli_term(double coefficient, std::string_view label);

/// Bit-mask form used by the state-vector kernels.
struct PauliMask {
    std::uint64_t x = 0; // qubits carrying X or Y
    std::uint64_t z = 0; // qubits carrying Z or Y
    unsigned num_y = 0;

    /// Phase of P|i> = phase(i) |i ^ x>, i.e. i^{num_y} (-1)^{|i & z|}.
    [[nodiscard]] Complex phase(std::uint64_t index) const noexcept;
};

PauliMask to_mask(const PauliTerm &term);

/// Two Pauli strings commute iff they anticommute on an even number of sites.
bool commutes(const PauliTerm &a, const PauliTerm &b);

class PauliSum {
  public:
    /// Zero operator on n qubits.
    explicit PauliSum(std::size_t num_qubits);

    static PauliSum identity(std::size_t num_qubits, double coefficient = 1.0);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept { return terms_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    /// Sum of |c_I|, an upper bound on the spectral norm.
    [[nodiscard]] double coefficient_norm() const noexcept;

    /// True when every pair of terms commutes.
    [[nodiscard]] bool is_commuting() const;

    [[nodiscard]] PauliSum scaled(double factor) const;

    bool operator==(const PauliSum &) const = default;

    friend PauliSum operator+(const PauliSum &a, const PauliSum &b);
    friend PauliSum canonicalize(std::vector<PauliTerm> terms, std::size_t num_qubits);

  private:
    PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);

    std::size_t num_qubits_;
    std::vector<PauliTerm> terms_;
};

/**
 * Sorts factors by qubit, merges identical strings, drops |c| < 1e-12 and
 * orders terms lexicographically by factor sequence.
 */
PauliSum canonicalize(std::vector<PauliTerm> terms, std::size_t num_qubits);

/// out = H in, matrix-free. Both spans have length 2^n.
void apply_pauli_sum(const PauliSum &h, std::span<const Complex> in, std::span<Complex> out);

Eigen::MatrixXcd to_dense(const PauliSum &h);

struct GroundState {
    double energy = 0.0;
    Eigen::VectorXcd vector; // unit norm, arbitrary phase
};

GroundState ground_state(const PauliSum &h);
double ground_energy(const PauliSum &h);

/**
 * Orthonormal basis (as columns) of the eigenspace with eigenvalues within
 * `tolerance` of the minimum. Above the dense-diagonalization size only the
 * single Lanczos vector is returned.
 */
Eigen::MatrixXcd ground_space(const PauliSum &h, double tolerance = 1e-8);

/// Parsed contents of a Hamiltonian text file.
struct HamiltonianText {
    PauliSum hamiltonian{1};
    std::optional<double> reference_energy;
};

/**
 * Reads the line-oriented Hamiltonian format:
 *
 *     # qubits: 4
 *     # reference_energy: -1.137
 *     -0.4804 ZIII
 *
 * Character k of a Pauli word acts on qubit k. Parsing is locale independent.
 */
HamiltonianText parse_hamiltonian(std::string_view text);

/// Inverse of parse_hamiltonian; coefficients are written with 17 significant digits.
std::string format_hamiltonian(const PauliSum &h,
                               std::optional<double> reference_energy = std::nullopt);

/// Pauli word of length n ("IZXI").
std::string pauli_word(const PauliTerm &term, std::size_t num_qubits);

/// Locale-independent shortest-round-trip or fixed-precision formatting.
std::string format_double(double value, int significant_digits = 17);
std::optional<double> parse_double(std::string_view text);

} // namespace qtransfer
