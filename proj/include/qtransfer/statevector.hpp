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
 * Exact 2^n-amplitude simulator. Qubit k is bit k of the basis index.
 *
 * Rotations follow R_P(angle) = exp(-i angle P / 2); Pauli exponentials
 * apply exp(-i angle c P) for a term c P.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qtransfer/pauli.hpp"

namespace qtransfer {

inline constexpr std::size_t kMaxStateQubits = 24;

enum class RotationAxis { X, Z };

class StateVector {
  public:
    /// |0...0> on n qubits.
    static StateVector zero(std::size_t num_qubits);

    /// Computational basis state |index>.
    static StateVector basis(std::size_t num_qubits, std::size_t index);

    /// Takes ownership of 2^n amplitudes; they must have unit norm within 1e-10.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }
    [[nodiscard]] double norm_squared() const noexcept;

    void apply_rotation(RotationAxis axis, std::size_t qubit, double angle);
    void apply_cz(std::size_t control, std::size_t target);
    /// exp(-i angle c P) for term = c P.
    void apply_pauli_exp(const PauliTerm &term, double angle);
    /// Multiplies by the bare Pauli string P (coefficient ignored).
    void apply_pauli(const PauliTerm &term);
    /// this <- H this.
    void apply_hamiltonian(const PauliSum &h);

    bool operator==(const StateVector &) const = default;

  private:
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    void check_qubit(std::size_t qubit) const;
    void apply_mask_exp(const PauliMask &mask, double phi);

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// <a|b>
Complex inner_product(const StateVector &a, const StateVector &b);

/// <s|H|s>; fails if the imaginary residue reaches 1e-10.
double expectation(const StateVector &s, const PauliSum &h);

/// |<a|b>|^2
double fidelity(const StateVector &a, const StateVector &b);

/// State on low.num_qubits() + high.num_qubits() qubits; `low` occupies qubits 0..n_low-1.
StateVector tensor_product(const StateVector &low, const StateVector &high);

StateVector from_eigen(const Eigen::VectorXcd &v);

} // namespace qtransfer
