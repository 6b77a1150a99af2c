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
 * Independent dense references for the tests. Everything here builds full
 * 2^n x 2^n matrices from explicit Kronecker products of 2x2 blocks and never
 * calls the library's kernels.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtransfer/ansatz.hpp"
#include "qtransfer/pauli.hpp"

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// 2x2 Pauli matrix for 'I', 'X', 'Y' or 'Z'.
Matrix pauli2(char axis);

/// Kronecker product a (x) b.
Matrix kron(const Matrix &a, const Matrix &b);

/// Dense operator for a Pauli word where character k acts on qubit k (bit k).
Matrix word_matrix(const std::string &word);

/// Dense sum of c * word, term by term.
Matrix dense_hamiltonian(const qtransfer::PauliSum &h);

/// exp(-i angle G) for a Pauli-string generator G with G^2 = c^2 I.
Matrix gate_matrix(const qtransfer::GateSlot &gate, double theta, std::size_t n);

/// U(params)|0...0> as a product of dense gate matrices.
Vector circuit_state(const qtransfer::CircuitSpec &circuit, std::span<const double> params);

/// Smallest eigenvalue by shifted power iteration (no LAPACK).
double power_iteration_ground(const Matrix &h, std::size_t iterations = 20000);

/// <v|H|v> for a dense matrix.
double dense_expectation(const Vector &v, const Matrix &h);

/// Sum in index order, the naive two-pass reference for means and variances.
double reference_mean(std::span<const double> x);
double reference_sample_variance(std::span<const double> x);

} // namespace oracle
