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
 * Cost C(theta) = <0|U(theta)^dag H U(theta)|0> and its gradient.
 *
 * gradient() is a reverse sweep over the gate list (adjoint-state method):
 * one forward pass, then each gate is undone on both the state and the
 * co-state H|psi>, giving every derivative exactly in O(L 2^n). The
 * parameter-shift and finite-difference versions exist as cross-checks.
 */
#pragma once

#include <span>
#include <vector>

#include "qtransfer/ansatz.hpp"
#include "qtransfer/pauli.hpp"

namespace qtransfer {

double cost(const CircuitSpec &circuit, std::span<const double> params, const PauliSum &h);

std::vector<double> gradient(const CircuitSpec &circuit, std::span<const double> params,
                             const PauliSum &h);

/// Cost and adjoint gradient from a single forward pass; returns the cost.
double cost_and_gradient(const CircuitSpec &circuit, std::span<const double> params,
                         const PauliSum &h, std::span<double> grad);

/// [C(t + pi/2) - C(t - pi/2)] / 2 per parameter. Every parameter must drive
/// exactly one Rx/Rz gate, otherwise UnsupportedAnsatz.
std::vector<double> parameter_shift_gradient(const CircuitSpec &circuit,
                                             std::span<const double> params, const PauliSum &h);

/// Central differences [C(t + step) - C(t - step)] / (2 step).
std::vector<double> finite_difference_gradient(const CircuitSpec &circuit,
                                               std::span<const double> params, const PauliSum &h,
                                               double step = 1e-5);

} // namespace qtransfer
