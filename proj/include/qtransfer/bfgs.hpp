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
 * BFGS with an inverse-Hessian update and a strong-Wolfe line search
 * (bracketing + zoom with safeguarded cubic interpolation).
 */
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qtransfer/ansatz.hpp"
#include "qtransfer/pauli.hpp"

namespace qtransfer {

struct OptimizerConfig {
    std::size_t iter_cap = 1000;
    double grad_tol = 1e-6;  // max-norm
    double step_tol = 1e-10; // max-norm of the accepted step
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    double fd_step = 1e-5; // used only by validation paths

    static OptimizerConfig from_json(const nlohmann::json &j);
    [[nodiscard]] nlohmann::json to_json() const;
};

enum class StopReason { Gradient, Step, IterationCap, LineSearch, NonFinite };

std::string to_string(StopReason reason);

struct OptimizationResult {
    std::vector<double> params;
    double energy = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool failed = false; // non-finite cost or gradient
    StopReason stop_reason = StopReason::IterationCap;
    std::vector<double> energy_trace;    // one entry per iterate, starting point included
    std::vector<double> grad_norm_trace; // G = mean squared gradient component, same indexing
};

/// Writes the gradient into its second argument and returns the value.
using Objective = std::function<double(std::span<const double>, std::span<double>)>;

OptimizationResult bfgs_minimize(const Objective &f, std::span<const double> initial,
                                 const OptimizerConfig &config = {});

OptimizationResult bfgs_minimize(const CircuitSpec &circuit, const PauliSum &h,
                                 std::span<const double> initial,
                                 const OptimizerConfig &config = {});

} // namespace qtransfer
