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
 * Diagnostics: gradient-variance and cost-concentration scans over qubit
 * count, the Chebyshev tail bound, fidelities between grouped base states and
 * target ground states, and the TTN / iteration summary of a trial run.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qtransfer/ansatz.hpp"
#include "qtransfer/models.hpp"
#include "qtransfer/pauli.hpp"
#include "qtransfer/statevector.hpp"
#include "qtransfer/trial.hpp"

namespace qtransfer {

/// G = (1/L) sum_l (dC/dtheta_l)^2.
double normalized_grad_norm(std::span<const double> grad);

/// Largest qubit count a scan accepts.
inline constexpr std::size_t kMaxScanQubits = 10;
inline constexpr std::size_t kMinScanSamples = 100;

enum class ScanFamily { HeaTfim, HvaXxz };

std::string to_string(ScanFamily family);
ScanFamily scan_family_from_string(std::string_view name);

/// Sample statistics at one qubit count. Variances use the N-1 divisor.
struct ScanPoint {
    std::size_t num_qubits = 0;
    std::size_t samples = 0;
    std::size_t param_index = 0;
    double mean_grad = 0.0;
    double var_grad = 0.0;
    double mean_cost = 0.0;
    double var_cost = 0.0;
    double cost_scale = 1.0; // costs were divided by this before the statistics
    std::vector<double> grads;
    std::vector<double> costs;

    [[nodiscard]] double grad_stderr() const;
};

struct ScanOptions {
    ScanFamily family = ScanFamily::HeaTfim;
    std::vector<std::size_t> sizes{2, 4, 6, 8, 10};
    std::size_t layers = 4;
    std::size_t samples = 500;
    std::optional<std::size_t> param_index; // default: first parameter of layer P/2
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    bool normalize_cost = true; // divide C by the sum of |c_I| over non-identity terms
    Boundary boundary = Boundary::Periodic;
    Entangler entangler = Entangler::Ring;
};

struct VarianceScan {
    ScanFamily family = ScanFamily::HeaTfim;
    std::size_t layers = 0;
    std::vector<ScanPoint> points;
    std::optional<double> grad_decay; // p in Var[dC] ~ p^-n, from OLS on ln Var
    std::optional<double> cost_decay; // b in Var[C] ~ b^-n
};

/// Draws `samples` uniform parameter vectors (draw k seeded by derive_seed(seed, k))
/// and records one partial derivative and the cost for each.
ScanPoint scan_circuit(const CircuitSpec &circuit, const PauliSum &h, std::size_t samples,
                       std::size_t param_index, std::uint64_t seed, std::size_t workers = 1,
                       double cost_scale = 1.0);

/// Circuit and Hamiltonian of a scan family at n qubits.
std::pair<CircuitSpec, PauliSum> scan_problem(const ScanOptions &options, std::size_t num_qubits);

VarianceScan variance_scan(const ScanOptions &options);

/// Same sampling as variance_scan; the cost statistics measure concentration of C.
VarianceScan cost_concentration_scan(const ScanOptions &options);

/// exp(-slope) of the least-squares line through (n, ln v); needs >= 4 positive values.
std::optional<double> fit_decay_factor(std::span<const std::size_t> sizes,
                                       std::span<const double> variances);

/// min(1, variance / c^2).
double chebyshev_bound(double variance, double c);

struct Exceedance {
    double frequency = 0.0; // fraction of samples with |x| >= c
    double sigma = 0.0;     // binomial standard error of that fraction
};

Exceedance empirical_exceedance(std::span<const double> samples, double c);

nlohmann::json to_json(const VarianceScan &scan);
/// Columns: n, samples, mean_grad, var_grad, mean_cost, var_cost.
std::string scan_csv(const VarianceScan &scan);

struct FidelityReport {
    double f1 = 0.0;      // target ground space vs grouped base state
    double f2 = 0.0;      // grouped base state vs transferred initial state
    double f_total = 0.0; // target ground space vs transferred initial state
    double group_energy_gap = 0.0; // <group|H_group|group> - E0(H_group), ideally 0
};

/**
 * The grouped state is base_ground (x) base_ground. F1 and F_total project onto
 * the whole ground eigenspace of the target, so degenerate targets are handled.
 */
FidelityReport fidelity_diagnostics(const StateVector &base_ground, const PauliSum &target,
                                    const PauliSum &group, const StateVector &transferred);

/// H (x) I + I (x) H on 2n qubits.
PauliSum grouped_hamiltonian(const PauliSum &base);

struct TaskSummary {
    std::string task;
    std::string init;
    std::size_t ttn = 0;
    std::size_t successes = 0;
    bool empty = true; // no successful run: iteration statistics are undefined
    bool target_reached = false;
    double mean_iterations = 0.0;
    double std_iterations = 0.0;
    std::vector<double> mean_g_trace;        // over successful runs, by iteration
    std::vector<std::size_t> g_trace_counts; // runs still alive at each iteration
    double total_wall_time = 0.0;
};

TaskSummary summarize(std::span<const TrialRecord> records, std::size_t target_successes = 0);

nlohmann::json to_json(const TaskSummary &s);
std::string summary_csv_header();
/// task,string,TTN,mean_iters,std_iters
std::string summary_csv_row(const TaskSummary &s);

double sample_mean(std::span<const double> x);
/// Divisor N - 1; zero for fewer than two values.
double sample_variance(std::span<const double> x);

} // namespace qtransfer
