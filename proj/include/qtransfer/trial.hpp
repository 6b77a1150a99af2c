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
 * The trial protocol: repeat (initialize, train with BFGS) until the target
 * number of successful runs is reached. TTN is the number of trials spent.
 *
 * Trial i draws everything from an Rng seeded with derive_seed(master, i),
 * so a trial can be replayed in isolation. Workers run trials in batches and
 * the results are cut at the target-th success in index order, which makes
 * the record set independent of the worker count.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qtransfer/ansatz.hpp"
#include "qtransfer/bfgs.hpp"
#include "qtransfer/init.hpp"
#include "qtransfer/tasks.hpp"

namespace qtransfer {

struct TrialRecord {
    std::size_t trial_index = 0;
    std::string init;
    std::uint64_t seed = 0;
    std::vector<double> initial_params;
    std::vector<double> final_params;
    double initial_energy = 0.0;
    double final_energy = 0.0;
    double exact_energy = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool success = false;
    bool failed = false;
    std::string stop_reason;
    std::vector<double> energy_trace;
    std::vector<double> grad_norm_trace;
    double wall_time = 0.0; // seconds; the only field that varies between reruns

    /// Equality ignoring wall_time.
    [[nodiscard]] bool same_outcome(const TrialRecord &other) const;
};

nlohmann::json to_json(const TrialRecord &r);
TrialRecord trial_from_json(const nlohmann::json &j);

struct RunOptions {
    std::size_t target_successes = 100;
    std::size_t max_trials = 0; // 0 means 50 * target_successes
    std::size_t workers = 1;
    std::uint64_t master_seed = 0;
    OptimizerConfig optimizer;
};

/// A circuit, its Hamiltonian and a seeded initializer.
struct TrialProblem {
    CircuitSpec circuit;
    PauliSum hamiltonian;
    double exact_energy = 0.0;
    double success_threshold = kChemicalAccuracy;
    std::string init_label;
    std::function<std::vector<double>(Rng &)> initializer;
};

struct TrialRun {
    std::vector<TrialRecord> records;
    std::size_t successes = 0;
    bool target_reached = false;
};

TrialRun run_trials(const TrialProblem &problem, const RunOptions &options);

/// Cold-start training of the task's base problem.
TrialRun run_base(const TaskSpec &task, const RunOptions &options);

/// Pool of the successful base runs.
ParamPool make_pool(const TaskSpec &task, const TrialRun &run);

/// Target problem with the given init string ("BLE" for the Task F baseline).
/// The pool is required whenever the string contains a T.
TrialProblem target_problem(const TaskSpec &task, const std::string &init, const ParamPool *pool);

TrialRun run_task(const TaskSpec &task, const std::string &init, const ParamPool *pool,
                  const RunOptions &options);

} // namespace qtransfer
