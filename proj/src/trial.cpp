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
#include "qtransfer/trial.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "qtransfer/error.hpp"
#include "qtransfer/gradient.hpp"

namespace qtransfer {

namespace {

TrialRecord run_one(const TrialProblem &problem, std::size_t index, std::uint64_t master,
                    const OptimizerConfig &config) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialRecord r;
    r.trial_index = index;
    r.init = problem.init_label;
    r.seed = derive_seed(master, index);
    r.exact_energy = problem.exact_energy;

    Rng rng(r.seed);
    r.initial_params = problem.initializer(rng);
    auto opt = bfgs_minimize(problem.circuit, problem.hamiltonian, r.initial_params, config);

    r.final_params = std::move(opt.params);
    r.initial_energy = opt.energy_trace.empty() ? opt.energy : opt.energy_trace.front();
    r.final_energy = opt.energy;
    r.iterations = opt.iterations;
    r.converged = opt.converged;
    r.failed = opt.failed;
    r.success = !opt.failed && std::abs(opt.energy - problem.exact_energy) < problem.success_threshold;
    r.stop_reason = to_string(opt.stop_reason);
    r.energy_trace = std::move(opt.energy_trace);
    r.grad_norm_trace = std::move(opt.grad_norm_trace);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<double> as_doubles(const nlohmann::json &j) { return j.get<std::vector<double>>(); }

std::string problem_label(const TaskSpec &task) { return std::string(1, task.id); }

} // namespace

bool TrialRecord::same_outcome(const TrialRecord &o) const {
    return trial_index == o.trial_index && init == o.init && seed == o.seed &&
           initial_params == o.initial_params && final_params == o.final_params &&
           initial_energy == o.initial_energy && final_energy == o.final_energy &&
           exact_energy == o.exact_energy && iterations == o.iterations &&
           converged == o.converged && success == o.success && failed == o.failed &&
           stop_reason == o.stop_reason && energy_trace == o.energy_trace &&
           grad_norm_trace == o.grad_norm_trace;
}

nlohmann::json to_json(const TrialRecord &r) {
    return {{"trial_index", r.trial_index},
            {"init", r.init},
            {"seed", r.seed},
            {"initial_params", r.initial_params},
            {"final_params", r.final_params},
            {"initial_energy", r.initial_energy},
            {"final_energy", r.final_energy},
            {"exact_energy", r.exact_energy},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"success", r.success},
            {"failed", r.failed},
            {"stop_reason", r.stop_reason},
            {"energy_trace", r.energy_trace},
            {"grad_norm_trace", r.grad_norm_trace},
            {"wall_time", r.wall_time}};
}

TrialRecord trial_from_json(const nlohmann::json &j) {
    TrialRecord r;
    try {
        r.trial_index = j.at("trial_index").get<std::size_t>();
        r.init = j.at("init").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.initial_params = as_doubles(j.at("initial_params"));
        r.final_params = as_doubles(j.at("final_params"));
        r.initial_energy = j.at("initial_energy").get<double>();
        r.final_energy = j.at("final_energy").get<double>();
        r.exact_energy = j.at("exact_energy").get<double>();
        r.iterations = j.at("iterations").get<std::size_t>();
        r.converged = j.at("converged").get<bool>();
        r.success = j.at("success").get<bool>();
        r.failed = j.at("failed").get<bool>();
        r.stop_reason = j.at("stop_reason").get<std::string>();
        r.energy_trace = as_doubles(j.at("energy_trace"));
        r.grad_norm_trace = as_doubles(j.at("grad_norm_trace"));
        r.wall_time = j.value("wall_time", 0.0);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("trial record: ") + e.what());
    }
    return r;
}

TrialRun run_trials(const TrialProblem &problem, const RunOptions &options) {
    require(options.target_successes >= 1, ErrorCode::InvalidArgument,
            "target_successes must be at least 1");
    require(static_cast<bool>(problem.initializer), ErrorCode::InvalidArgument,
            "trial problem has no initializer");
    const std::size_t workers = std::max<std::size_t>(1, options.workers);
    const std::size_t cap =
        options.max_trials > 0 ? options.max_trials : 50 * options.target_successes;

    TrialRun run;
    std::size_t next = 0;
    while (run.successes < options.target_successes && next < cap) {
        const std::size_t batch = std::min(workers, cap - next);
        std::vector<TrialRecord> results(batch);
        if (batch == 1) {
            results[0] = run_one(problem, next, options.master_seed, options.optimizer);
        } else {
            std::atomic<std::size_t> cursor{0};
            std::vector<std::exception_ptr> errors(batch);
            std::vector<std::thread> pool;
            pool.reserve(batch);
            for (std::size_t w = 0; w < batch; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t k = cursor++; k < batch; k = cursor++) {
                        try {
                            results[k] =
                                run_one(problem, next + k, options.master_seed, options.optimizer);
                        } catch (...) {
                            errors[k] = std::current_exception();
                        }
                    }
                });
            }
            for (auto &t : pool) {
                t.join();
            }
            for (auto &e : errors) {
                if (e) {
                    std::rethrow_exception(e);
                }
            }
        }
        for (auto &r : results) {
            if (run.successes >= options.target_successes) {
                break; // trials past the target are discarded for worker-count independence
            }
            run.successes += r.success ? 1 : 0;
            run.records.push_back(std::move(r));
        }
        next += batch;
    }
    run.target_reached = run.successes >= options.target_successes;
    return run;
}

TrialRun run_base(const TaskSpec &task, const RunOptions &options) {
    require(task.available, ErrorCode::Config,
            "task " + problem_label(task) + " is unavailable: " + task.unavailable_reason);
    const auto circuit = build_circuit(task.base);
    const std::size_t L = circuit.num_params();
    TrialProblem problem{circuit,
                         task.base.hamiltonian,
                         ground_energy(task.base.hamiltonian),
                         task.success_threshold,
                         "base",
                         [L](Rng &rng) { return random_params(L, rng); }};
    return run_trials(problem, options);
}

ParamPool make_pool(const TaskSpec &task, const TrialRun &run) {
    const auto circuit = build_circuit(task.base);
    ParamPool pool;
    pool.task = problem_label(task);
    pool.ansatz = to_string(circuit.kind());
    if (circuit.kind() == AnsatzKind::HEA) {
        pool.entangler = to_string(circuit.entangler());
    }
    pool.num_qubits = circuit.num_qubits();
    pool.layers = circuit.layers();
    pool.num_params = circuit.num_params();
    for (const auto &r : run.records) {
        if (r.success) {
            pool.entries.push_back({r.seed, r.final_energy, r.final_params});
        }
    }
    return pool;
}

TrialProblem target_problem(const TaskSpec &task, const std::string &init, const ParamPool *pool) {
    require(task.available, ErrorCode::Config,
            "task " + problem_label(task) + " is unavailable: " + task.unavailable_reason);
    require(is_allowed_init(task, init), ErrorCode::InvalidArgument,
            "init '" + init + "' is not valid for task " + problem_label(task));

    auto target = target_circuit(task);
    const double exact = ground_energy(task.target.hamiltonian);
    TrialProblem problem{target, task.target.hamiltonian, exact, task.success_threshold, init, {}};

    if (init == "BLE") {
        problem.initializer = [target](Rng &rng) { return ble_init(target, rng); };
        return problem;
    }
    const auto s = TransferString::parse(init);
    const std::size_t L = target.num_params();
    if (!s.any_transferred()) {
        problem.initializer = [L](Rng &rng) { return random_params(L, rng); };
        return problem;
    }

    require(pool != nullptr, ErrorCode::Config,
            "init '" + init + "' transfers parameters but no base pool was given");
    require(!pool->entries.empty(), ErrorCode::EmptyPool, "base pool has no entries");
    const auto base = build_circuit(task.base);
    check_pool_shape(*pool, base);
    auto entries = std::make_shared<const ParamPool>(*pool);
    if (task.transfer == TransferMethod::Network) {
        const std::size_t m = task.target.num_qubits();
        problem.initializer = [base, entries, m, s](Rng &rng) {
            const auto &e = pool_draw(*entries, rng);
            return network_transfer(base, e.params, m, s, rng).params;
        };
    } else {
        problem.initializer = [base, entries, target, s](Rng &rng) {
            const auto &e = pool_draw(*entries, rng);
            return structure_transfer(base, e.params, target, s, rng);
        };
    }
    return problem;
}

TrialRun run_task(const TaskSpec &task, const std::string &init, const ParamPool *pool,
                  const RunOptions &options) {
    return run_trials(target_problem(task, init, pool), options);
}

} // namespace qtransfer
