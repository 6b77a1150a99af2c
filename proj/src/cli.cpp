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
#include "qtransfer/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "qtransfer/analysis.hpp"
#include "qtransfer/ansatz.hpp"
#include "qtransfer/bfgs.hpp"
#include "qtransfer/error.hpp"
#include "qtransfer/init.hpp"
#include "qtransfer/models.hpp"
#include "qtransfer/pauli.hpp"
#include "qtransfer/statevector.hpp"
#include "qtransfer/tasks.hpp"
#include "qtransfer/trial.hpp"

#ifndef QTRANSFER_VERSION
#define QTRANSFER_VERSION "unknown"
#endif

namespace qtransfer {

namespace fs = std::filesystem;

const char *code_version() noexcept { return QTRANSFER_VERSION; }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

fs::path output_directory(const std::string &flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char *env = std::getenv("QTRANSFER_OUT"); env != nullptr && *env != '\0') {
        return env;
    }
    return "results";
}

namespace {

/// Settings shared by the training commands.
struct CommonFlags {
    std::string task = "A";
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::size_t successes = 0; // 0: the task's own target
    std::size_t max_trials = 0;
    std::string config_path;
    std::string out;
};

struct LoadedConfig {
    TaskConfig task;
    OptimizerConfig optimizer;
    std::size_t max_trials = 0;
    nlohmann::json snapshot;
};

nlohmann::json read_json_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, path.string() + ": " + e.what());
    }
}

/// Config file keys: "task" (TaskConfig), "optimizer" (OptimizerConfig), "max_trials".
LoadedConfig load_config(const std::string &path) {
    LoadedConfig c;
    if (!path.empty()) {
        const auto j = read_json_file(path);
        require(j.is_object(), ErrorCode::Config, path + ": config must be a JSON object");
        for (const auto &[key, value] : j.items()) {
            require(key == "task" || key == "optimizer" || key == "max_trials", ErrorCode::Config,
                    path + ": unknown config key '" + key + "'");
        }
        try {
            if (j.contains("task")) {
                c.task = TaskConfig::from_json(j.at("task"));
            }
            if (j.contains("optimizer")) {
                c.optimizer = OptimizerConfig::from_json(j.at("optimizer"));
            }
            c.max_trials = j.value("max_trials", std::size_t{0});
        } catch (const nlohmann::json::exception &e) {
            fail(ErrorCode::Config, path + ": " + e.what());
        }
    }
    c.snapshot = {{"task", c.task.to_json()},
                  {"optimizer", c.optimizer.to_json()},
                  {"max_trials", c.max_trials}};
    return c;
}

char parse_task_id(const std::string &text) {
    require(text.size() == 1 && std::isalpha(static_cast<unsigned char>(text[0])),
            ErrorCode::InvalidArgument, "task must be a single letter A-F, got '" + text + "'");
    return static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
}

std::string join_command_line(const std::vector<std::string> &args) {
    std::string s = "qtransfer";
    for (const auto &a : args) {
        s += ' ';
        s += a;
    }
    return s;
}

nlohmann::json make_manifest(const std::vector<std::string> &args, const nlohmann::json &config,
                             std::uint64_t seed, const std::string &task, const std::string &init,
                             const std::string &boundary, const std::string &started) {
    return {{"command_line", join_command_line(args)},
            {"config", config},
            {"master_seed", seed},
            {"code_version", code_version()},
            {"task", task},
            {"init", init},
            {"boundary", boundary},
            {"timestamps", {{"started", started}, {"finished", utc_timestamp()}}}};
}

std::string boundary_label(const TaskConfig &c) {
    return "chain=" + to_string(c.chain_boundary) + ",grid=" + to_string(c.grid_boundary);
}

void write_text(const fs::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        require(!ec, ErrorCode::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path.string());
    out << text;
    out.flush();
    require(static_cast<bool>(out), ErrorCode::Io, "write failed for " + path.string());
}

std::string trials_jsonl(const nlohmann::json &manifest, const std::vector<TrialRecord> &records) {
    std::string s = nlohmann::json{{"manifest", manifest}}.dump() + "\n";
    for (const auto &r : records) {
        s += to_json(r).dump() + "\n";
    }
    return s;
}

std::string manifest_comment(const nlohmann::json &manifest) {
    return "# manifest: " + manifest.dump() + "\n";
}

std::string g_trace_csv(const nlohmann::json &manifest, const TaskSummary &s) {
    std::ostringstream out;
    out << manifest_comment(manifest) << "iteration,mean_G,runs\n";
    for (std::size_t i = 0; i < s.mean_g_trace.size(); ++i) {
        out << i << ',' << format_double(s.mean_g_trace[i]) << ',' << s.g_trace_counts[i] << '\n';
    }
    return out.str();
}

RunOptions run_options(const CommonFlags &f, const LoadedConfig &c, std::size_t task_target) {
    RunOptions o;
    o.target_successes = f.successes > 0 ? f.successes : task_target;
    o.max_trials = f.max_trials > 0 ? f.max_trials : c.max_trials;
    o.workers = std::max<std::size_t>(1, f.workers);
    o.master_seed = f.seed;
    o.optimizer = c.optimizer;
    return o;
}

void add_common(CLI::App *cmd, CommonFlags &f, bool with_task = true) {
    if (with_task) {
        cmd->add_option("--task", f.task, "Task id A-F")->capture_default_str();
    }
    cmd->add_option("--seed", f.seed, "Master seed")->capture_default_str();
    cmd->add_option("--workers", f.workers, "Parallel trial workers")->capture_default_str();
    cmd->add_option("--successes", f.successes, "Successful runs to collect (default: task target)");
    cmd->add_option("--max-trials", f.max_trials, "Trial cap (default: 50 x successes)");
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--out", f.out, "Output directory (default: $QTRANSFER_OUT or ./results)");
}

std::string run_stem(char id, const std::string &init) {
    return std::string("task") + id + "_" + init;
}

/// Writes trials, summary JSON, CSV row and G trace for one run; returns the summary.
TaskSummary write_run(const fs::path &dir, const std::string &stem, const nlohmann::json &manifest,
                      char id, const TrialRun &run, std::size_t target, std::ostream &out) {
    TaskSummary s = summarize(run.records, target);
    s.task = std::string(1, id);
    write_text(dir / (stem + "_trials.jsonl"), trials_jsonl(manifest, run.records));
    nlohmann::json summary{{"manifest", manifest}, {"summary", to_json(s)}};
    write_text(dir / (stem + "_summary.json"), summary.dump(2) + "\n");
    write_text(dir / (stem + "_summary.csv"), manifest_comment(manifest) + summary_csv_header() +
                                                  "\n" + summary_csv_row(s) + "\n");
    write_text(dir / (stem + "_gtrace.csv"), g_trace_csv(manifest, s));
    out << summary_csv_header() << '\n' << summary_csv_row(s) << '\n';
    if (!run.target_reached) {
        out << "warning: only " << run.successes << " of " << target
            << " successes within the trial cap\n";
    }
    return s;
}

int cmd_base(const std::vector<std::string> &args, const CommonFlags &f, std::ostream &out) {
    const std::string started = utc_timestamp();
    const auto config = load_config(f.config_path);
    const char id = parse_task_id(f.task);
    const TaskSpec task = find_task(id, config.task);
    const RunOptions opts = run_options(f, config, task.target_successes);
    const TrialRun run = run_base(task, opts);

    const auto manifest = make_manifest(args, config.snapshot, f.seed, std::string(1, id), "base",
                                        boundary_label(config.task), started);
    const fs::path dir = output_directory(f.out);
    write_run(dir, run_stem(id, "base"), manifest, id, run, opts.target_successes, out);
    ParamPool pool = make_pool(task, run);
    pool.manifest = manifest;
    const fs::path pool_path = dir / (std::string("task") + id + "_pool.json");
    pool_save(pool, pool_path);
    out << "pool: " << pool.entries.size() << " entries -> " << pool_path.string() << '\n';
    return 0;
}

int cmd_run(const std::vector<std::string> &args, const CommonFlags &f, const std::string &init_flag,
            const std::string &pool_flag, std::ostream &out) {
    const std::string started = utc_timestamp();
    const auto config = load_config(f.config_path);
    const char id = parse_task_id(f.task);
    const TaskSpec task = find_task(id, config.task);
    std::string init = init_flag;
    std::transform(init.begin(), init.end(), init.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    require(is_allowed_init(task, init), ErrorCode::InvalidArgument,
            "init '" + init_flag + "' is not valid for task " + std::string(1, id));

    const fs::path dir = output_directory(f.out);
    std::optional<ParamPool> pool;
    const bool needs_pool = init.find('T') != std::string::npos;
    if (needs_pool) {
        fs::path path = pool_flag;
        if (path.empty()) {
            path = dir / (std::string("task") + id + "_pool.json");
            require(fs::exists(path), ErrorCode::Config,
                    "init '" + init + "' needs a trained pool: pass --pool or run 'qtransfer base --task " +
                        std::string(1, id) + "' first (looked for " + path.string() + ")");
        }
        pool = pool_load(path);
    }
    const RunOptions opts = run_options(f, config, task.target_successes);
    const TrialRun run = run_task(task, init, pool ? &*pool : nullptr, opts);
    const auto manifest = make_manifest(args, config.snapshot, f.seed, std::string(1, id), init,
                                        boundary_label(config.task), started);
    write_run(dir, run_stem(id, init), manifest, id, run, opts.target_successes, out);
    return 0;
}

std::vector<std::size_t> parse_sizes(const std::string &text) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto v = parse_double(item);
        require(v && *v >= 1 && *v == static_cast<double>(static_cast<std::size_t>(*v)),
                ErrorCode::InvalidArgument, "bad size '" + item + "' in --sizes");
        sizes.push_back(static_cast<std::size_t>(*v));
    }
    require(!sizes.empty(), ErrorCode::InvalidArgument, "--sizes is empty");
    return sizes;
}

struct ScanFlags {
    std::string family = "hea-tfim";
    std::string sizes = "2,4,6,8,10";
    std::size_t layers = 4;
    std::size_t samples = 500;
    std::optional<std::size_t> param;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    bool raw_cost = false;
    bool open = false;
    std::string entangler = "ring";
    std::string out;
};

int cmd_scan(const std::vector<std::string> &args, const ScanFlags &f, std::ostream &out) {
    const std::string started = utc_timestamp();
    ScanOptions o;
    o.family = scan_family_from_string(f.family);
    o.sizes = parse_sizes(f.sizes);
    o.layers = f.layers;
    o.samples = f.samples;
    o.param_index = f.param;
    o.seed = f.seed;
    o.workers = std::max<std::size_t>(1, f.workers);
    o.normalize_cost = !f.raw_cost;
    o.boundary = f.open ? Boundary::Open : Boundary::Periodic;
    o.entangler = entangler_from_string(f.entangler);
    const VarianceScan scan = variance_scan(o);

    const nlohmann::json config{{"family", to_string(o.family)},
                                {"sizes", o.sizes},
                                {"layers", o.layers},
                                {"samples", o.samples},
                                {"param_index", o.param_index ? nlohmann::json(*o.param_index)
                                                              : nlohmann::json("middle-layer")},
                                {"normalize_cost", o.normalize_cost},
                                {"entangler", to_string(o.entangler)}};
    const auto manifest =
        make_manifest(args, config, f.seed, "", "", to_string(o.boundary), started);
    const fs::path dir = output_directory(f.out);
    const std::string stem = "scan_" + to_string(o.family);
    nlohmann::json j = to_json(scan);
    j["manifest"] = manifest;
    write_text(dir / (stem + ".json"), j.dump(2) + "\n");
    const std::string csv = scan_csv(scan);
    write_text(dir / (stem + ".csv"), manifest_comment(manifest) + csv);
    out << csv;
    out << "grad_decay," << (scan.grad_decay ? format_double(*scan.grad_decay, 6) : "NA") << '\n';
    out << "cost_decay," << (scan.cost_decay ? format_double(*scan.cost_decay, 6) : "NA") << '\n';
    return 0;
}

struct ExactFlags {
    std::string file;
    std::optional<std::size_t> tfim;
    std::optional<std::size_t> xxz;
    double coupling = 1.0;
    double field = 1.0;
    double delta = 2.0;
    bool open = false;
};

int cmd_exact(const ExactFlags &f, std::ostream &out) {
    const int sources = (f.file.empty() ? 0 : 1) + (f.tfim ? 1 : 0) + (f.xxz ? 1 : 0);
    require(sources == 1, ErrorCode::InvalidArgument,
            "exact needs exactly one of --file, --tfim N or --xxz N");
    const Boundary b = f.open ? Boundary::Open : Boundary::Periodic;
    if (!f.file.empty()) {
        const HamiltonianText h = load_hamiltonian_file(f.file);
        const double e = ground_energy(h.hamiltonian);
        out << "ground_energy " << format_double(e) << '\n';
        if (h.reference_energy) {
            out << "reference_energy " << format_double(*h.reference_energy) << '\n';
            out << "abs_diff " << format_double(std::abs(e - *h.reference_energy), 6) << '\n';
        }
        return 0;
    }
    const PauliSum h = f.tfim ? build_tfim(*f.tfim, f.coupling, f.field, b)
                              : build_xxz(Lattice::chain(*f.xxz), f.coupling, f.delta, b).hamiltonian;
    out << "ground_energy " << format_double(ground_energy(h)) << '\n';
    return 0;
}

struct FidelityFlags {
    std::string model = "xxz";
    std::size_t n = 4;
    std::size_t layers = 4;
    std::string pool;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    bool open = false;
    std::string out;
};

int cmd_fidelity(const std::vector<std::string> &args, const FidelityFlags &f, std::ostream &out) {
    const std::string started = utc_timestamp();
    require(f.model == "xxz" || f.model == "tfim", ErrorCode::InvalidArgument,
            "--model must be xxz or tfim");
    const Boundary b = f.open ? Boundary::Open : Boundary::Periodic;
    const std::size_t n = f.n;
    const std::size_t m = 2 * n;
    require(m <= kMaxDenseQubits, ErrorCode::SizeLimit,
            "fidelity needs the target (2n qubits) within " + std::to_string(kMaxDenseQubits) + " qubits");

    const bool xxz = f.model == "xxz";
    const auto problem = [&](std::size_t q) -> std::pair<PauliSum, CircuitSpec> {
        if (xxz) {
            auto model = build_xxz(Lattice::chain(q), 1.0, 2.0, b);
            return {model.hamiltonian, build_hva(model.parts, f.layers)};
        }
        return {build_tfim(q, 1.0, 2.0, b), build_hea(q, f.layers, Entangler::Chain)};
    };
    const auto [base_h, base_c] = problem(n);
    const auto [target_h, target_c] = problem(m);

    // Trained base parameters: first pool entry, or the first successful cold start.
    std::vector<double> trained;
    std::string source;
    if (!f.pool.empty()) {
        const ParamPool pool = pool_load(f.pool);
        check_pool_shape(pool, base_c);
        require(!pool.entries.empty(), ErrorCode::EmptyPool, f.pool + " has no entries");
        trained = pool.entries.front().params;
        source = f.pool;
    } else {
        TrialProblem p{base_c, base_h, ground_energy(base_h), kChemicalAccuracy, "base",
                       [&](Rng &rng) { return random_params(base_c.num_params(), rng); }};
        RunOptions o;
        o.target_successes = 1;
        o.master_seed = f.seed;
        o.workers = std::max<std::size_t>(1, f.workers);
        const TrialRun run = run_trials(p, o);
        require(run.target_reached, ErrorCode::Config, "base training found no successful run");
        const auto it = std::find_if(run.records.begin(), run.records.end(),
                                     [](const TrialRecord &r) { return r.success; });
        trained = it->final_params;
        source = "trained (trial " + std::to_string(it->trial_index) + ")";
    }

    // Modified target circuit: HVA reuses theta* as is, HEA repeats it on both halves.
    std::vector<double> target_params;
    if (target_c.kind() == AnsatzKind::HEA) {
        target_params.resize(target_c.num_params());
        for (std::size_t idx = 0; idx < target_params.size(); ++idx) {
            auto slot = target_c.layout()[idx];
            const std::size_t qubit = slot.position / 3;
            slot.position = (qubit % n) * 3 + slot.position % 3;
            target_params[idx] = trained[base_c.index_of(slot)];
        }
    } else {
        target_params = trained;
    }

    const StateVector base_ground = from_eigen(ground_state(base_h).vector);
    const StateVector transferred = evaluate(target_c, target_params, StateVector::zero(m));
    const FidelityReport r =
        fidelity_diagnostics(base_ground, target_h, grouped_hamiltonian(base_h), transferred);

    const nlohmann::json config{{"model", f.model}, {"n", n}, {"layers", f.layers}, {"source", source}};
    const auto manifest = make_manifest(args, config, f.seed, "", "", to_string(b), started);
    const nlohmann::json j{{"manifest", manifest},
                           {"F1", r.f1},
                           {"F2", r.f2},
                           {"F_total", r.f_total},
                           {"group_energy_gap", r.group_energy_gap}};
    write_text(output_directory(f.out) / ("fidelity_" + f.model + "_" + std::to_string(n) + ".json"),
               j.dump(2) + "\n");
    out << "F1 " << format_double(r.f1, 10) << '\n'
        << "F2 " << format_double(r.f2, 10) << '\n'
        << "F_total " << format_double(r.f_total, 10) << '\n';
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Parameter-transfer experiments for variational circuits", "qtransfer"};
    app.require_subcommand(1);
    app.set_version_flag("--version", code_version());

    CommonFlags base_flags;
    auto *base = app.add_subcommand("base", "Train the base circuit from random starts and write a pool");
    add_common(base, base_flags);

    CommonFlags run_flags;
    std::string init;
    std::string pool;
    auto *run = app.add_subcommand("run", "Run a target task with one initialization string");
    add_common(run, run_flags);
    run->add_option("--init", init, "Init string over {T,R}, or BLE (task F)")->required();
    run->add_option("--pool", pool, "Pool file (default: <out>/task<X>_pool.json)");

    ScanFlags scan_flags;
    auto *scan = app.add_subcommand("scan", "Gradient-variance and cost-concentration scan");
    scan->add_option("--family", scan_flags.family, "hea-tfim or hva-xxz")->capture_default_str();
    scan->add_option("--sizes", scan_flags.sizes, "Comma-separated qubit counts")->capture_default_str();
    scan->add_option("--layers", scan_flags.layers, "Blocks / layers")->capture_default_str();
    scan->add_option("--samples", scan_flags.samples, "Parameter draws per size")->capture_default_str();
    scan->add_option("--param", scan_flags.param, "Scanned parameter index (default: middle layer)");
    scan->add_option("--seed", scan_flags.seed, "Master seed")->capture_default_str();
    scan->add_option("--workers", scan_flags.workers, "Sampling threads")->capture_default_str();
    scan->add_flag("--raw-cost", scan_flags.raw_cost, "Do not normalize C by the coefficient sum");
    scan->add_flag("--open", scan_flags.open, "Open boundary (default periodic)");
    scan->add_option("--entangler", scan_flags.entangler, "HEA entangler: ring or chain")
        ->capture_default_str();
    scan->add_option("--out", scan_flags.out, "Output directory");

    ExactFlags exact_flags;
    auto *exact = app.add_subcommand("exact", "Print the exact ground energy");
    exact->set_help_flag("--help", "Print this help message and exit");
    exact->add_option("--file", exact_flags.file, "Hamiltonian text file");
    exact->add_option("--tfim", exact_flags.tfim, "TFIM chain with N sites");
    exact->add_option("--xxz", exact_flags.xxz, "XXZ chain with N sites");
    exact->add_option("--J", exact_flags.coupling, "Coupling")->capture_default_str();
    exact->add_option("--h", exact_flags.field, "Transverse field (TFIM)")->capture_default_str();
    exact->add_option("--delta", exact_flags.delta, "Anisotropy (XXZ)")->capture_default_str();
    exact->add_flag("--open", exact_flags.open, "Open boundary");
    exact->add_flag("--periodic", "Periodic boundary (default)");

    FidelityFlags fid_flags;
    auto *fid = app.add_subcommand("fidelity", "F1 / F2 / F_total for an n -> 2n transfer");
    fid->add_option("--model", fid_flags.model, "xxz (HVA) or tfim (HEA)")->capture_default_str();
    fid->add_option("--n", fid_flags.n, "Base qubit count")->capture_default_str();
    fid->add_option("--layers", fid_flags.layers, "Base and target depth")->capture_default_str();
    fid->add_option("--pool", fid_flags.pool, "Pool with trained base parameters");
    fid->add_option("--seed", fid_flags.seed, "Seed for base training")->capture_default_str();
    fid->add_option("--workers", fid_flags.workers, "Workers for base training");
    fid->add_flag("--open", fid_flags.open, "Open boundary");
    fid->add_option("--out", fid_flags.out, "Output directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        if (*base) {
            return cmd_base(args, base_flags, out);
        }
        if (*run) {
            return cmd_run(args, run_flags, init, pool, out);
        }
        if (*scan) {
            return cmd_scan(args, scan_flags, out);
        }
        if (*exact) {
            return cmd_exact(exact_flags, out);
        }
        return cmd_fidelity(args, fid_flags, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace qtransfer
