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
 * Acceptance suite: one PASS/FAIL line per criterion. Exit code 0 only when
 * every criterion passes, or when every failure is listed via
 * `--known-red 4,7`; the FAIL lines are printed either way. Stochastic
 * criteria use fixed master seeds.
 */
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qtransfer/analysis.hpp"
#include "qtransfer/cli.hpp"
#include "qtransfer/error.hpp"
#include "qtransfer/gradient.hpp"
#include "qtransfer/init.hpp"
#include "qtransfer/models.hpp"
#include "qtransfer/tasks.hpp"
#include "qtransfer/trial.hpp"

using namespace qtransfer;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 4) { return format_double(v, digits); }

oracle::Vector to_vec(const StateVector &s) {
    oracle::Vector v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

// 1. Adjoint gradient vs central differences and parameter shift.
Outcome gradient_exactness() {
    const std::size_t sizes[] = {2, 4, 6};
    const std::size_t depths[] = {1, 2, 4};
    double fd_err = 0.0, ps_err = 0.0;
    int circuits = 0;
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = sizes[k % 3];
        const std::size_t p = depths[(k / 3) % 3];
        Rng rng(derive_seed(1, static_cast<std::uint64_t>(k)));
        if (k % 2 == 0) {
            const auto c = build_hea(n, p);
            const auto h = build_tfim(n, 1.0, 2.0, Boundary::Periodic);
            const auto theta = random_params(c.num_params(), rng);
            const auto g = gradient(c, theta, h);
            fd_err = std::max(fd_err, max_abs_diff(g, finite_difference_gradient(c, theta, h, 1e-5)));
            ps_err = std::max(ps_err, max_abs_diff(g, parameter_shift_gradient(c, theta, h)));
        } else {
            const auto m = build_xxz(Lattice::chain(n), 1.0, 2.0, Boundary::Periodic);
            const auto c = build_hva(m.parts, p);
            const auto theta = random_params(c.num_params(), rng);
            const auto g = gradient(c, theta, m.hamiltonian);
            fd_err = std::max(fd_err, max_abs_diff(g, finite_difference_gradient(c, theta, m.hamiltonian, 1e-5)));
        }
        ++circuits;
    }
    return {fd_err < 1e-6 && ps_err < 1e-9, std::to_string(circuits) + " circuits, max |adjoint - FD| = " +
                                                fmt(fd_err, 3) + ", max |adjoint - shift| = " + fmt(ps_err, 3)};
}

// 2. Simulator vs dense Kronecker products for n <= 5.
Outcome simulator_oracle() {
    double state_err = 0.0, exp_err = 0.0;
    for (std::size_t n = 1; n <= 5; ++n) {
        Rng rng(derive_seed(2, n));
        std::vector<CircuitSpec> circuits;
        std::vector<PauliSum> hs;
        if (n >= 2) {
            circuits.push_back(build_hea(n, 2));
            hs.push_back(build_tfim(n, 1.0, 2.0, Boundary::Periodic));
            const auto m = build_xxz(Lattice::chain(n), 1.0, 2.0, Boundary::Periodic);
            circuits.push_back(build_hva(m.parts, 2));
            hs.push_back(m.hamiltonian);
            circuits.push_back(build_hva_variant(m.parts, 2));
            hs.push_back(m.hamiltonian + canonicalize({pauli_term(0.3, "Y0"), pauli_term(-0.7, "X0 Z1")}, n));
        } else {
            circuits.push_back(CircuitSpec(1, AnsatzKind::HEA, 1, 2,
                                           {GateSlot{GateKind::RotX, {0}, 0, std::nullopt},
                                            GateSlot{GateKind::RotZ, {0}, 1, std::nullopt}},
                                           {ParamSlot{0, 0, 0}, ParamSlot{0, 0, 1}}));
            hs.push_back(canonicalize({pauli_term(0.5, "X0"), pauli_term(-1.0, "Y0"), pauli_term(2.0, "Z0")}, 1));
        }
        for (std::size_t i = 0; i < circuits.size(); ++i) {
            const auto theta = random_params(circuits[i].num_params(), rng);
            const auto s = evaluate(circuits[i], theta, StateVector::zero(n));
            const auto ref = oracle::circuit_state(circuits[i], theta);
            state_err = std::max(state_err, (to_vec(s) - ref).norm());
            const double e = expectation(s, hs[i]);
            exp_err = std::max(exp_err, std::abs(e - oracle::dense_expectation(ref, oracle::dense_hamiltonian(hs[i]))));
        }
    }
    return {state_err < 1e-10 && exp_err < 1e-10,
            "max state error " + fmt(state_err, 3) + ", max expectation error " + fmt(exp_err, 3)};
}

// 3. Exact solver sanity.
Outcome exact_solver() {
    const auto ring = build_tfim(4, 1.0, 0.0, Boundary::Periodic);
    const double e = ground_energy(ring);
    const auto h = build_tfim(4, 1.0, 2.0, Boundary::Periodic);
    const double e0 = ground_energy(h);
    const double shift = std::abs(ground_energy(h + PauliSum::identity(4, 1.75)) - (e0 + 1.75));
    const double scale = std::abs(ground_energy(h.scaled(1.5)) - 1.5 * e0);
    const bool ok = std::abs(e + 4.0) < 1e-12 && shift < 1e-10 && scale < 1e-10;
    return {ok, "Ising ring E0 = " + format_double(e) + ", shift error " + fmt(shift, 3) +
                    ", scaling error " + fmt(scale, 3)};
}

// 4 and 5 share one scan.
VarianceScan lemma_scan() {
    ScanOptions o;
    o.family = ScanFamily::HeaTfim;
    o.sizes = {2, 4, 6, 8, 10};
    o.layers = 4;
    o.samples = 500;
    o.seed = 2023;
    o.entangler = Entangler::Ring;
    return variance_scan(o);
}

bool strictly_decreasing(const std::vector<double> &v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) {
            return false;
        }
    }
    return true;
}

Outcome gradient_variance(const VarianceScan &scan) {
    bool means = true;
    std::vector<double> var;
    std::ostringstream d;
    d << "Var[dC] by n:";
    for (const auto &p : scan.points) {
        means = means && std::abs(p.mean_grad) < 3 * p.grad_stderr();
        var.push_back(p.var_grad);
        d << ' ' << p.num_qubits << ':' << fmt(p.var_grad);
    }
    const bool decreasing = strictly_decreasing(var);
    const bool decay = scan.grad_decay && *scan.grad_decay > 1.0;
    d << "; mean within 3 stderr: " << (means ? "yes" : "no") << "; strictly decreasing: "
      << (decreasing ? "yes" : "no") << "; p = " << (scan.grad_decay ? fmt(*scan.grad_decay) : "NA");
    return {means && decreasing && decay, d.str()};
}

Outcome cost_concentration(const VarianceScan &scan) {
    std::vector<double> var;
    std::ostringstream d;
    d << "normalized Var[C] by n:";
    for (const auto &p : scan.points) {
        var.push_back(p.var_cost);
        d << ' ' << p.num_qubits << ':' << fmt(p.var_cost);
    }
    const bool decreasing = strictly_decreasing(var);
    d << "; strictly decreasing: " << (decreasing ? "yes" : "no")
      << "; b = " << (scan.cost_decay ? fmt(*scan.cost_decay) : "NA");
    return {decreasing, d.str()};
}

// 6. BLE maps |0...0> to itself.
Outcome ble_identity() {
    const auto task = find_task('F');
    const auto circuit = target_circuit(task);
    const auto &h = task.target.hamiltonian;
    const double reference = expectation(StateVector::zero(circuit.num_qubits()), h);
    double worst_fid = 1.0, worst_cost = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const auto p = ble_init(circuit, rng);
        const auto s = evaluate(circuit, p, StateVector::zero(circuit.num_qubits()));
        worst_fid = std::min(worst_fid, fidelity(s, StateVector::zero(circuit.num_qubits())));
        worst_cost = std::max(worst_cost, std::abs(cost(circuit, p, h) - reference));
    }
    return {worst_fid >= 1.0 - 1e-10 && worst_cost < 1e-10,
            "20 BLE draws on the 8-qubit variant: min fidelity 1 - " + fmt(1.0 - worst_fid, 3) +
                ", max |C - <0|H|0>| = " + fmt(worst_cost, 3)};
}

// 7. Transfer benefit at desk scale.
struct Comparison {
    std::size_t ttn_t, ttn_r;
    double it_t, it_r;
    bool reached;
};

Comparison compare(char id, std::uint64_t seed) {
    const auto task = find_task(id);
    RunOptions o;
    o.target_successes = 20;
    o.master_seed = seed;
    const auto pool = make_pool(task, run_base(task, o));
    const std::string all_t(task.string_length, 'T');
    const std::string all_r(task.string_length, 'R');
    const auto t = summarize(run_task(task, all_t, &pool, o).records, 20);
    const auto r = summarize(run_task(task, all_r, nullptr, o).records, 20);
    return {t.ttn, r.ttn, t.mean_iterations, r.mean_iterations, t.target_reached && r.target_reached};
}

Outcome transfer_benefit() {
    bool all = true;
    std::ostringstream d;
    for (char id : {'A', 'D'}) {
        int wins = 0;
        d << (id == 'A' ? "" : "; ") << "task " << id << ':';
        for (std::uint64_t seed : {101u, 202u, 303u}) {
            const auto c = compare(id, seed);
            const bool win = c.reached && c.ttn_t <= c.ttn_r && c.it_t < c.it_r;
            wins += win ? 1 : 0;
            d << " [seed " << seed << " TTN " << c.ttn_t << " vs " << c.ttn_r << ", iters "
              << fmt(c.it_t) << " vs " << fmt(c.it_r) << (win ? " ok" : " no") << ']';
        }
        d << ' ' << wins << "/3";
        all = all && wins >= 2;
    }
    return {all, d.str()};
}

// 8. Fidelity diagnostics.
Outcome fidelity_check() {
    // Zero interaction: the target equals the grouped Hamiltonian.
    const auto tfim = build_tfim(4, 1.0, 2.0, Boundary::Periodic);
    const auto tg = from_eigen(ground_state(tfim).vector);
    const auto group_t = grouped_hamiltonian(tfim);
    const double f1_zero = fidelity_diagnostics(tg, group_t, group_t, tensor_product(tg, tg)).f1;

    // XXZ 8-site chain from two 4-site halves, against a dense Kronecker oracle.
    const auto base = build_xxz(Lattice::chain(4), 1.0, 2.0, Boundary::Periodic).hamiltonian;
    const auto target = build_xxz(Lattice::chain(8), 1.0, 2.0, Boundary::Periodic).hamiltonian;
    const auto bg = ground_state(base).vector;
    const auto r = fidelity_diagnostics(from_eigen(bg), target, grouped_hamiltonian(base), StateVector::zero(8));

    const oracle::Matrix dense = oracle::dense_hamiltonian(target);
    Eigen::SelfAdjointEigenSolver<oracle::Matrix> es(dense);
    const double e0 = es.eigenvalues()(0);
    const oracle::Vector grouped = oracle::kron(bg, bg);
    double f1_ref = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size() && es.eigenvalues()(k) < e0 + 1e-8; ++k) {
        f1_ref += std::norm(es.eigenvectors().col(k).dot(grouped));
    }
    const double diff = std::abs(r.f1 - f1_ref);
    return {std::abs(f1_zero - 1.0) < 1e-10 && diff < 1e-10,
            "zero interaction F1 = 1 - " + fmt(1.0 - f1_zero, 3) + "; XXZ 4+4 -> 8 F1 = " + fmt(r.f1, 12) +
                ", oracle " + fmt(f1_ref, 12) + " (diff " + fmt(diff, 3) + ")"};
}

// 9. File formats.
Outcome file_formats() {
    const auto dir = fs::temp_directory_path() / "qtransfer_acceptance";
    fs::create_directories(dir);
    const auto slurp = [](const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };

    bool ok = true;
    save_hamiltonian_file(dir / "h1.txt", build_tfim(5, 1.0, 0.7, Boundary::Periodic), -1.0 / 3.0);
    const auto loaded = load_hamiltonian_file(dir / "h1.txt");
    save_hamiltonian_file(dir / "h2.txt", loaded.hamiltonian, loaded.reference_energy);
    ok = ok && slurp(dir / "h1.txt") == slurp(dir / "h2.txt");

    RunOptions o;
    o.target_successes = 3;
    o.master_seed = 9;
    const auto task = find_task('A');
    auto pool = make_pool(task, run_base(task, o));
    pool_save(pool, dir / "p1.json");
    pool_save(pool_load(dir / "p1.json"), dir / "p2.json");
    ok = ok && slurp(dir / "p1.json") == slurp(dir / "p2.json") && pool_load(dir / "p1.json") == pool;

    std::string detail = std::string("Hamiltonian and pool save-load-save ") + (ok ? "identical" : "DIFFER");
    const auto h2 = fs::path(QTRANSFER_TEST_DATA_DIR) / "chemistry" / "h2_sto3g.txt";
    if (!fs::exists(h2)) {
        detail += "; H2 check skipped: " + h2.string() + " not found";
    } else {
        const auto f = load_hamiltonian_file(h2);
        save_hamiltonian_file(dir / "h2a.txt", f.hamiltonian, f.reference_energy);
        const auto g = load_hamiltonian_file(dir / "h2a.txt");
        save_hamiltonian_file(dir / "h2b.txt", g.hamiltonian, g.reference_energy);
        const bool same = slurp(dir / "h2a.txt") == slurp(dir / "h2b.txt");
        const double diff = f.reference_energy ? std::abs(ground_energy(f.hamiltonian) - *f.reference_energy) : 1.0;
        ok = ok && same && diff < 1e-8;
        detail += "; H2 round-trip " + std::string(same ? "identical" : "DIFFERS") + ", |E0 - reference| = " +
                  fmt(diff, 3);
    }
    return {ok, detail};
}

// 10. `run` with 1 and 8 workers.
Outcome determinism() {
    const auto dir = fs::temp_directory_path() / "qtransfer_acceptance" / "workers";
    fs::remove_all(dir);
    const auto run = [&](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        if (code != 0) {
            throw std::runtime_error("qtransfer " + args[0] + " failed: " + err.str());
        }
    };
    const std::string d = dir.string();
    run({"base", "--task", "A", "--successes", "5", "--seed", "10", "--out", d + "/w1"});
    fs::create_directories(d + "/w8");
    fs::copy_file(d + "/w1/taskA_pool.json", d + "/w8/taskA_pool.json");
    for (const char *w : {"1", "8"}) {
        run({"run", "--task", "A", "--init", "TTR", "--successes", "6", "--seed", "11", "--workers", w,
             "--out", d + "/w" + w});
    }
    const auto records = [](const fs::path &p) {
        std::ifstream in(p);
        std::vector<TrialRecord> out;
        std::string line;
        std::getline(in, line); // manifest
        while (std::getline(in, line)) {
            out.push_back(trial_from_json(nlohmann::json::parse(line)));
        }
        return out;
    };
    const auto a = records(d + "/w1/taskA_TTR_trials.jsonl");
    const auto b = records(d + "/w8/taskA_TTR_trials.jsonl");
    bool same = a.size() == b.size() && !a.empty();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
        same = a[i].same_outcome(b[i]);
    }
    return {same, std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                      " records from task A TTR; identical apart from wall time: " + (same ? "yes" : "no")};
}

// Why the tasks default to the chain entangler.
std::string ring_note() {
    const auto h = build_tfim(4, 1.0, 2.0, Boundary::Periodic);
    const double e0 = ground_energy(h);
    double best = 0.0;
    for (Entangler e : {Entangler::Ring, Entangler::Chain}) {
        const auto c = build_hea(4, 4, e);
        double b = 1e9;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Rng rng(seed);
            b = std::min(b, bfgs_minimize(c, h, random_params(c.num_params(), rng)).energy);
        }
        if (e == Entangler::Ring) {
            best = b;
        } else {
            return "note: 4-qubit TFIM, HEA P=4, best of 5 cold starts: ring " + fmt(best, 8) + ", chain " +
                   fmt(b, 8) + ", exact " + fmt(e0, 8) + "; tasks use the chain entangler";
        }
    }
    return {};
}

} // namespace

int main(int argc, char **argv) {
    std::set<int> known_red;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--known-red" && i + 1 < argc) {
            std::stringstream list(argv[++i]);
            std::string item;
            while (std::getline(list, item, ',')) {
                known_red.insert(std::stoi(item));
            }
        } else {
            std::cerr << "usage: acceptance [--known-red N,M,...]\n";
            return 2;
        }
    }
    int failures = 0;
    std::vector<int> unexpected;
    const auto report = [&](int id, const char *name, const std::function<Outcome()> &fn) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) {
            ++failures;
            if (!known_red.count(id)) {
                unexpected.push_back(id);
            }
        }
        std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " " << name << ": " << o.detail
                  << " (" << format_double(secs, 3) << " s)" << std::endl;
    };

    report(1, "gradient exactness", gradient_exactness);
    report(2, "simulator vs dense oracle", simulator_oracle);
    report(3, "exact solver sanity", exact_solver);
    std::optional<VarianceScan> scan;
    report(4, "gradient variance decay", [&] {
        scan = lemma_scan();
        return gradient_variance(*scan);
    });
    report(5, "cost concentration", [&] {
        return scan ? cost_concentration(*scan) : Outcome{false, "scan unavailable"};
    });
    report(6, "BLE identity", ble_identity);
    report(7, "transfer benefit", transfer_benefit);
    report(8, "fidelity diagnostics", fidelity_check);
    report(9, "file formats", file_formats);
    report(10, "determinism under parallelism", determinism);
    std::cout << ring_note() << std::endl;
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed");
    if (failures > 0) {
        std::cout << ", " << unexpected.size() << " not in the known-red list";
    }
    std::cout << std::endl;
    for (int id : known_red) {
        std::cout << "known red: criterion " << id << std::endl;
    }
    return unexpected.empty() ? 0 : 1;
}
