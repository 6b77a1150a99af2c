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
#include "qtransfer/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "qtransfer/error.hpp"
#include "qtransfer/gradient.hpp"
#include "qtransfer/init.hpp"
#include "qtransfer/random.hpp"

namespace qtransfer {

namespace {

double non_identity_norm(const PauliSum &h) {
    double s = 0.0;
    for (const auto &t : h.terms()) {
        if (!t.is_identity()) {
            s += std::abs(t.coefficient);
        }
    }
    return s;
}

Eigen::Map<const Eigen::VectorXcd> as_eigen(const StateVector &s) {
    const auto a = s.amplitudes();
    return {a.data(), static_cast<Eigen::Index>(a.size())};
}

double projected_weight(const Eigen::MatrixXcd &space, const StateVector &s) {
    return std::min(1.0, (space.adjoint() * as_eigen(s)).squaredNorm());
}

} // namespace

double normalized_grad_norm(std::span<const double> grad) {
    require(!grad.empty(), ErrorCode::InvalidArgument, "gradient is empty");
    double s = 0.0;
    for (double g : grad) {
        s += g * g;
    }
    return s / static_cast<double>(grad.size());
}

double sample_mean(std::span<const double> x) {
    if (x.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (double v : x) {
        s += v;
    }
    return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) {
        return 0.0;
    }
    const double m = sample_mean(x);
    double s = 0.0;
    for (double v : x) {
        s += (v - m) * (v - m);
    }
    return s / static_cast<double>(x.size() - 1);
}

std::string to_string(ScanFamily family) {
    return family == ScanFamily::HeaTfim ? "hea-tfim" : "hva-xxz";
}

ScanFamily scan_family_from_string(std::string_view name) {
    if (name == "hea-tfim" || name == "hea") {
        return ScanFamily::HeaTfim;
    }
    if (name == "hva-xxz" || name == "hva") {
        return ScanFamily::HvaXxz;
    }
    fail(ErrorCode::InvalidArgument, "unknown scan family '" + std::string(name) +
                                         "' (hea-tfim, hva-xxz)");
}

double ScanPoint::grad_stderr() const {
    return samples == 0 ? 0.0 : std::sqrt(var_grad / static_cast<double>(samples));
}

ScanPoint scan_circuit(const CircuitSpec &circuit, const PauliSum &h, std::size_t samples,
                       std::size_t param_index, std::uint64_t seed, std::size_t workers,
                       double cost_scale) {
    require(samples >= 2, ErrorCode::InvalidArgument, "a scan needs at least two samples");
    require(param_index < circuit.num_params(), ErrorCode::OutOfRange,
            "scanned parameter " + std::to_string(param_index) + " does not exist");
    require(cost_scale > 0.0, ErrorCode::InvalidArgument, "cost scale must be positive");

    ScanPoint pt;
    pt.num_qubits = circuit.num_qubits();
    pt.samples = samples;
    pt.param_index = param_index;
    pt.cost_scale = cost_scale;
    pt.grads.resize(samples);
    pt.costs.resize(samples);

    auto work = [&](std::size_t k) {
        Rng rng(derive_seed(seed, k));
        const auto theta = random_params(circuit.num_params(), rng);
        std::vector<double> grad(theta.size());
        pt.costs[k] = cost_and_gradient(circuit, theta, h, grad) / cost_scale;
        pt.grads[k] = grad[param_index];
    };
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, samples);
    if (threads == 1) {
        for (std::size_t k = 0; k < samples; ++k) {
            work(k);
        }
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = w; k < samples; k += threads) {
                        work(k);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
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
    pt.mean_grad = sample_mean(pt.grads);
    pt.var_grad = sample_variance(pt.grads);
    pt.mean_cost = sample_mean(pt.costs);
    pt.var_cost = sample_variance(pt.costs);
    return pt;
}

std::pair<CircuitSpec, PauliSum> scan_problem(const ScanOptions &options, std::size_t n) {
    if (options.family == ScanFamily::HeaTfim) {
        return {build_hea(n, options.layers, options.entangler),
                build_tfim(n, 1.0, 2.0, options.boundary)};
    }
    auto model = build_xxz(Lattice::chain(n), 1.0, 2.0, options.boundary);
    return {build_hva(model.parts, options.layers), model.hamiltonian};
}

VarianceScan variance_scan(const ScanOptions &options) {
    require(!options.sizes.empty(), ErrorCode::InvalidArgument, "scan needs at least one size");
    require(options.samples >= kMinScanSamples, ErrorCode::InvalidArgument,
            "scan needs at least " + std::to_string(kMinScanSamples) + " samples per size");
    require(options.layers >= 1, ErrorCode::InvalidArgument, "scan needs at least one layer");
    for (auto n : options.sizes) {
        require(n <= kMaxScanQubits, ErrorCode::SizeLimit,
                "scan size " + std::to_string(n) + " exceeds " + std::to_string(kMaxScanQubits) +
                    " qubits");
        require(n >= 2, ErrorCode::InvalidSize, "scan sizes start at 2 qubits");
    }

    VarianceScan scan;
    scan.family = options.family;
    scan.layers = options.layers;
    std::vector<double> vg;
    std::vector<double> vc;
    for (std::size_t i = 0; i < options.sizes.size(); ++i) {
        const std::size_t n = options.sizes[i];
        auto [circuit, h] = scan_problem(options, n);
        const std::size_t idx =
            options.param_index.value_or((options.layers / 2) * circuit.params_per_layer());
        const double scale = options.normalize_cost ? non_identity_norm(h) : 1.0;
        scan.points.push_back(scan_circuit(circuit, h, options.samples, idx,
                                           derive_seed(options.seed, n), options.workers,
                                           scale > 0.0 ? scale : 1.0));
        vg.push_back(scan.points.back().var_grad);
        vc.push_back(scan.points.back().var_cost);
    }
    scan.grad_decay = fit_decay_factor(options.sizes, vg);
    scan.cost_decay = fit_decay_factor(options.sizes, vc);
    return scan;
}

VarianceScan cost_concentration_scan(const ScanOptions &options) { return variance_scan(options); }

std::optional<double> fit_decay_factor(std::span<const std::size_t> sizes,
                                       std::span<const double> variances) {
    require(sizes.size() == variances.size(), ErrorCode::ShapeMismatch,
            "sizes and variances differ in length");
    if (sizes.size() < 4) {
        return std::nullopt;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(variances[i] > 0.0)) {
            return std::nullopt;
        }
        const double x = static_cast<double>(sizes[i]);
        const double y = std::log(variances[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(sizes.size());
    const double denom = k * sxx - sx * sx;
    if (denom == 0.0) {
        return std::nullopt;
    }
    const double slope = (k * sxy - sx * sy) / denom;
    return std::exp(-slope);
}

double chebyshev_bound(double variance, double c) {
    require(c > 0.0, ErrorCode::InvalidArgument, "Chebyshev threshold must be positive");
    require(variance >= 0.0, ErrorCode::InvalidArgument, "variance must be non-negative");
    return std::min(1.0, variance / (c * c));
}

Exceedance empirical_exceedance(std::span<const double> samples, double c) {
    require(!samples.empty(), ErrorCode::InvalidArgument, "no samples");
    std::size_t hits = 0;
    for (double x : samples) {
        hits += std::abs(x) >= c ? 1 : 0;
    }
    const double n = static_cast<double>(samples.size());
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

nlohmann::json to_json(const VarianceScan &scan) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto &p : scan.points) {
        nlohmann::json cheb = nlohmann::json::array();
        const double sd = std::sqrt(p.var_grad);
        for (double k : {1.0, 2.0, 3.0}) {
            if (sd > 0.0) {
                const double c = k * sd;
                const auto e = empirical_exceedance(p.grads, c);
                cheb.push_back({{"c", c},
                                {"bound", chebyshev_bound(p.var_grad, c)},
                                {"empirical", e.frequency},
                                {"empirical_sigma", e.sigma}});
            }
        }
        points.push_back({{"n", p.num_qubits},
                          {"samples", p.samples},
                          {"param_index", p.param_index},
                          {"mean_grad", p.mean_grad},
                          {"var_grad", p.var_grad},
                          {"stderr_grad", p.grad_stderr()},
                          {"mean_cost", p.mean_cost},
                          {"var_cost", p.var_cost},
                          {"cost_scale", p.cost_scale},
                          {"chebyshev", cheb}});
    }
    nlohmann::json j{{"family", to_string(scan.family)}, {"layers", scan.layers}, {"points", points}};
    j["grad_decay"] = scan.grad_decay ? nlohmann::json(*scan.grad_decay) : nlohmann::json();
    j["cost_decay"] = scan.cost_decay ? nlohmann::json(*scan.cost_decay) : nlohmann::json();
    return j;
}

std::string scan_csv(const VarianceScan &scan) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << "n,samples,mean_grad,var_grad,mean_cost,var_cost\n";
    for (const auto &p : scan.points) {
        out << p.num_qubits << ',' << p.samples << ',' << format_double(p.mean_grad) << ','
            << format_double(p.var_grad) << ',' << format_double(p.mean_cost) << ','
            << format_double(p.var_cost) << '\n';
    }
    return out.str();
}

PauliSum grouped_hamiltonian(const PauliSum &base) {
    const std::size_t n = base.num_qubits();
    std::vector<PauliTerm> terms;
    for (std::size_t copy = 0; copy < 2; ++copy) {
        for (auto t : base.terms()) {
            for (auto &f : t.factors) {
                f.qubit += copy * n;
            }
            terms.push_back(std::move(t));
        }
    }
    return canonicalize(std::move(terms), 2 * n);
}

FidelityReport fidelity_diagnostics(const StateVector &base_ground, const PauliSum &target,
                                    const PauliSum &group, const StateVector &transferred) {
    const std::size_t m = target.num_qubits();
    require(2 * base_ground.num_qubits() == m, ErrorCode::ShapeMismatch,
            "target must have twice the base qubit count");
    require(group.num_qubits() == m && transferred.num_qubits() == m, ErrorCode::ShapeMismatch,
            "grouped Hamiltonian and transferred state must match the target size");
    require(m <= kMaxDenseQubits, ErrorCode::SizeLimit,
            "fidelity diagnostics need exact eigenvectors (at most " +
                std::to_string(kMaxDenseQubits) + " qubits)");

    const StateVector grouped = tensor_product(base_ground, base_ground);
    const Eigen::MatrixXcd target_space = ground_space(target);
    FidelityReport r;
    r.f1 = projected_weight(target_space, grouped);
    r.f2 = fidelity(grouped, transferred);
    r.f_total = projected_weight(target_space, transferred);
    r.group_energy_gap = expectation(grouped, group) - ground_energy(group);
    return r;
}

TaskSummary summarize(std::span<const TrialRecord> records, std::size_t target_successes) {
    std::vector<const TrialRecord *> sorted;
    for (const auto &r : records) {
        sorted.push_back(&r);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](auto *a, auto *b) { return a->trial_index < b->trial_index; });

    TaskSummary s;
    s.ttn = sorted.size();
    std::vector<double> iters;
    for (const auto *r : sorted) {
        s.total_wall_time += r->wall_time;
        if (s.init.empty()) {
            s.init = r->init;
        }
        if (!r->success) {
            continue;
        }
        iters.push_back(static_cast<double>(r->iterations));
        const auto &g = r->grad_norm_trace;
        if (g.size() > s.mean_g_trace.size()) {
            s.mean_g_trace.resize(g.size(), 0.0);
            s.g_trace_counts.resize(g.size(), 0);
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            s.mean_g_trace[i] += g[i];
            ++s.g_trace_counts[i];
        }
    }
    for (std::size_t i = 0; i < s.mean_g_trace.size(); ++i) {
        s.mean_g_trace[i] /= static_cast<double>(s.g_trace_counts[i]);
    }
    s.successes = iters.size();
    s.empty = iters.empty();
    s.target_reached = target_successes > 0 ? s.successes >= target_successes : !s.empty;
    if (!s.empty) {
        s.mean_iterations = sample_mean(iters);
        s.std_iterations = std::sqrt(sample_variance(iters));
    }
    return s;
}

nlohmann::json to_json(const TaskSummary &s) {
    nlohmann::json j{{"task", s.task},
                     {"init", s.init},
                     {"ttn", s.ttn},
                     {"successes", s.successes},
                     {"empty", s.empty},
                     {"target_reached", s.target_reached},
                     {"mean_g_trace", s.mean_g_trace},
                     {"g_trace_counts", s.g_trace_counts},
                     {"total_wall_time", s.total_wall_time}};
    if (s.empty) {
        j["mean_iterations"] = nullptr;
        j["std_iterations"] = nullptr;
    } else {
        j["mean_iterations"] = s.mean_iterations;
        j["std_iterations"] = s.std_iterations;
    }
    return j;
}

std::string summary_csv_header() { return "task,string,TTN,mean_iters,std_iters"; }

std::string summary_csv_row(const TaskSummary &s) {
    std::string row = s.task + "," + s.init + "," + std::to_string(s.ttn) + ",";
    if (s.empty) {
        return row + "NA,NA";
    }
    return row + format_double(s.mean_iterations, 10) + "," + format_double(s.std_iterations, 10);
}

} // namespace qtransfer
