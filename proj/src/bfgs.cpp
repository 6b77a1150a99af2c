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
#include "qtransfer/bfgs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qtransfer/error.hpp"
#include "qtransfer/gradient.hpp"

namespace qtransfer {

namespace {

using Vec = Eigen::VectorXd;

constexpr std::size_t kMaxLineSearchEvals = 40;
constexpr double kMaxStepScale = 1e4;

struct Point {
    double alpha = 0.0;
    double f = 0.0;
    double slope = 0.0; // directional derivative along the search direction
    Vec g;
};

class NonFinite {};

bool finite(const Vec &v) { return v.allFinite(); }

double mean_square(const Vec &g) { return g.size() == 0 ? 0.0 : g.squaredNorm() / g.size(); }

class LineSearch {
  public:
    LineSearch(const Objective &f, const Vec &x, const Vec &p, const OptimizerConfig &c)
        : f_(f), x_(x), p_(p), c_(c), trial_(x.size()), grad_(x.size()) {}

    // Returns false when no point satisfying the strong Wolfe conditions was found.
    bool run(const Point &start, double alpha0, Point &out) {
        Point prev = start;
        double alpha = alpha0;
        for (std::size_t i = 0; i < kMaxLineSearchEvals; ++i) {
            Point cur = eval(alpha);
            if (cur.f > start.f + c_.wolfe_c1 * alpha * start.slope || (i > 0 && cur.f >= prev.f)) {
                return zoom(start, prev, cur, out);
            }
            if (std::abs(cur.slope) <= -c_.wolfe_c2 * start.slope) {
                out = std::move(cur);
                return true;
            }
            if (cur.slope >= 0.0) {
                return zoom(start, cur, prev, out);
            }
            prev = std::move(cur);
            alpha = std::min(2.0 * alpha, kMaxStepScale * alpha0);
        }
        return false;
    }

  private:
    Point eval(double alpha) {
        trial_ = x_ + alpha * p_;
        Point pt;
        pt.alpha = alpha;
        pt.f = f_(std::span<const double>(trial_.data(), trial_.size()),
                  std::span<double>(grad_.data(), grad_.size()));
        if (!std::isfinite(pt.f) || !finite(grad_)) {
            throw NonFinite{};
        }
        pt.g = grad_;
        pt.slope = pt.g.dot(p_);
        return pt;
    }

    // Minimizer of the cubic through (a, fa, da), (b, fb, db); NaN if degenerate.
    static double cubic_min(const Point &a, const Point &b) {
        const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
        const double disc = d1 * d1 - a.slope * b.slope;
        if (disc < 0.0) {
            return std::nan("");
        }
        const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
        return b.alpha -
               (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
    }

    // lo satisfies sufficient decrease and has the lowest value seen; the
    // minimizer is bracketed between lo and hi.
    bool zoom(const Point &start, Point lo, Point hi, Point &out) {
        for (std::size_t i = 0; i < kMaxLineSearchEvals; ++i) {
            const double a = std::min(lo.alpha, hi.alpha);
            const double b = std::max(lo.alpha, hi.alpha);
            const double margin = 0.1 * (b - a);
            double alpha = cubic_min(lo, hi);
            if (!std::isfinite(alpha) || alpha < a + margin || alpha > b - margin) {
                alpha = 0.5 * (a + b);
            }
            if (b - a <= 1e-16 * std::max(1.0, b)) {
                break;
            }
            Point cur = eval(alpha);
            if (cur.f > start.f + c_.wolfe_c1 * alpha * start.slope || cur.f >= lo.f) {
                hi = std::move(cur);
                continue;
            }
            if (std::abs(cur.slope) <= -c_.wolfe_c2 * start.slope) {
                out = std::move(cur);
                return true;
            }
            if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) {
                hi = lo;
            }
            lo = std::move(cur);
        }
        // Fall back to the best sufficient-decrease point if it moved at all.
        if (lo.alpha > 0.0 && lo.f < start.f) {
            out = std::move(lo);
            return true;
        }
        return false;
    }

    const Objective &f_;
    const Vec &x_;
    const Vec &p_;
    const OptimizerConfig &c_;
    Vec trial_;
    Vec grad_;
};

} // namespace

std::string to_string(StopReason reason) {
    switch (reason) {
    case StopReason::Gradient:
        return "gradient";
    case StopReason::Step:
        return "step";
    case StopReason::IterationCap:
        return "iteration-cap";
    case StopReason::LineSearch:
        return "line-search";
    case StopReason::NonFinite:
        return "non-finite";
    }
    return "unknown";
}

OptimizerConfig OptimizerConfig::from_json(const nlohmann::json &j) {
    OptimizerConfig c;
    require(j.is_object(), ErrorCode::Config, "optimizer config must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        require(key == "iter_cap" || key == "grad_tol" || key == "step_tol" || key == "wolfe_c1" ||
                    key == "wolfe_c2" || key == "fd_step",
                ErrorCode::Config, "unknown optimizer config key '" + key + "'");
    }
    try {
        c.iter_cap = j.value("iter_cap", c.iter_cap);
        c.grad_tol = j.value("grad_tol", c.grad_tol);
        c.step_tol = j.value("step_tol", c.step_tol);
        c.wolfe_c1 = j.value("wolfe_c1", c.wolfe_c1);
        c.wolfe_c2 = j.value("wolfe_c2", c.wolfe_c2);
        c.fd_step = j.value("fd_step", c.fd_step);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Config, std::string("optimizer config: ") + e.what());
    }
    require(c.grad_tol > 0.0 && c.step_tol > 0.0 && c.fd_step > 0.0, ErrorCode::Config,
            "optimizer tolerances must be positive");
    require(0.0 < c.wolfe_c1 && c.wolfe_c1 < c.wolfe_c2 && c.wolfe_c2 < 1.0, ErrorCode::Config,
            "Wolfe constants must satisfy 0 < c1 < c2 < 1");
    return c;
}

nlohmann::json OptimizerConfig::to_json() const {
    return {{"iter_cap", iter_cap}, {"grad_tol", grad_tol}, {"step_tol", step_tol},
            {"wolfe_c1", wolfe_c1}, {"wolfe_c2", wolfe_c2}, {"fd_step", fd_step}};
}

OptimizationResult bfgs_minimize(const Objective &f, std::span<const double> initial,
                                 const OptimizerConfig &config) {
    const auto n = static_cast<Eigen::Index>(initial.size());
    require(n > 0, ErrorCode::InvalidArgument, "nothing to optimize");

    OptimizationResult r;
    Vec x = Eigen::Map<const Vec>(initial.data(), n);
    Vec g(n);
    auto finish = [&](StopReason reason, bool converged) {
        r.params.assign(x.data(), x.data() + n);
        r.stop_reason = reason;
        r.converged = converged;
        r.failed = reason == StopReason::NonFinite;
        return r;
    };

    double fx = f(std::span<const double>(x.data(), n), std::span<double>(g.data(), n));
    r.energy = fx;
    if (!std::isfinite(fx) || !finite(g)) {
        return finish(StopReason::NonFinite, false);
    }
    r.energy_trace.push_back(fx);
    r.grad_norm_trace.push_back(mean_square(g));

    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
    bool scaled = false;
    while (true) {
        if (g.lpNorm<Eigen::Infinity>() < config.grad_tol) {
            return finish(StopReason::Gradient, true);
        }
        if (r.iterations >= config.iter_cap) {
            return finish(StopReason::IterationCap, false);
        }
        Vec p = -hinv * g;
        double slope = g.dot(p);
        if (!(slope < 0.0)) {
            // Lost positive definiteness numerically: restart from steepest descent.
            hinv.setIdentity();
            scaled = false;
            p = -g;
            slope = -g.squaredNorm();
        }
        const double alpha0 = r.iterations == 0 ? std::min(1.0, 1.0 / g.norm()) : 1.0;

        Point start{0.0, fx, slope, g};
        Point next;
        try {
            LineSearch ls(f, x, p, config);
            if (!ls.run(start, alpha0, next)) {
                return finish(StopReason::LineSearch, false);
            }
        } catch (const NonFinite &) {
            return finish(StopReason::NonFinite, false);
        }

        const Vec s = next.alpha * p;
        const Vec y = next.g - g;
        x += s;
        fx = next.f;
        g = next.g;
        ++r.iterations;
        r.energy = fx;
        r.energy_trace.push_back(fx);
        r.grad_norm_trace.push_back(mean_square(g));

        if (s.lpNorm<Eigen::Infinity>() < config.step_tol) {
            return finish(StopReason::Step, true);
        }
        const double ys = y.dot(s);
        if (ys > 1e-14 * s.norm() * y.norm()) {
            if (!scaled) {
                hinv *= ys / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / ys;
            const Vec hy = hinv * y;
            const double yhy = y.dot(hy);
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded.
            hinv += (rho * rho * yhy + rho) * (s * s.transpose()) -
                    rho * (hy * s.transpose() + s * hy.transpose());
        }
    }
}

OptimizationResult bfgs_minimize(const CircuitSpec &circuit, const PauliSum &h,
                                 std::span<const double> initial, const OptimizerConfig &config) {
    require(initial.size() == circuit.num_params(), ErrorCode::ShapeMismatch,
            "expected " + std::to_string(circuit.num_params()) + " parameters, got " +
                std::to_string(initial.size()));
    Objective f = [&](std::span<const double> theta, std::span<double> grad) {
        return cost_and_gradient(circuit, theta, h, grad);
    };
    return bfgs_minimize(f, initial, config);
}

} // namespace qtransfer
