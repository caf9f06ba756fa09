#include "codp/minimize.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "codp/penalty.hpp"

namespace codp {

namespace {

double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

struct ProbePoint {
    double alpha = 0.0;
    double value = 0.0;
    double slope = 0.0;  // directional derivative along the search direction
};

// Minimizer of the Hermite cubic through two probes; falls back to bisection
// when the interpolant is degenerate or the root leaves the bracket.
double cubic_step(const ProbePoint& a, const ProbePoint& b) {
    const double span = b.alpha - a.alpha;
    const double mid = a.alpha + 0.5 * span;
    if (span == 0.0) return a.alpha;
    const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    if (!(disc >= 0.0)) return mid;
    const double d2 = std::copysign(std::sqrt(disc), span);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom == 0.0) return mid;
    double t = b.alpha - span * (b.slope + d2 - d1) / denom;
    // Keep a safeguard margin away from the bracket ends.
    const double lo = std::min(a.alpha, b.alpha);
    const double hi = std::max(a.alpha, b.alpha);
    const double margin = 0.1 * (hi - lo);
    if (!std::isfinite(t) || t < lo + margin || t > hi - margin) return mid;
    return t;
}

class LbfgsHistory {
public:
    explicit LbfgsHistory(int memory) : memory_(memory) {}

    void clear() { entries_.clear(); }

    void push(std::vector<double> s, std::vector<double> y, double sy) {
        if (static_cast<int>(entries_.size()) == memory_) {
            entries_.erase(entries_.begin());
        }
        entries_.push_back({std::move(s), std::move(y), 1.0 / sy, 0.0});
    }

    bool empty() const { return entries_.empty(); }

    // Two-loop recursion: d = -H*g with H0 = gamma*I from the newest pair.
    void direction(std::span<const double> grad, std::vector<double>& d) {
        d.assign(grad.begin(), grad.end());
        for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
            it->alpha = it->rho * dot(it->s, d);
            axpy(-it->alpha, it->y, d);
        }
        const auto& newest = entries_.back();
        const double yy = dot(newest.y, newest.y);
        const double gamma = yy > 0.0 ? 1.0 / (newest.rho * yy) : 1.0;
        for (double& x : d) x *= gamma;
        for (auto& e : entries_) {
            const double beta = e.rho * dot(e.y, d);
            axpy(e.alpha - beta, e.s, d);
        }
        for (double& x : d) x = -x;
    }

private:
    struct Entry {
        std::vector<double> s;
        std::vector<double> y;
        double rho;
        double alpha;
    };

    static void axpy(double a, std::span<const double> x, std::vector<double>& y) {
        for (std::size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
    }

    int memory_;
    std::vector<Entry> entries_;
};

}  // namespace

MinimizeResult minimize(const ObjectiveFn& objective, std::vector<double> start,
                        const MinimizerConfig& cfg) {
    const std::size_t n = start.size();
    MinimizeResult res;
    res.point = std::move(start);

    std::vector<double> grad(n);
    res.value = objective(res.point, grad);
    res.evaluations = 1;
    if (!std::isfinite(res.value) || !all_finite(grad)) {
        throw std::invalid_argument("non-finite objective");
    }

    std::vector<double> best_x = res.point;
    double best_value = res.value;

    if (max_norm(grad) <= cfg.grad_tol) {
        res.status = MinimizeStatus::converged_grad;
        return res;
    }
    if (res.value <= cfg.energy_tol) {
        res.status = MinimizeStatus::converged_energy;
        return res;
    }

    LbfgsHistory history(std::max(1, cfg.memory));
    std::vector<double> direction(n);
    std::vector<double> trial_x(n);
    std::vector<double> trial_g(n);

    const auto probe = [&](double alpha) {
        for (std::size_t k = 0; k < n; ++k) trial_x[k] = res.point[k] + alpha * direction[k];
        const double value = objective(trial_x, trial_g);
        ++res.evaluations;
        ProbePoint p;
        p.alpha = alpha;
        p.value = value;
        p.slope = std::isfinite(value) && all_finite(trial_g)
                      ? dot(trial_g, direction)
                      : std::numeric_limits<double>::quiet_NaN();
        return p;
    };

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        res.iterations = iter;

        if (history.empty()) {
            for (std::size_t k = 0; k < n; ++k) direction[k] = -grad[k];
        } else {
            history.direction(grad, direction);
        }
        double slope0 = dot(grad, direction);
        if (!(slope0 < 0.0)) {
            // Not a descent direction (stale curvature); restart from steepest
            // descent.
            history.clear();
            for (std::size_t k = 0; k < n; ++k) direction[k] = -grad[k];
            slope0 = dot(grad, direction);
            if (!(slope0 < 0.0)) {
                res.status = MinimizeStatus::converged_grad;
                return res;
            }
        }

        const double value0 = res.value;
        const double armijo = cfg.wolfe_c1 * slope0;
        const double curvature = -cfg.wolfe_c2 * slope0;
        const auto wolfe_ok = [&](const ProbePoint& p) {
            return p.value <= value0 + p.alpha * armijo && std::abs(p.slope) <= curvature;
        };

        double alpha = 1.0;
        if (history.empty()) {
            const double dnorm = std::sqrt(dot(direction, direction));
            if (dnorm > 1.0) alpha = 1.0 / dnorm;
        }

        // Bracketing phase (expand until the minimum is bracketed or Wolfe
        // holds), then a cubic-interpolation zoom.
        ProbePoint accepted;
        bool have_accepted = false;
        bool search_failed = false;
        {
            ProbePoint prev{0.0, value0, slope0};
            constexpr int kMaxExpand = 30;
            int shrink_retries = 0;
            ProbePoint lo, hi;
            bool bracketed = false;
            for (int i = 1; i <= kMaxExpand; ++i) {
                ProbePoint p = probe(alpha);
                if (!std::isfinite(p.value) || std::isnan(p.slope)) {
                    // Stepped outside the finite region: truncate and retry.
                    if (++shrink_retries > 20) {
                        search_failed = true;
                        break;
                    }
                    alpha = prev.alpha + 0.5 * (alpha - prev.alpha);
                    continue;
                }
                if (p.value > value0 + p.alpha * armijo || (i > 1 && p.value >= prev.value)) {
                    lo = prev;
                    hi = p;
                    bracketed = true;
                    break;
                }
                if (wolfe_ok(p)) {
                    accepted = p;
                    have_accepted = true;
                    break;
                }
                if (p.slope >= 0.0) {
                    lo = p;
                    hi = prev;
                    bracketed = true;
                    break;
                }
                prev = p;
                alpha *= 2.0;
                if (alpha > 1e20) {
                    search_failed = true;
                    break;
                }
            }
            if (!have_accepted && !search_failed && !bracketed) search_failed = true;

            if (bracketed && !have_accepted) {
                constexpr int kMaxZoom = 50;
                for (int j = 0; j < kMaxZoom; ++j) {
                    const double width = std::abs(hi.alpha - lo.alpha);
                    if (width <= 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
                    ProbePoint p = probe(cubic_step(lo, hi));
                    if (!std::isfinite(p.value) || std::isnan(p.slope)) {
                        hi = ProbePoint{p.alpha, std::numeric_limits<double>::infinity(), 0.0};
                        continue;
                    }
                    if (p.value > value0 + p.alpha * armijo || p.value >= lo.value) {
                        hi = p;
                    } else {
                        if (wolfe_ok(p)) {
                            accepted = p;
                            have_accepted = true;
                            break;
                        }
                        if (p.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                        lo = p;
                    }
                }
                if (!have_accepted) {
                    // The zoom collapsed; fall back to the low endpoint if it
                    // at least satisfies sufficient decrease.
                    if (lo.alpha > 0.0 && lo.value <= value0 + lo.alpha * armijo) {
                        accepted = probe(lo.alpha);
                        have_accepted = std::isfinite(accepted.value);
                    }
                    if (!have_accepted) search_failed = true;
                }
            }
        }

        if (search_failed || !have_accepted) {
            res.point = best_x;
            res.value = best_value;
            res.status = MinimizeStatus::line_search_failed;
            return res;
        }

        // One interpolation refinement when the Wolfe point is still far from
        // the line minimum. The Hermite cubic is exact on quadratic slices, so
        // this makes the search effectively exact there (and L-BFGS finitely
        // terminating on quadratics) at the cost of one extra evaluation.
        if (std::abs(accepted.slope) > 0.1 * std::abs(slope0)) {
            const std::vector<double> saved_x = trial_x;
            const std::vector<double> saved_g = trial_g;
            // Secant on the slope, exact for quadratic slices; extrapolation
            // capped when the slope is still negative at the accepted point.
            double refined_alpha = 0.0;
            const double denom = slope0 - accepted.slope;
            if (denom < 0.0) {
                refined_alpha =
                    std::min(accepted.alpha * slope0 / denom, 10.0 * accepted.alpha);
            }
            if (refined_alpha > 0.0 && refined_alpha != accepted.alpha) {
                ProbePoint refined = probe(refined_alpha);
                if (std::isfinite(refined.value) && !std::isnan(refined.slope) &&
                    refined.value <= accepted.value && wolfe_ok(refined)) {
                    accepted = refined;
                } else {
                    trial_x = saved_x;
                    trial_g = saved_g;
                }
            }
        }

        assert(accepted.value <= value0 + accepted.alpha * armijo + 1e-12 * std::abs(value0));

        // trial_x/trial_g hold the accepted probe.
        std::vector<double> s(n);
        std::vector<double> y(n);
        for (std::size_t k = 0; k < n; ++k) {
            s[k] = trial_x[k] - res.point[k];
            y[k] = trial_g[k] - grad[k];
        }
        const double sy = dot(s, y);
        res.point = trial_x;
        res.value = accepted.value;
        grad = trial_g;
        if (res.value < best_value) {
            best_value = res.value;
            best_x = res.point;
        }
        // Curvature guard: the squared-hinge objective is only piecewise C2,
        // so skip updates whose curvature is too small to be trustworthy.
        if (sy > 1e-12 * std::sqrt(dot(s, s)) * std::sqrt(dot(y, y))) {
            history.push(std::move(s), std::move(y), sy);
        }

        if (max_norm(grad) <= cfg.grad_tol) {
            res.status = MinimizeStatus::converged_grad;
            return res;
        }
        if (res.value <= cfg.energy_tol) {
            res.status = MinimizeStatus::converged_energy;
            return res;
        }
    }

    res.status = MinimizeStatus::max_iters;
    return res;
}

namespace {

std::vector<int> all_indices(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

}  // namespace

PolishResult polish(const Instance& inst, const Layout& lay, std::span<const int> active,
                    const MinimizerConfig& cfg) {
    const std::size_t m = active.size();
    PolishResult out;
    out.layout = lay;
    if (m == 0) {
        out.energy = 0.0;
        out.status = MinimizeStatus::converged_grad;
        return out;
    }

    std::vector<double> x0(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
        x0[2 * k] = lay.centers[active[k]].x;
        x0[2 * k + 1] = lay.centers[active[k]].y;
    }

    // Shared mutable workspace; minimize() calls the objective sequentially.
    struct Workspace {
        std::vector<Vec2> centers;
        std::vector<Vec2> grad;
    };
    auto ws = std::make_shared<Workspace>();
    ws->centers = lay.centers;
    ws->grad.resize(lay.centers.size());

    const double dimension = lay.dimension;
    std::vector<int> active_copy(active.begin(), active.end());
    const Instance* inst_ptr = &inst;

    ObjectiveFn objective = [ws, inst_ptr, dimension,
                             active_copy](std::span<const double> x, std::span<double> g) {
        for (std::size_t k = 0; k < active_copy.size(); ++k) {
            ws->centers[active_copy[k]] = {x[2 * k], x[2 * k + 1]};
        }
        std::fill(ws->grad.begin(), ws->grad.end(), Vec2{});
        const auto sum = accumulate_penalty(*inst_ptr, ws->centers, dimension, active_copy,
                                            ws->grad.data());
        for (std::size_t k = 0; k < active_copy.size(); ++k) {
            g[2 * k] = ws->grad[active_copy[k]].x;
            g[2 * k + 1] = ws->grad[active_copy[k]].y;
        }
        return sum.energy;
    };

    MinimizeResult res = minimize(objective, std::move(x0), cfg);
    for (std::size_t k = 0; k < m; ++k) {
        out.layout.centers[active[k]] = {res.point[2 * k], res.point[2 * k + 1]};
    }
    out.energy = res.value;
    out.status = res.status;
    return out;
}

PolishResult polish(const Instance& inst, const Layout& lay, const MinimizerConfig& cfg) {
    const auto idx = all_indices(inst.size());
    return polish(inst, lay, idx, cfg);
}

}  // namespace codp
