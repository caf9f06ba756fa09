#include "codp/finisher.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "codp/penalty.hpp"

namespace codp {

namespace {

const FeasibilityTolerance kStrict{0.0};

bool strictly_feasible(const Instance& inst, const Layout& lay) {
    return is_feasible(inst, lay, kStrict);
}

double ceil_to_decimals(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::ceil(v * scale) / scale;
}

// Projects near-active constraints onto exact activity: coordinates within
// snap_tol of zero or of the container boundary are moved onto it. Callers
// must re-verify strict feasibility afterwards; the projection is only kept
// when that verification succeeds.
Layout snap_active_constraints(const Instance& inst, const Layout& lay, double snap_tol) {
    Layout out = lay;
    const double tol = snap_tol * std::max(1.0, std::abs(lay.dimension));
    for (int i = 0; i < inst.size(); ++i) {
        Vec2& c = out.centers[i];
        const double r = inst.radius(i);
        if (std::abs(c.x) <= tol) c.x = 0.0;
        if (std::abs(c.y) <= tol) c.y = 0.0;
        if (inst.container().kind == ContainerKind::strip) {
            const double tx = 0.5 * lay.dimension - r;
            const double ty = 0.5 * inst.container().width - r;
            if (tx >= 0.0 && std::abs(std::abs(c.x) - tx) <= tol) c.x = std::copysign(tx, c.x);
            if (ty >= 0.0 && std::abs(std::abs(c.y) - ty) <= tol) c.y = std::copysign(ty, c.y);
        } else {
            const double reach = lay.dimension - r;
            const double len = norm(c);
            if (reach >= 0.0 && len > 0.0 && std::abs(len - reach) <= tol) {
                const double s = reach / len;
                c = {s * c.x, s * c.y};
            }
        }
    }
    return out;
}

// The disc container is rotation invariant; aligning the largest off-center
// circle with the +x axis turns near-boundary centers into near-axis ones
// that the coordinate snap can then make exact.
Layout gauge_rotate(const Instance& inst, const Layout& lay) {
    Layout out = lay;
    for (int i = 0; i < inst.size(); ++i) {
        const Vec2 c = lay.centers[i];
        const double len = norm(c);
        if (len > 1e-12) {
            const double cos_t = c.x / len;
            const double sin_t = -c.y / len;
            for (Vec2& p : out.centers) {
                p = {p.x * cos_t - p.y * sin_t, p.x * sin_t + p.y * cos_t};
            }
            break;
        }
    }
    return out;
}

// Tries to certify strict feasibility of `lay` as-is, then after snapping
// near-active constraints (and, for discs, after a gauge rotation). On
// success `lay` holds the certified variant.
bool certify_strict(const Instance& inst, Layout& lay, double snap_tol) {
    if (strictly_feasible(inst, lay)) return true;
    Layout snapped = snap_active_constraints(inst, lay, snap_tol);
    if (strictly_feasible(inst, snapped)) {
        lay = std::move(snapped);
        return true;
    }
    if (inst.container().kind == ContainerKind::disc) {
        Layout rotated = snap_active_constraints(inst, gauge_rotate(inst, lay), snap_tol);
        if (strictly_feasible(inst, rotated)) {
            lay = std::move(rotated);
            return true;
        }
    }
    return false;
}

// True when a strictly feasible layout at dimension `g` was certified into
// `result`. Starting point is `from` re-dimensioned to g.
bool certify_at(const Instance& inst, const Layout& from, double g, const FinishConfig& cfg,
                Layout& result) {
    Layout candidate = from;
    candidate.dimension = g;
    if (certify_strict(inst, candidate, cfg.snap_tol)) {
        result = std::move(candidate);
        return true;
    }
    candidate = polish(inst, candidate, cfg.exact_polish).layout;
    if (certify_strict(inst, candidate, cfg.snap_tol)) {
        result = std::move(candidate);
        return true;
    }
    return false;
}

}  // namespace

FinishResult post_process(const Instance& inst, const Layout& lay, const FinishConfig& cfg,
                          RandomSource& rng) {
    FinishResult res;

    // Certify the upper bracket first; without a feasible upper end the
    // bisection has nothing to shrink towards.
    double c_upper = cfg.bracket_c;
    double upper = lay.dimension + c_upper;
    Layout upper_layout;
    bool upper_ok = false;
    for (int attempt = 0; attempt <= cfg.max_bracket_doublings; ++attempt) {
        upper = lay.dimension + c_upper;
        Layout probe_start = lay;
        probe_start.dimension = upper;
        TabuResult probe = tabu_search(inst, probe_start, cfg.probe, rng);
        ++res.probes;
        if (probe.feasible) {
            upper_layout = std::move(probe.layout);
            upper_ok = true;
            break;
        }
        c_upper *= 2.0;
    }
    if (!upper_ok) {
        throw std::runtime_error(
            "post-process: no feasible solution within the upper bracket after " +
            std::to_string(cfg.max_bracket_doublings) + " doublings (dimension " +
            std::to_string(lay.dimension) + " + " + std::to_string(c_upper / 2.0) + ")");
    }

    double lower = std::max(lay.dimension - cfg.bracket_c, 1e-12);

    // Dichotomy on the open dimension; the centers carry through the probes.
    Layout current = lay;
    double probe_dim = upper;
    while (upper - lower >= cfg.bisect_tol) {
        probe_dim = 0.5 * (upper + lower);
        Layout probe_start = current;
        probe_start.dimension = probe_dim;
        TabuResult probe = tabu_search(inst, probe_start, cfg.probe, rng);
        ++res.probes;
        current = probe.layout;
        if (probe.feasible) {
            upper = probe_dim;
            upper_layout = current;
        } else {
            lower = probe_dim;
        }
    }

    // Inflation: grow the dimension in fixed steps, polishing after each,
    // until every constraint holds under exact floating-point comparison
    // (possibly after the verify-gated snap).
    Layout inflated = current;
    inflated.dimension = probe_dim;
    bool switched_to_upper = false;
    while (!certify_strict(inst, inflated, cfg.snap_tol)) {
        inflated.dimension += cfg.inflate_step;
        ++res.inflation_steps;
        inflated = polish(inst, inflated, cfg.exact_polish).layout;
        if (!switched_to_upper && inflated.dimension > upper + cfg.bisect_tol) {
            // The carried centers failed to certify even past the dimension
            // where the upper probe succeeded; they are likely stuck in the
            // wrong arrangement. Restart the inflation from that probe.
            inflated.centers = upper_layout.centers;
            switched_to_upper = true;
        } else if (inflated.dimension > upper + cfg.bracket_c) {
            throw std::runtime_error("post-process: inflation failed to certify feasibility");
        }
    }

    // Grid refinement: the bisection localizes the attainable dimension to
    // less than one reporting-grid step, so try to certify a strictly
    // feasible layout at each grid value in the bracket, smallest first.
    const double scale = std::pow(10.0, cfg.report_decimals);
    const auto grid_index = [&](double v) { return std::ceil(v * scale); };
    int attempts = 0;
    for (double gi = grid_index(lower); gi <= grid_index(inflated.dimension); gi += 1.0) {
        const double g = gi / scale;
        if (g >= inflated.dimension) break;  // fallback already at least this good
        if (++attempts > 64) break;          // bounded even when inflation drifted far
        Layout certified;
        if (certify_at(inst, inflated, g, cfg, certified)) {
            res.layout = std::move(certified);
            res.dimension = g;
            res.grid_certified = true;
            return res;
        }
    }

    res.layout = std::move(inflated);
    res.dimension = res.layout.dimension;
    return res;
}

double round_report(double dimension, const Layout& lay, const Instance& inst, int decimals) {
    const double reported = ceil_to_decimals(dimension, decimals);
    // Growing the open dimension only loosens constraints, so feasibility at
    // `dimension` implies feasibility at the reported value.
    assert([&] {
        Layout at_reported = lay;
        at_reported.dimension = reported;
        return !is_feasible(inst, lay, kStrict) || is_feasible(inst, at_reported, kStrict);
    }());
    return reported;
}

}  // namespace codp
