#pragma once

// Shared helpers for the test suites: independent brute-force penalty
// re-summation, a central finite-difference gradient oracle, and random
// instance/layout generators. Everything here deliberately avoids the library
// evaluation path it is used to check.

#include <cmath>
#include <vector>

#include "codp/instance.hpp"
#include "codp/penalty.hpp"
#include "codp/rng.hpp"

namespace testsupport {

// Naive re-summation of the penalty from its defining formulas; kept fully
// independent of codp::accumulate_penalty.
inline double brute_force_energy(const codp::Instance& inst, const codp::Layout& lay) {
    const int n = inst.size();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = lay.centers[i].x - lay.centers[j].x;
            const double dy = lay.centers[i].y - lay.centers[j].y;
            const double gap = inst.radius(i) + inst.radius(j) - std::sqrt(dx * dx + dy * dy);
            const double depth = gap > 0.0 ? gap : 0.0;
            total += depth * depth;
        }
    }
    for (int i = 0; i < n; ++i) {
        const double r = inst.radius(i);
        if (inst.container().kind == codp::ContainerKind::strip) {
            const double ox = r + std::fabs(lay.centers[i].x) - 0.5 * lay.dimension;
            const double oy = r + std::fabs(lay.centers[i].y) - 0.5 * inst.container().width;
            if (ox > 0.0) total += ox * ox;
            if (oy > 0.0) total += oy * oy;
        } else {
            const double len = std::sqrt(lay.centers[i].x * lay.centers[i].x +
                                         lay.centers[i].y * lay.centers[i].y);
            const double od = r + len - lay.dimension;
            if (od > 0.0) total += od * od;
        }
    }
    return total;
}

// Central finite differences of the brute-force energy.
inline std::vector<codp::Vec2> fd_gradient(const codp::Instance& inst, const codp::Layout& lay,
                                           double h = 1e-6) {
    std::vector<codp::Vec2> grad(inst.size());
    codp::Layout work = lay;
    for (int i = 0; i < inst.size(); ++i) {
        for (int axis = 0; axis < 2; ++axis) {
            double& coord = axis == 0 ? work.centers[i].x : work.centers[i].y;
            const double saved = coord;
            coord = saved + h;
            const double up = brute_force_energy(inst, work);
            coord = saved - h;
            const double down = brute_force_energy(inst, work);
            coord = saved;
            (axis == 0 ? grad[i].x : grad[i].y) = (up - down) / (2.0 * h);
        }
    }
    return grad;
}

// Uniform random strip or disc instance with radii in [0.5, 2.5].
inline codp::Instance random_instance(codp::RandomSource& rng, int n, bool disc = false) {
    std::vector<double> radii(n);
    for (double& r : radii) r = rng.uniform(0.5, 2.5);
    double max_r = 0.0;
    for (double r : radii) max_r = std::max(max_r, r);
    if (disc) return codp::make_instance(std::move(radii), codp::ContainerSpec::disc());
    const double width = rng.uniform(2.0 * max_r, 6.0 * max_r);
    return codp::make_instance(std::move(radii), codp::ContainerSpec::strip(width));
}

// A layout whose centers may or may not violate constraints: centers are
// sampled in a box slightly larger than the admissible one so border terms
// also activate.
inline codp::Layout loose_random_layout(const codp::Instance& inst, double dimension,
                                        codp::RandomSource& rng) {
    codp::Layout lay;
    lay.dimension = dimension;
    lay.centers.resize(inst.size());
    for (int i = 0; i < inst.size(); ++i) {
        const double reach = 0.6 * dimension;
        lay.centers[i] = {rng.uniform(-reach, reach), rng.uniform(-reach, reach)};
    }
    return lay;
}

// True when every penalty term is either inactive with slack >= margin or
// active with depth >= margin, and no pair of centers is close to coincident;
// finite differences are trustworthy away from these kinks.
inline bool kink_free(const codp::Instance& inst, const codp::Layout& lay, double margin) {
    const int n = inst.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = codp::dist(lay.centers[i], lay.centers[j]);
            if (d < margin) return false;
            if (std::fabs(inst.radius(i) + inst.radius(j) - d) < margin) return false;
        }
    }
    for (int i = 0; i < n; ++i) {
        const double r = inst.radius(i);
        const codp::Vec2 c = lay.centers[i];
        if (inst.container().kind == codp::ContainerKind::strip) {
            if (std::fabs(r + std::fabs(c.x) - 0.5 * lay.dimension) < margin) return false;
            if (std::fabs(r + std::fabs(c.y) - 0.5 * inst.container().width) < margin)
                return false;
            // |x| kinks matter only when the border term is active there.
            if (std::fabs(c.x) < margin && r + std::fabs(c.x) - 0.5 * lay.dimension > 0.0)
                return false;
            if (std::fabs(c.y) < margin &&
                r + std::fabs(c.y) - 0.5 * inst.container().width > 0.0)
                return false;
        } else {
            const double len = codp::norm(c);
            if (std::fabs(r + len - lay.dimension) < margin) return false;
            if (len < margin && r + len - lay.dimension > 0.0) return false;
        }
    }
    return true;
}

// Componentwise gradient agreement, relative to unit scale.
inline double max_grad_error(const std::vector<codp::Vec2>& a,
                             const std::vector<codp::Vec2>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst,
                         std::fabs(a[i].x - b[i].x) / std::max(1.0, std::fabs(a[i].x)));
        worst = std::max(worst,
                         std::fabs(a[i].y - b[i].y) / std::max(1.0, std::fabs(a[i].y)));
    }
    return worst;
}

}  // namespace testsupport
