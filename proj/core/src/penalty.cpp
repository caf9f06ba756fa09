#include "codp/penalty.hpp"

#include <cmath>
#include <numeric>

namespace codp {

double pair_depth(Vec2 ci, double ri, Vec2 cj, double rj) {
    const double d = dist(ci, cj);
    const double depth = ri + rj - d;
    return depth > 0.0 ? depth : 0.0;
}

BorderDepths border_depths(Vec2 c, double r, double length, double width) {
    BorderDepths b;
    const double dx = r + std::abs(c.x) - 0.5 * length;
    const double dy = r + std::abs(c.y) - 0.5 * width;
    if (dx > 0.0) b.x = dx;
    if (dy > 0.0) b.y = dy;
    return b;
}

double disc_border_depth(Vec2 c, double r, double R) {
    const double depth = r + norm(c) - R;
    return depth > 0.0 ? depth : 0.0;
}

namespace {

inline double sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

EnergySummary accumulate_penalty(const Instance& inst, std::span<const Vec2> centers,
                                 double dimension, std::span<const int> active, Vec2* grad) {
    EnergySummary sum;
    const bool strip = inst.container().kind == ContainerKind::strip;
    const double width = inst.container().width;

    // Border terms. An active border term of depth O contributes 2*O along
    // the outward axis (strip) or the outward radial direction (disc).
    for (int i : active) {
        const Vec2 c = centers[i];
        const double r = inst.radius(i);
        if (strip) {
            const auto b = border_depths(c, r, dimension, width);
            sum.energy += b.x * b.x + b.y * b.y;
            if (b.x > sum.max_depth) sum.max_depth = b.x;
            if (b.y > sum.max_depth) sum.max_depth = b.y;
            if (grad != nullptr) {
                if (b.x > 0.0) grad[i].x += 2.0 * b.x * sign_of(c.x);
                if (b.y > 0.0) grad[i].y += 2.0 * b.y * sign_of(c.y);
            }
        } else {
            const double len = norm(c);
            const double depth = r + len - dimension;
            if (depth > 0.0) {
                sum.energy += depth * depth;
                if (depth > sum.max_depth) sum.max_depth = depth;
                if (grad != nullptr) {
                    if (len > 0.0) {
                        grad[i].x += 2.0 * depth * (c.x / len);
                        grad[i].y += 2.0 * depth * (c.y / len);
                    } else {
                        // Center coincides with the container center: radial
                        // direction is undefined, use the unit x-axis.
                        sum.degenerate = true;
                        grad[i].x += 2.0 * depth;
                    }
                }
            }
        }
    }

    // Pair terms. An active pair of depth O contributes -2*O*u to circle i
    // and +2*O*u to circle j, with u the unit vector from c_j to c_i.
    for (std::size_t a = 0; a < active.size(); ++a) {
        const int i = active[a];
        const Vec2 ci = centers[i];
        const double ri = inst.radius(i);
        for (std::size_t b = a + 1; b < active.size(); ++b) {
            const int j = active[b];
            const Vec2 delta = ci - centers[j];
            const double d = norm(delta);
            const double depth = ri + inst.radius(j) - d;
            if (depth <= 0.0) continue;
            sum.energy += depth * depth;
            if (depth > sum.max_depth) sum.max_depth = depth;
            if (grad != nullptr) {
                Vec2 u{1.0, 0.0};  // deterministic pseudo-direction for d == 0
                if (d > 0.0) {
                    u = {delta.x / d, delta.y / d};
                } else {
                    sum.degenerate = true;
                }
                grad[i].x -= 2.0 * depth * u.x;
                grad[i].y -= 2.0 * depth * u.y;
                grad[j].x += 2.0 * depth * u.x;
                grad[j].y += 2.0 * depth * u.y;
            } else if (d <= 0.0) {
                sum.degenerate = true;
            }
        }
    }
    return sum;
}

namespace {

std::vector<int> all_indices(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

}  // namespace

PenaltyReport evaluate(const Instance& inst, const Layout& lay, std::span<const int> active) {
    PenaltyReport rep;
    rep.grad.assign(inst.size(), Vec2{});
    const auto sum =
        accumulate_penalty(inst, lay.centers, lay.dimension, active, rep.grad.data());
    rep.energy = sum.energy;
    rep.max_depth = sum.max_depth;
    rep.degenerate = sum.degenerate;
    return rep;
}

PenaltyReport evaluate(const Instance& inst, const Layout& lay) {
    const auto idx = all_indices(inst.size());
    return evaluate(inst, lay, idx);
}

}  // namespace codp
