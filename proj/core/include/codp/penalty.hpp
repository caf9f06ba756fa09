#pragma once

#include <span>
#include <vector>

#include "codp/instance.hpp"

namespace codp {

// Energy and analytic gradient of the squared-overlap penalty. energy is the
// sum of squared constraint depths over all unordered circle pairs plus all
// border terms; it is zero exactly when the layout is feasible. max_depth is
// the largest single depth encountered, which is what feasibility tests care
// about.
struct PenaltyReport {
    double energy = 0.0;
    double max_depth = 0.0;
    bool degenerate = false;  // coincident centers with an active overlap
    std::vector<Vec2> grad;   // dE/d(center_i), sorted order, zero for inactive circles
};

// Overlap depth between two circles: max{0, r_i + r_j - |c_i - c_j|}.
double pair_depth(Vec2 ci, double ri, Vec2 cj, double rj);

// Depths against the vertical (x) and horizontal (y) strip borders:
// (max{0, r + |x| - L/2}, max{0, r + |y| - W/2}).
struct BorderDepths {
    double x = 0.0;
    double y = 0.0;
};
BorderDepths border_depths(Vec2 c, double r, double length, double width);

// Depth against a circular container of radius R: max{0, r + |c| - R}.
double disc_border_depth(Vec2 c, double r, double R);

// Full evaluation over every circle.
PenaltyReport evaluate(const Instance& inst, const Layout& lay);

// Evaluation restricted to a subset of circles (ascending sorted indices).
// Circles outside `active` contribute no terms and get zero gradient.
PenaltyReport evaluate(const Instance& inst, const Layout& lay, std::span<const int> active);

// Allocation-free core used by the optimizer: accumulates energy/max_depth
// and, when grad is non-null, adds the gradient for each active circle into
// grad[i]. grad must be zeroed by the caller and have one entry per circle.
struct EnergySummary {
    double energy = 0.0;
    double max_depth = 0.0;
    bool degenerate = false;
};
EnergySummary accumulate_penalty(const Instance& inst, std::span<const Vec2> centers,
                                 double dimension, std::span<const int> active, Vec2* grad);

}  // namespace codp
