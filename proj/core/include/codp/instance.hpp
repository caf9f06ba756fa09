#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "codp/geometry.hpp"
#include "codp/rng.hpp"

namespace codp {

enum class ContainerKind { strip, disc };

// Container geometry. The coordinate origin sits at the container midpoint.
// For a strip the width W is fixed and the length L is the open dimension;
// for a disc the radius R is the open dimension.
struct ContainerSpec {
    ContainerKind kind = ContainerKind::strip;
    double width = 0.0;  // strip only

    static ContainerSpec strip(double w) { return {ContainerKind::strip, w}; }
    static ContainerSpec disc() { return {ContainerKind::disc, 0.0}; }
};

// Immutable problem data: circle radii sorted descending plus the container.
// The original input positions are retained so solutions can be reported in
// input order; the solver itself always works in sorted order.
class Instance {
public:
    int size() const { return static_cast<int>(radii_.size()); }
    double radius(int sorted_index) const { return radii_[sorted_index]; }
    const std::vector<double>& radii() const { return radii_; }
    const ContainerSpec& container() const { return container_; }
    double max_radius() const { return radii_.front(); }

    // Maps between sorted order and the caller's input order.
    int input_index(int sorted_index) const { return input_index_[sorted_index]; }
    int sorted_index(int input_index) const { return sorted_index_[input_index]; }

private:
    friend Instance make_instance(std::vector<double>, ContainerSpec);

    std::vector<double> radii_;
    std::vector<int> input_index_;
    std::vector<int> sorted_index_;
    ContainerSpec container_;
};

// Candidate solution: one center per circle, in the same (sorted) order as
// Instance radii, plus the open dimension (strip length L or disc radius R).
struct Layout {
    std::vector<Vec2> centers;
    double dimension = 0.0;
};

struct FeasibilityTolerance {
    double eps = 1e-10;  // largest tolerated single constraint depth
};

// Validates and sorts the input. Throws std::invalid_argument on empty
// radii, a nonpositive radius, or a strip narrower than its largest circle
// ("instance infeasible by width").
Instance make_instance(std::vector<double> radii, ContainerSpec container);

// True iff every containment and pairwise non-overlap constraint is violated
// by at most tol.eps in depth. With eps == 0 this is strict feasibility under
// exact floating-point comparison.
bool is_feasible(const Instance& inst, const Layout& lay, FeasibilityTolerance tol = {});

// Samples one center uniformly in the admissible box (strip) or disc of the
// given circle; a degenerate range collapses to the single point 0 so the
// operation stays total even below the provable minimum dimension.
Vec2 sample_center(const Instance& inst, int circle, double dimension, RandomSource& rng);

// Uniform random layout at the given open dimension. Circle/circle overlaps
// are permitted; container overlaps never occur.
Layout random_layout(const Instance& inst, double dimension, RandomSource& rng);

// Instance text format: line 1 is `strip W` or `disc`, then one radius per
// line. `#` starts a comment, blank lines are ignored.
Instance parse_instance(std::istream& in, const std::string& name = "<instance>");
Instance load_instance(const std::string& path);
std::string format_instance(const Instance& inst);

}  // namespace codp
