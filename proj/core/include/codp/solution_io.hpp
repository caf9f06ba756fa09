#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "codp/instance.hpp"

namespace codp {

// A solution as reported to the user: centers in the original input order.
// File format: line 1 `dimension <value>`, line 2 `feasible <0|1>`, then one
// `x y` line per circle, plain decimal with 12 significant digits.
struct Solution {
    double dimension = 0.0;
    bool feasible = false;
    std::vector<Vec2> centers;  // input order
};

// Formats a double in plain decimal (never scientific) with the given number
// of significant digits.
std::string format_plain(double v, int significant = 12);

std::string format_solution(const Solution& sol);
Solution parse_solution(std::istream& in, const std::string& name = "<solution>");
Solution load_solution(const std::string& path);
void save_solution(const std::string& path, const Solution& sol);

// Builds the reportable solution for a layout at the reported dimension. The
// feasible flag describes the serialized values: it is set only when the
// coordinates as written to the file re-validate strictly feasible, so a
// reader of the file can trust it at zero tolerance.
Solution make_solution(const Instance& inst, const Layout& lay, double reported_dimension);

// Reorders a solution back into the solver's sorted order. Throws when the
// circle count does not match the instance.
Layout solution_to_layout(const Instance& inst, const Solution& sol);

}  // namespace codp
