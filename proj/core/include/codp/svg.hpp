#pragma once

#include <string>

#include "codp/instance.hpp"
#include "codp/solution_io.hpp"

namespace codp {

// Renders the container outline and all circles to scale. Output bytes are
// deterministic for identical input. With labels, each circle carries its
// radius rank (1 = largest). Throws on a solution/instance mismatch.
std::string render_svg(const Instance& inst, const Solution& sol, bool labels = false);

}  // namespace codp
