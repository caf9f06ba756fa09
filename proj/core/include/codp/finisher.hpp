#pragma once

#include "codp/instance.hpp"
#include "codp/minimize.hpp"
#include "codp/rng.hpp"
#include "codp/tabu.hpp"

namespace codp {

struct FinishConfig {
    double bracket_c = 1.0;        // initial half-width of the bisection bracket
    double bisect_tol = 1e-4;      // stop when upper - lower drops below
    double inflate_step = 1e-5;    // dimension increment of the inflation loop
    int report_decimals = 4;
    int max_bracket_doublings = 4;
    double snap_tol = 1e-9;        // active-constraint snapping window
    TabuConfig probe;              // per-probe tabu search, reduced stall limit
    MinimizerConfig exact_polish = MinimizerConfig::exact();

    FinishConfig() { probe.stall_limit = 5; }
};

struct FinishResult {
    Layout layout;
    double dimension = 0.0;
    int probes = 0;            // bisection tabu-search probes
    int inflation_steps = 0;
    bool grid_certified = false;  // dimension lies on the reporting grid
};

// Post-processing: bisection on the open dimension around the incoming
// solution (each probe re-optimized by tabu search from the carried centers),
// then inflation by inflate_step until the layout is strictly feasible under
// exact floating-point comparison, then an attempt to certify a strictly
// feasible layout at the smallest attainable reporting-grid value. Throws
// when even the doubled upper bracket cannot reach feasibility.
FinishResult post_process(const Instance& inst, const Layout& lay, const FinishConfig& cfg,
                          RandomSource& rng);

// Reporting rule: the smallest value with `decimals` digits after the point
// that is >= dimension; the layout stays strictly feasible there because
// growing the open dimension only loosens constraints.
double round_report(double dimension, const Layout& lay, const Instance& inst,
                    int decimals = 4);

}  // namespace codp
