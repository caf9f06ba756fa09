#pragma once

#include <functional>
#include <span>
#include <vector>

#include "codp/instance.hpp"

namespace codp {

struct MinimizerConfig {
    int memory = 7;             // L-BFGS history pairs
    int max_iters = 500;
    double grad_tol = 1e-10;    // stop when the gradient max-norm drops below
    double energy_tol = 1e-22;  // stop when the value drops this low
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;

    // Full polish of an accepted solution.
    static MinimizerConfig full() { return {}; }
    // Cheap screening of neighborhood candidates.
    static MinimizerConfig screening() {
        MinimizerConfig cfg;
        cfg.max_iters = 50;
        return cfg;
    }
    // Post-processing runs that must reach an exact zero of the penalty:
    // both tolerances are zero so the search only stops at a true zero, the
    // iteration cap, or a failed line search.
    static MinimizerConfig exact() {
        MinimizerConfig cfg;
        cfg.max_iters = 200;
        cfg.grad_tol = 0.0;
        cfg.energy_tol = 0.0;
        return cfg;
    }
};

enum class MinimizeStatus {
    converged_grad,
    converged_energy,
    max_iters,
    line_search_failed,
};

struct MinimizeResult {
    std::vector<double> point;
    double value = 0.0;
    MinimizeStatus status = MinimizeStatus::max_iters;
    int iterations = 0;
    int evaluations = 0;
};

// Objective callback: writes the gradient into `grad` (same length as the
// point) and returns the value.
using ObjectiveFn = std::function<double(std::span<const double>, std::span<double>)>;

// Limited-memory BFGS with a strong-Wolfe cubic-interpolation line search.
// The returned value never exceeds the value at `start`; on a failed line
// search the best point seen so far is returned. Throws
// std::invalid_argument("non-finite objective") when the start point does not
// evaluate to a finite value and gradient.
MinimizeResult minimize(const ObjectiveFn& objective, std::vector<double> start,
                        const MinimizerConfig& cfg);

struct PolishResult {
    Layout layout;
    double energy = 0.0;
    MinimizeStatus status = MinimizeStatus::max_iters;
};

// Minimizes the penalty over the center coordinates at fixed dimension.
PolishResult polish(const Instance& inst, const Layout& lay, const MinimizerConfig& cfg);

// Same, but only the circles in `active` (ascending sorted indices) move and
// contribute penalty terms; all other centers are carried through untouched.
PolishResult polish(const Instance& inst, const Layout& lay, std::span<const int> active,
                    const MinimizerConfig& cfg);

}  // namespace codp
