#pragma once

#include <vector>

#include "codp/instance.hpp"
#include "codp/minimize.hpp"
#include "codp/rng.hpp"

namespace codp {

struct PerturbConfig {
    int swap_num = 0;         // 0 resolves to round(N/3), minimum 1
    int reinsert_trials = 0;  // 0 resolves to N
    double large_threshold_factor = 0.5;  // of the average radius
    int accept_stall_limit = 10;          // consecutive rejected perturbations
    MinimizerConfig step_budget = MinimizerConfig::screening();
};

// Large/small split: circle i is large iff r_i > factor * mean(r). Both sets
// hold ascending sorted indices; since radii are sorted descending, the large
// set is always a prefix.
struct Classification {
    std::vector<int> large;
    std::vector<int> small;
};
Classification classify(const Instance& inst, double factor);

// Optional record of what a perturbation did, used by tests and trace logs.
struct ReinsertRecord {
    int circle = 0;
    std::vector<double> trial_energies;
    int chosen_trial = 0;
};
struct PerturbTrace {
    bool swaps_skipped = false;  // no admissible large pair existed
    int swaps_applied = 0;
    std::vector<ReinsertRecord> reinserts;
};

// Four-step reconstruction: remove the small circles, randomly swap
// swap_num admissible large pairs (cheap polish of the large-only subproblem
// after each), then reinsert the small circles one by one in descending
// radius order, keeping the lowest-energy of reinsert_trials random trial
// placements per circle. The result is returned without a final full polish.
Layout perturb(const Instance& inst, const Layout& lay, const PerturbConfig& cfg,
               RandomSource& rng, PerturbTrace* trace = nullptr);

// Strict-improvement acceptance: true iff new_energy < old_energy.
bool accept(double old_energy, double new_energy);

int effective_swap_num(const Instance& inst, const PerturbConfig& cfg);
int effective_reinsert_trials(const Instance& inst, const PerturbConfig& cfg);

}  // namespace codp
