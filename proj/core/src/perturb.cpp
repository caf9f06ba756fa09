#include "codp/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "codp/penalty.hpp"
#include "codp/tabu.hpp"

namespace codp {

Classification classify(const Instance& inst, double factor) {
    const double avg =
        std::accumulate(inst.radii().begin(), inst.radii().end(), 0.0) / inst.size();
    const double threshold = factor * avg;
    Classification cls;
    for (int i = 0; i < inst.size(); ++i) {
        (inst.radius(i) > threshold ? cls.large : cls.small).push_back(i);
    }
    return cls;
}

int effective_swap_num(const Instance& inst, const PerturbConfig& cfg) {
    if (cfg.swap_num > 0) return cfg.swap_num;
    return std::max(1, static_cast<int>(std::lround(inst.size() / 3.0)));
}

int effective_reinsert_trials(const Instance& inst, const PerturbConfig& cfg) {
    if (cfg.reinsert_trials > 0) return cfg.reinsert_trials;
    return inst.size();
}

Layout perturb(const Instance& inst, const Layout& lay, const PerturbConfig& cfg,
               RandomSource& rng, PerturbTrace* trace) {
    const Classification cls = classify(inst, cfg.large_threshold_factor);
    Layout work = lay;

    // The large set is a prefix of the sorted order, so the similar-radius
    // rule restricted to large circles is just the move list cut off there.
    const int large_count = static_cast<int>(cls.large.size());
    std::vector<SwapMove> pool;
    for (SwapMove m : enumerate_moves(inst)) {
        if (m.j < large_count) pool.push_back(m);
    }

    std::vector<int> active = cls.large;

    if (pool.empty()) {
        if (trace) trace->swaps_skipped = true;
    } else {
        const int swaps = effective_swap_num(inst, cfg);
        for (int s = 0; s < swaps; ++s) {
            const SwapMove m = pool[rng.uniform_int(0, static_cast<int>(pool.size()) - 1)];
            work = apply_swap(work, m);
            work = polish(inst, work, active, cfg.step_budget).layout;
            if (trace) ++trace->swaps_applied;
        }
    }

    // Reinsert the removed small circles, largest first. Each circle tries
    // reinsert_trials random positions; energy is measured on the partial
    // layout (placed circles only) and the best trial is kept, earliest
    // trial winning ties.
    const int trials = effective_reinsert_trials(inst, cfg);
    for (int s : cls.small) {
        active.push_back(s);
        ReinsertRecord record;
        record.circle = s;

        Layout best_layout = work;
        double best_energy = 0.0;
        int best_trial = -1;
        for (int t = 0; t < trials; ++t) {
            work.centers[s] = sample_center(inst, s, work.dimension, rng);
            PolishResult trial = polish(inst, work, active, cfg.step_budget);
            if (trace) record.trial_energies.push_back(trial.energy);
            if (best_trial < 0 || trial.energy < best_energy) {
                best_trial = t;
                best_energy = trial.energy;
                best_layout = std::move(trial.layout);
            }
        }
        work = std::move(best_layout);
        if (trace) {
            record.chosen_trial = best_trial;
            trace->reinserts.push_back(std::move(record));
        }
    }
    return work;
}

bool accept(double old_energy, double new_energy) { return new_energy < old_energy; }

}  // namespace codp
