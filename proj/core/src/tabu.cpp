#include "codp/tabu.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

#include "codp/penalty.hpp"

namespace codp {

TabuState::TabuState(int n, int base)
    : tenure_expiry(static_cast<std::size_t>(n), 0),
      tenure_base(base),
      tenure_spread(static_cast<int>(std::lround(n / 8.0))) {}

void TabuState::record_swap(SwapMove m, RandomSource& rng) {
    tenure_expiry[m.i] = cur_iter + tenure_base + rng.uniform_int(0, tenure_spread);
    tenure_expiry[m.j] = cur_iter + tenure_base + rng.uniform_int(0, tenure_spread);
}

std::vector<SwapMove> enumerate_moves(const Instance& inst) {
    std::vector<SwapMove> moves;
    const int n = inst.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n && j - i <= 2; ++j) {
            if (inst.radius(i) != inst.radius(j)) moves.push_back({i, j});
        }
    }
    return moves;
}

Layout apply_swap(const Layout& lay, SwapMove m) {
    Layout out = lay;
    std::swap(out.centers[m.i], out.centers[m.j]);
    return out;
}

std::vector<NeighborCandidate> neighborhood(const Instance& inst, const Layout& lay,
                                            const TabuState& state, double best_energy,
                                            const TabuConfig& cfg) {
    std::vector<NeighborCandidate> out;
    for (SwapMove m : enumerate_moves(inst)) {
        PolishResult screened = polish(inst, apply_swap(lay, m), cfg.neighbor_budget);
        const bool tabu = !state.is_free(m.i) || !state.is_free(m.j);
        const bool aspirated = tabu && screened.energy < best_energy;
        if (tabu && !aspirated) continue;
        out.push_back({m, std::move(screened.layout), screened.energy, aspirated});
    }
    return out;
}

TabuResult tabu_search(const Instance& inst, const Layout& start, const TabuConfig& cfg,
                       RandomSource& rng, Deadline deadline, const TabuTraceSink& trace) {
    const double eps = cfg.feas_tol.eps;

    TabuResult res;
    res.layout = start;
    res.energy = evaluate(inst, start).energy;
    if (is_feasible(inst, start, cfg.feas_tol)) {
        res.feasible = true;
        return res;
    }

    // Continuous optimization of the incoming solution before the swap loop.
    PolishResult polished = polish(inst, start, cfg.polish_budget);
    Layout incumbent = std::move(polished.layout);
    double incumbent_energy = polished.energy;

    Layout best = incumbent;
    double best_energy = incumbent_energy;

    TabuState state(inst.size(), cfg.tenure_base);
    const bool any_moves = !enumerate_moves(inst).empty();

    int stall = 0;
    bool hit_feasible = evaluate(inst, incumbent).max_depth <= eps;
    while (any_moves && !hit_feasible && stall < cfg.stall_limit) {
        if (deadline && std::chrono::steady_clock::now() >= *deadline) break;
        ++state.cur_iter;
        res.iterations = state.cur_iter;

        auto cands = neighborhood(inst, incumbent, state, best_energy, cfg);
        if (cands.empty()) {
            // Nothing admissible this iteration; tenures keep expiring, so
            // count it as non-improving and carry on.
            ++stall;
            continue;
        }
        // Lowest energy wins; enumeration order breaks ties lexicographically.
        const NeighborCandidate* chosen = &cands.front();
        for (const auto& c : cands) {
            if (c.energy < chosen->energy) chosen = &c;
        }

        incumbent = chosen->layout;
        incumbent_energy = chosen->energy;
        state.record_swap(chosen->move, rng);

        if (incumbent_energy < best_energy) {
            best_energy = incumbent_energy;
            best = incumbent;
            stall = 0;
        } else {
            ++stall;
        }
        if (trace) {
            trace({state.cur_iter, chosen->move, incumbent_energy, best_energy,
                   static_cast<int>(cands.size())});
        }
        hit_feasible = evaluate(inst, incumbent).max_depth <= eps;
        if (hit_feasible && incumbent_energy <= best_energy) {
            best = incumbent;
            best_energy = incumbent_energy;
        }
    }

    // Full polish of the best layout seen.
    PolishResult final_polish = polish(inst, best, cfg.polish_budget);
    if (final_polish.energy <= best_energy) {
        res.layout = std::move(final_polish.layout);
        res.energy = final_polish.energy;
    } else {
        res.layout = std::move(best);
        res.energy = best_energy;
    }
    res.feasible = is_feasible(inst, res.layout, cfg.feas_tol);
    return res;
}

}  // namespace codp
