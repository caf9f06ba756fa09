#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "codp/instance.hpp"
#include "codp/minimize.hpp"
#include "codp/rng.hpp"

namespace codp {

// Swap of two circles adjacent in the radius-sorted order: i < j, j - i <= 2
// and r_i != r_j.
struct SwapMove {
    int i = 0;
    int j = 0;
    friend bool operator==(SwapMove a, SwapMove b) { return a.i == b.i && a.j == b.j; }
};

// Per-circle tabu tenures. Circle i is free iff tenure_expiry[i] < cur_iter.
struct TabuState {
    std::vector<long long> tenure_expiry;
    long long cur_iter = 0;
    int tenure_base = 2;    // the constant T
    int tenure_spread = 0;  // round(N/8)

    explicit TabuState(int n, int base = 2);

    bool is_free(int circle) const { return tenure_expiry[circle] < cur_iter; }

    // Marks both swapped circles tabu until cur_iter + T + rand[0, spread],
    // with an independent draw per circle.
    void record_swap(SwapMove m, RandomSource& rng);
};

struct TabuConfig {
    int stall_limit = 20;  // consecutive non-improving iterations allowed
    MinimizerConfig neighbor_budget = MinimizerConfig::screening();
    MinimizerConfig polish_budget = MinimizerConfig::full();
    FeasibilityTolerance feas_tol{};
    int tenure_base = 2;
};

struct NeighborCandidate {
    SwapMove move;
    Layout layout;  // screened (cheap-budget) polish of the swapped layout
    double energy = 0.0;
    bool aspirated = false;  // admitted through the aspiration override
};

struct TabuIterationRecord {
    long long iteration = 0;
    SwapMove move;
    double energy = 0.0;       // incumbent energy after the move
    double best_energy = 0.0;  // best energy seen in this call
    int neighborhood_size = 0;
};
using TabuTraceSink = std::function<void(const TabuIterationRecord&)>;

// All admissible swaps in lexicographic (i, j) order, no duplicates.
std::vector<SwapMove> enumerate_moves(const Instance& inst);

// Exchanges the centers of the two circles; involutive.
Layout apply_swap(const Layout& lay, SwapMove m);

// Screens every admissible swap with the cheap budget and keeps a candidate
// iff both circles are free, or its energy beats best_energy (aspiration).
std::vector<NeighborCandidate> neighborhood(const Instance& inst, const Layout& lay,
                                            const TabuState& state, double best_energy,
                                            const TabuConfig& cfg);

struct TabuResult {
    Layout layout;
    double energy = 0.0;
    long long iterations = 0;
    bool feasible = false;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// The tabu search procedure: full polish of the start, then iterate moving to
// the best neighborhood member with tenure bookkeeping, until feasibility,
// stall_limit non-improving iterations, or the deadline. Returns the best
// layout seen, polished with the full budget.
TabuResult tabu_search(const Instance& inst, const Layout& start, const TabuConfig& cfg,
                       RandomSource& rng, Deadline deadline = {},
                       const TabuTraceSink& trace = {});

}  // namespace codp
