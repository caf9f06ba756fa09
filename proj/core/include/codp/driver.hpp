#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

#include "codp/finisher.hpp"
#include "codp/instance.hpp"
#include "codp/perturb.hpp"
#include "codp/tabu.hpp"

namespace codp {

enum class SearchMode {
    its,            // tabu search + perturbation rounds + multi-start
    multistart_ts,  // tabu search relaunched from fresh random layouts only
};

struct SolverParams {
    std::optional<double> target_dimension;  // pre-set L (or R); heuristic default otherwise
    std::chrono::duration<double> time_budget = std::chrono::seconds(60);
    std::uint64_t seed = 0;
    TabuConfig tabu;
    PerturbConfig perturb;
    SearchMode mode = SearchMode::its;
    FinishConfig finish;
};

struct RunResult {
    Layout best_layout;
    double best_energy = 0.0;
    bool feasible = false;
    long long ts_launch_count = 0;
    long long perturbation_count = 0;
    long long restart_count = 0;
    std::chrono::duration<double> elapsed{0.0};
};

struct ProgressEvent {
    const char* phase = "";
    long long iteration = 0;
    double energy = 0.0;
    double elapsed_s = 0.0;
};
using ProgressSink = std::function<void(const ProgressEvent&)>;

// Heuristic pre-set of the open dimension for callers that do not supply a
// target: the area bound at packing density 0.85, floored at the largest
// circle's diameter.
double default_dimension(const Instance& inst);

// The iterated tabu search loop: random init + tabu search, then perturbation
// rounds gated by strict-improvement acceptance, with a full random restart
// after accept_stall_limit consecutive rejections; repeats until a feasible
// layout is found or the time budget runs out. In multistart_ts mode the
// perturbation loop is skipped entirely. Returns the best layout seen across
// the whole run.
RunResult solve(const Instance& inst, const SolverParams& params,
                const ProgressSink& progress = {}, const TabuTraceSink& tabu_trace = {});

struct SolveOutcome {
    RunResult run;
    Layout final_layout;
    double final_dimension = 0.0;
};

// solve() followed by post_process(), regardless of whether the search
// terminated feasible or abortive.
SolveOutcome solve_and_finish(const Instance& inst, const SolverParams& params,
                              const ProgressSink& progress = {},
                              const TabuTraceSink& tabu_trace = {});

}  // namespace codp
