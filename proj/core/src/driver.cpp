#include "codp/driver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "codp/penalty.hpp"

namespace codp {

namespace {

constexpr double kDensity = 0.85;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

double default_dimension(const Instance& inst) {
    double area = 0.0;
    for (double r : inst.radii()) area += M_PI * r * r;
    const double floor_dim = 2.0 * inst.max_radius();
    if (inst.container().kind == ContainerKind::strip) {
        return std::max(area / (kDensity * inst.container().width), floor_dim);
    }
    double sq = 0.0;
    for (double r : inst.radii()) sq += r * r;
    return std::max(std::sqrt(sq / kDensity), floor_dim);
}

RunResult solve(const Instance& inst, const SolverParams& params, const ProgressSink& progress,
                const TabuTraceSink& tabu_trace) {
    if (params.time_budget <= std::chrono::duration<double>::zero()) {
        throw std::invalid_argument("time budget must be positive");
    }
    if (inst.container().kind == ContainerKind::strip &&
        inst.container().width < 2.0 * inst.max_radius()) {
        throw std::invalid_argument("instance infeasible by width");
    }

    const double dimension = params.target_dimension.value_or(default_dimension(inst));
    RandomSource rng(params.seed);
    const auto t0 = Clock::now();
    const auto deadline = t0 + std::chrono::duration_cast<Clock::duration>(params.time_budget);
    const auto out_of_time = [&] { return Clock::now() >= deadline; };
    const auto emit = [&](const char* phase, long long iteration, double energy) {
        if (progress) progress({phase, iteration, energy, seconds_since(t0)});
    };

    RunResult res;
    res.best_energy = std::numeric_limits<double>::infinity();
    const auto consider = [&](const Layout& lay, double energy) {
        if (energy < res.best_energy) {
            res.best_energy = energy;
            res.best_layout = lay;
        }
    };

    bool done = false;
    for (long long outer = 0; !done; ++outer) {
        if (outer > 0) {
            ++res.restart_count;
            emit("restart", res.restart_count, res.best_energy);
        }

        Layout incumbent = random_layout(inst, dimension, rng);
        TabuResult ts = tabu_search(inst, incumbent, params.tabu, rng, deadline, tabu_trace);
        ++res.ts_launch_count;
        consider(ts.layout, ts.energy);
        emit("tabu", res.ts_launch_count, ts.energy);
        if (ts.feasible) break;
        if (out_of_time()) break;

        if (params.mode == SearchMode::its) {
            Layout current = ts.layout;
            double current_energy = ts.energy;
            int rejected = 0;
            while (rejected < params.perturb.accept_stall_limit) {
                if (out_of_time()) {
                    done = true;
                    break;
                }
                Layout shaken = perturb(inst, current, params.perturb, rng);
                ++res.perturbation_count;
                emit("perturb", res.perturbation_count, current_energy);

                TabuResult cand = tabu_search(inst, shaken, params.tabu, rng, deadline,
                                              tabu_trace);
                ++res.ts_launch_count;
                consider(cand.layout, cand.energy);
                emit("tabu", res.ts_launch_count, cand.energy);
                if (cand.feasible) {
                    done = true;
                    break;
                }
                if (accept(current_energy, cand.energy)) {
                    current = cand.layout;
                    current_energy = cand.energy;
                    rejected = 0;
                } else {
                    ++rejected;
                }
            }
        }
        if (out_of_time()) break;
    }

    res.feasible = is_feasible(inst, res.best_layout, params.tabu.feas_tol);
    res.elapsed = std::chrono::duration<double>(Clock::now() - t0);
    emit(res.feasible ? "feasible" : "abortive", res.ts_launch_count, res.best_energy);
    return res;
}

SolveOutcome solve_and_finish(const Instance& inst, const SolverParams& params,
                              const ProgressSink& progress, const TabuTraceSink& tabu_trace) {
    SolveOutcome out;
    out.run = solve(inst, params, progress, tabu_trace);

    // Post-processing runs no matter how the search terminated; its random
    // stream is derived from the seed so the whole pipeline replays.
    RandomSource finish_rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
    FinishResult fin = post_process(inst, out.run.best_layout, params.finish, finish_rng);
    if (progress) {
        progress({"finish", fin.probes, 0.0,
                  std::chrono::duration<double>(out.run.elapsed).count()});
    }
    out.final_layout = std::move(fin.layout);
    out.final_dimension = fin.dimension;
    return out;
}

}  // namespace codp
