#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "codp/driver.hpp"
#include "codp/penalty.hpp"
#include "test_support.hpp"

using namespace codp;
using namespace std::chrono_literals;

TEST_CASE("default_dimension follows the density heuristic") {
    Instance one = make_instance({1.0}, ContainerSpec::strip(2.0));
    CHECK(default_dimension(one) == doctest::Approx(std::max(M_PI / 1.7, 2.0)));
    CHECK(default_dimension(one) == 2.0);

    Instance two = make_instance({1.0, 1.0}, ContainerSpec::strip(2.0));
    CHECK(default_dimension(two) == doctest::Approx(2.0 * M_PI / 1.7));

    Instance disc = make_instance({1.0}, ContainerSpec::disc());
    CHECK(default_dimension(disc) == doctest::Approx(std::max(std::sqrt(1.0 / 0.85), 2.0)));
    CHECK(default_dimension(disc) == 2.0);
}

TEST_CASE("a single circle at its optimum is solved by the first tabu search") {
    Instance inst = make_instance({1.0}, ContainerSpec::strip(2.0));
    SolverParams params;
    params.target_dimension = 2.0;
    params.time_budget = 10s;
    params.seed = 1;
    auto res = solve(inst, params);
    CHECK(res.feasible);
    CHECK(res.ts_launch_count == 1);
    CHECK(res.restart_count == 0);
}

TEST_CASE("two touching circles in a tight strip") {
    Instance inst = make_instance({1.0, 1.0}, ContainerSpec::strip(2.0));
    SolverParams params;
    params.target_dimension = 4.0;
    params.time_budget = 20s;
    params.seed = 3;
    auto res = solve(inst, params);
    CHECK(res.feasible);
    // Up to symmetry the only packing is a row at (+-1, 0).
    CHECK(std::abs(res.best_layout.centers[0].x) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(res.best_layout.centers[1].x) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.best_layout.centers[0].x * res.best_layout.centers[1].x < 0.0);
    CHECK(std::abs(res.best_layout.centers[0].y) <= 1e-6);
}

TEST_CASE("an infeasible target runs out its budget with restarts") {
    Instance inst = make_instance({1.0, 1.0}, ContainerSpec::strip(2.0));
    SolverParams params;
    params.target_dimension = 3.9;  // the row needs 4.0, the area bound forbids less
    params.time_budget = 2s;
    params.seed = 5;
    auto res = solve(inst, params);
    CHECK_FALSE(res.feasible);
    CHECK(res.restart_count >= 1);
    CHECK(res.ts_launch_count >= res.restart_count + 1);
    CHECK(res.elapsed <= params.time_budget + 5s);
}

TEST_CASE("multistart mode launches exactly one tabu search per restart") {
    Instance inst = make_instance({1.0, 1.0}, ContainerSpec::strip(2.0));
    SolverParams params;
    params.target_dimension = 3.9;
    params.time_budget = 1500ms;
    params.seed = 7;
    params.mode = SearchMode::multistart_ts;
    auto res = solve(inst, params);
    CHECK_FALSE(res.feasible);
    CHECK(res.perturbation_count == 0);
    CHECK(res.ts_launch_count == res.restart_count + 1);
}

TEST_CASE("solve is deterministic apart from wall-clock fields") {
    Instance inst = make_instance({1.2, 1.0, 0.8}, ContainerSpec::strip(3.0));
    SolverParams params;
    params.target_dimension = 6.0;
    params.time_budget = 30s;  // finishes by feasibility well before this
    params.seed = 11;
    auto a = solve(inst, params);
    auto b = solve(inst, params);
    CHECK(a.feasible == b.feasible);
    CHECK(a.best_energy == b.best_energy);
    CHECK(a.ts_launch_count == b.ts_launch_count);
    CHECK(a.perturbation_count == b.perturbation_count);
    CHECK(a.restart_count == b.restart_count);
    for (int i = 0; i < inst.size(); ++i) {
        CHECK(a.best_layout.centers[i] == b.best_layout.centers[i]);
    }
}

TEST_CASE("solve validates its inputs") {
    Instance inst = make_instance({1.0}, ContainerSpec::strip(2.0));
    SolverParams params;
    params.time_budget = 0s;
    CHECK_THROWS_AS(solve(inst, params), std::invalid_argument);
}

TEST_CASE("progress events cover the run phases") {
    Instance inst = make_instance({1.0}, ContainerSpec::strip(2.0));
    SolverParams params;
    params.target_dimension = 2.0;
    params.time_budget = 10s;
    std::vector<std::string> phases;
    solve(inst, params, [&](const ProgressEvent& ev) { phases.push_back(ev.phase); });
    REQUIRE(!phases.empty());
    CHECK(phases.front() == "tabu");
    CHECK(phases.back() == "feasible");
}

TEST_CASE("solve_and_finish lands on the analytic optima") {
    SolverParams params;
    params.time_budget = 20s;
    params.seed = 13;

    {
        Instance inst = make_instance({1.0}, ContainerSpec::strip(2.0));
        params.target_dimension = 2.5;
        auto out = solve_and_finish(inst, params);
        CHECK(round_report(out.final_dimension, out.final_layout, inst) == 2.0);
    }
    {
        Instance inst = make_instance({1.0, 1.0}, ContainerSpec::strip(2.0));
        params.target_dimension = 4.2;
        auto out = solve_and_finish(inst, params);
        CHECK(round_report(out.final_dimension, out.final_layout, inst) == 4.0);
    }
    {
        Instance inst = make_instance({1.0, 1.0}, ContainerSpec::strip(4.0));
        params.target_dimension = 2.2;
        auto out = solve_and_finish(inst, params);
        CHECK(round_report(out.final_dimension, out.final_layout, inst) == 2.0);
    }
}
