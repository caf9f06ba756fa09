#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "codp/harness.hpp"
#include "codp/solution_io.hpp"
#include "codp/svg.hpp"
#include "test_support.hpp"

using namespace codp;

TEST_CASE("format_plain avoids scientific notation") {
    CHECK(format_plain(1.0) == "1");
    CHECK(format_plain(-0.5) == "-0.5");
    CHECK(format_plain(2.3e-14) == "0.000000000000023");
    CHECK(format_plain(12345678901234.0) == "12345678901234");
    CHECK(format_plain(4.0001) == "4.0001");
}

TEST_CASE("solution files round-trip") {
    Solution sol;
    sol.dimension = 4.0001;
    sol.feasible = true;
    sol.centers = {{-1.00000000001, 0.0}, {1.0, 2.3e-13}};
    const std::string text = format_solution(sol);
    std::istringstream in(text);
    Solution again = parse_solution(in);
    CHECK(again.dimension == sol.dimension);
    CHECK(again.feasible == sol.feasible);
    REQUIRE(again.centers.size() == 2);
    // Writing the parsed values reproduces the file byte for byte.
    CHECK(format_solution(again) == text);
}

TEST_CASE("solution parse errors carry line numbers") {
    std::istringstream missing("feasible 1\n0 0\n");
    CHECK_THROWS_WITH_AS(parse_solution(missing, "s"), "s:1: expected `dimension <value>`",
                         std::runtime_error);
    std::istringstream bad_center("dimension 2\nfeasible 1\n0 zero\n");
    CHECK_THROWS_WITH_AS(parse_solution(bad_center, "s"), "s:3: expected `x y`",
                         std::runtime_error);
}

TEST_CASE("make_solution reports in input order and validates the serialized bytes") {
    // Input radii [1, 2]: sorted order holds the 2 first.
    Instance inst = make_instance({1.0, 2.0}, ContainerSpec::strip(4.0));
    Layout lay{{{-1.0, 0.0}, {2.0, 0.0}}, 6.0};  // sorted order: big at -1, small at 2
    Solution sol = make_solution(inst, lay, 6.0);
    CHECK(sol.centers[0] == Vec2{2.0, 0.0});   // input circle 0 has radius 1
    CHECK(sol.centers[1] == Vec2{-1.0, 0.0});  // input circle 1 has radius 2
    CHECK(sol.feasible);

    Layout back = solution_to_layout(inst, sol);
    CHECK(back.centers[0] == lay.centers[0]);
    CHECK(back.centers[1] == lay.centers[1]);

    // A layout that is feasible only with tolerance does not get the flag.
    Layout tight{{{-1.0, 1e-12}, {2.0, 0.0}}, 6.0};
    CHECK_FALSE(make_solution(inst, tight, 6.0).feasible);
}

TEST_CASE("solution_to_layout rejects mismatched instances") {
    Instance inst = make_instance({1.0, 2.0}, ContainerSpec::strip(4.0));
    Solution sol;
    sol.dimension = 5.0;
    sol.centers = {{0, 0}};
    CHECK_THROWS_AS(solution_to_layout(inst, sol), std::runtime_error);
}

TEST_CASE("svg output is deterministic and structurally sane") {
    Instance inst = make_instance({1.0}, ContainerSpec::strip(2.0));
    Solution sol = make_solution(inst, Layout{{{0.0, 0.0}}, 2.0}, 2.0);
    const std::string svg = render_svg(inst, sol);
    CHECK(svg == render_svg(inst, sol));
    // One rect for the container, exactly one circle element.
    CHECK(svg.find("<rect") != std::string::npos);
    std::size_t circles = 0;
    for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos) {
        ++circles;
    }
    CHECK(circles == 1);

    Instance disc = make_instance({1.0, 1.0}, ContainerSpec::disc());
    Solution dsol = make_solution(disc, Layout{{{-1.0, 0.0}, {1.0, 0.0}}, 2.0}, 2.0);
    const std::string dsvg = render_svg(disc, dsol);
    CHECK(dsvg.find("<rect") == std::string::npos);  // outer boundary is a circle
    std::size_t dcircles = 0;
    for (std::size_t pos = 0; (pos = dsvg.find("<circle", pos)) != std::string::npos; ++pos) {
        ++dcircles;
    }
    CHECK(dcircles == 3);  // container + 2 circles

    const std::string labeled = render_svg(disc, dsol, true);
    CHECK(labeled.find("<text") != std::string::npos);
}

TEST_CASE("time limit parsing") {
    using std::chrono::duration;
    CHECK(parse_time_limit("90").count() == 90.0);
    CHECK(parse_time_limit("90s").count() == 90.0);
    CHECK(parse_time_limit("5m").count() == 300.0);
    CHECK(parse_time_limit("30h").count() == 30.0 * 3600.0);
    CHECK(parse_time_limit("2.5s").count() == 2.5);
    CHECK_THROWS_AS(parse_time_limit(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_limit("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_time_limit("-5s"), std::invalid_argument);
}

TEST_CASE("csv rows follow the documented header") {
    SolutionRecord rec;
    rec.instance_name = "one";
    rec.n = 1;
    rec.container = "W=2";
    rec.mode = "its";
    rec.seed = 1;
    rec.dimension = 2.0;
    rec.feasible = true;
    rec.ts_launch_count = 1;
    rec.elapsed_s = 0.25;
    const std::string header(kBenchCsvHeader);
    CHECK(header.substr(0, 9) == "instance,");
    const std::string row = csv_row(rec);
    CHECK(row.find("one,1,W=2,its,1,2.0000,1,1,0,0,0.250,") == 0);
}

TEST_CASE("bench solves a tiny analytic corpus and records failures without stopping") {
    namespace fs = std::filesystem;
    const fs::path scratch = fs::temp_directory_path() / "codp_bench_corpus";
    fs::create_directories(scratch);
    for (const char* name : {"pair.txt", "stack.txt", "round.txt"}) {
        fs::copy_file(fs::path(CODP_TEST_DATA_DIR) / "corpus" / name, scratch / name,
                      fs::copy_options::overwrite_existing);
    }
    {
        std::ofstream bad(scratch / "broken.txt");
        bad << "pyramid 4\n1\n";  // malformed container header
    }

    std::ostringstream out, err;
    BenchOptions opt;
    opt.corpus_dir = scratch.string();
    opt.targets_path = std::string(CODP_TEST_DATA_DIR) + "/corpus_targets.txt";
    opt.time_limit = std::chrono::seconds(5);
    opt.seed = 1;
    opt.csv_path = (fs::temp_directory_path() / "codp_bench_corpus.csv").string();
    const int code = bench(opt, out, err);
    CHECK(code == 0);  // the harness continues past the malformed instance

    std::ifstream csv(*opt.csv_path);
    std::string line;
    std::getline(csv, line);
    CHECK(line == kBenchCsvHeader);
    int rows = 0, feasible_rows = 0, error_rows = 0;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        ++rows;
        if (line.back() != ',') ++error_rows;  // nonempty trailing error column
        if (line.find(",4.0000,1,") != std::string::npos ||
            line.find(",2.0000,1,") != std::string::npos ||
            line.find(",1.0000,1,") != std::string::npos) {
            ++feasible_rows;
        }
    }
    CHECK(rows == 4);
    CHECK(feasible_rows == 3);  // the three analytic optima, all feasible
    CHECK(error_rows == 1);     // the malformed file is recorded, not fatal
    fs::remove(*opt.csv_path);
    fs::remove_all(scratch);
}

TEST_CASE("bench on an empty corpus emits an empty table") {
    namespace fs = std::filesystem;
    const fs::path scratch = fs::temp_directory_path() / "codp_empty_corpus";
    fs::create_directories(scratch);
    std::ostringstream out, err;
    BenchOptions opt;
    opt.corpus_dir = scratch.string();
    opt.csv_path = (fs::temp_directory_path() / "codp_empty_bench.csv").string();
    const int code = bench(opt, out, err);
    CHECK(code == 0);
    CHECK(out.str().find("instance") != std::string::npos);  // header only
    std::ifstream csv(*opt.csv_path);
    std::string first_line;
    std::getline(csv, first_line);
    CHECK(first_line == kBenchCsvHeader);
    std::string rest;
    CHECK_FALSE(std::getline(csv, rest));
    fs::remove(*opt.csv_path);
}
