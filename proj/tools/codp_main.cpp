// Command line front end for the strip / circular-container packing solver.
//
//   codp --instance sy1.txt --target-length 17.0954 --time-limit 30h --seed 7
//   codp bench corpus/ --time-limit 60s --mode both --csv results.csv
//   codp render --instance sy1.txt --solution sy1.sol --out sy1.svg

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "codp/harness.hpp"

namespace {

codp::SearchMode mode_from(const std::string& text) {
    if (text == "its") return codp::SearchMode::its;
    if (text == "multistart-ts") return codp::SearchMode::multistart_ts;
    throw CLI::ValidationError("--mode", "must be `its` or `multistart-ts`");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circle packing into a strip of open length (or a disc of open radius)"};
    app.require_subcommand(0, 1);

    // Solve options live on the main command.
    codp::RunOptions run_opt;
    std::string time_limit = "60s";
    std::string mode = "its";
    std::string container, out_path, svg_path, trace_path;
    double width = 0.0, target = 0.0;
    app.add_option("--instance", run_opt.instance_path, "instance file to solve");
    app.add_option("--container", container, "override the container kind (strip|disc)");
    app.add_option("--width", width, "override the strip width")
        ->check(CLI::PositiveNumber);
    app.add_option("--target-length", target,
                   "pre-set open dimension (strip length or disc radius)")
        ->check(CLI::PositiveNumber);
    app.add_option("--time-limit", time_limit, "time budget, e.g. 90s, 5m, 30h")
        ->capture_default_str();
    app.add_option("--seed", run_opt.seed, "random seed")->capture_default_str();
    app.add_option("--mode", mode, "search mode: its|multistart-ts")->capture_default_str();
    app.add_option("--out", out_path, "write the solution file here");
    app.add_option("--svg", svg_path, "render the final layout here");
    app.add_option("--trace", trace_path, "write JSON-lines progress events here");
    app.add_flag("--labels", run_opt.labels, "label circles by radius rank in the SVG");

    // bench subcommand.
    auto* bench_cmd = app.add_subcommand("bench", "run every instance in a directory");
    codp::BenchOptions bench_opt;
    std::string bench_time = "60s", bench_mode = "its", bench_targets, bench_csv;
    bench_cmd->add_option("corpus", bench_opt.corpus_dir, "directory of instance files")
        ->required();
    bench_cmd->add_option("--time-limit", bench_time, "per-run time budget")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_opt.seed, "random seed")->capture_default_str();
    bench_cmd->add_option("--mode", bench_mode, "its|multistart-ts|both")
        ->capture_default_str();
    bench_cmd->add_option("--targets", bench_targets,
                          "per-instance target dimensions file (`name dimension` lines)");
    bench_cmd->add_option("--csv", bench_csv, "write the results table as CSV here");

    // render subcommand.
    auto* render_cmd = app.add_subcommand("render", "render a solution file as SVG");
    std::string render_instance, render_solution, render_out;
    bool render_labels = false;
    render_cmd->add_option("--instance", render_instance, "instance file")->required();
    render_cmd->add_option("--solution", render_solution, "solution file")->required();
    render_cmd->add_option("--out", render_out, "output SVG path")->required();
    render_cmd->add_flag("--labels", render_labels, "label circles by radius rank");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench_cmd->parsed()) {
            bench_opt.time_limit = codp::parse_time_limit(bench_time);
            if (bench_mode == "both") {
                bench_opt.modes = {codp::SearchMode::its, codp::SearchMode::multistart_ts};
            } else {
                bench_opt.modes = {mode_from(bench_mode)};
            }
            if (!bench_targets.empty()) bench_opt.targets_path = bench_targets;
            if (!bench_csv.empty()) bench_opt.csv_path = bench_csv;
            return codp::bench(bench_opt, std::cout, std::cerr);
        }
        if (render_cmd->parsed()) {
            return codp::render(render_instance, render_solution, render_out, render_labels,
                                std::cerr);
        }

        if (run_opt.instance_path.empty()) {
            std::cerr << "codp: --instance is required (see --help)\n";
            return 1;
        }
        run_opt.time_limit = codp::parse_time_limit(time_limit);
        run_opt.mode = mode_from(mode);
        if (!container.empty()) run_opt.container_override = container;
        if (width > 0.0) run_opt.width_override = width;
        if (target > 0.0) run_opt.target_length = target;
        if (!out_path.empty()) run_opt.out_path = out_path;
        if (!svg_path.empty()) run_opt.svg_path = svg_path;
        if (!trace_path.empty()) run_opt.trace_path = trace_path;
        return codp::run(run_opt, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "codp: " << e.what() << "\n";
        return 1;
    }
}
