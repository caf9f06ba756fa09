#include "codp/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "codp/penalty.hpp"
#include "codp/solution_io.hpp"
#include "codp/svg.hpp"

namespace codp {

namespace fs = std::filesystem;

std::chrono::duration<double> parse_time_limit(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty time limit");
    double scale = 1.0;
    std::string digits = text;
    switch (text.back()) {
        case 's': scale = 1.0; digits.pop_back(); break;
        case 'm': scale = 60.0; digits.pop_back(); break;
        case 'h': scale = 3600.0; digits.pop_back(); break;
        default: break;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(digits, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad time limit `" + text + "`");
    }
    if (used != digits.size() || !(value > 0.0)) {
        throw std::invalid_argument("bad time limit `" + text + "`");
    }
    return std::chrono::duration<double>(value * scale);
}

std::string format_dimension(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string summary_line(const SolutionRecord& rec) {
    std::ostringstream out;
    if (!rec.error.empty()) {
        out << rec.instance_name << ": error: " << rec.error;
        return out.str();
    }
    out << rec.instance_name << ": N=" << rec.n << " " << rec.container << " L="
        << format_dimension(rec.dimension) << " " << (rec.feasible ? "feasible" : "abortive")
        << " seed=" << rec.seed << " mode=" << rec.mode << " ts=" << rec.ts_launch_count
        << " perturbs=" << rec.perturbation_count << " restarts=" << rec.restart_count
        << " elapsed=" << format_dimension(rec.elapsed_s, 1) << "s";
    return out.str();
}

namespace {

Instance load_with_overrides(const RunOptions& opt) {
    Instance inst = load_instance(opt.instance_path);
    if (!opt.container_override && !opt.width_override) return inst;

    ContainerSpec container = inst.container();
    if (opt.container_override) {
        if (*opt.container_override == "strip") {
            container.kind = ContainerKind::strip;
        } else if (*opt.container_override == "disc") {
            container = ContainerSpec::disc();
        } else {
            throw std::invalid_argument("container must be `strip` or `disc`");
        }
    }
    if (opt.width_override) container.width = *opt.width_override;
    if (container.kind == ContainerKind::strip && !(container.width > 0.0)) {
        throw std::invalid_argument("strip container needs --width");
    }

    std::vector<double> radii(inst.size());
    for (int s = 0; s < inst.size(); ++s) radii[inst.input_index(s)] = inst.radius(s);
    return make_instance(std::move(radii), container);
}

std::string container_text(const Instance& inst) {
    if (inst.container().kind == ContainerKind::disc) return "disc";
    char buf[64];
    std::snprintf(buf, sizeof buf, "W=%g", inst.container().width);
    return buf;
}

const char* mode_name(SearchMode m) {
    return m == SearchMode::its ? "its" : "multistart-ts";
}

SolverParams params_from(const RunOptions& opt) {
    SolverParams params;
    params.target_dimension = opt.target_length;
    params.time_budget = opt.time_limit;
    params.seed = opt.seed;
    params.mode = opt.mode;
    return params;
}

SolutionRecord execute(const Instance& inst, const std::string& name, const RunOptions& opt,
                       Solution* solution_out, const ProgressSink& progress,
                       const TabuTraceSink& tabu_trace = {}) {
    SolutionRecord rec;
    rec.instance_name = name;
    rec.n = inst.size();
    rec.container = container_text(inst);
    rec.mode = mode_name(opt.mode);
    rec.seed = opt.seed;

    SolveOutcome outcome = solve_and_finish(inst, params_from(opt), progress, tabu_trace);
    const double reported =
        round_report(outcome.final_dimension, outcome.final_layout, inst);
    Solution sol = make_solution(inst, outcome.final_layout, reported);

    rec.dimension = reported;
    rec.elapsed_s = outcome.run.elapsed.count();
    rec.ts_launch_count = outcome.run.ts_launch_count;
    rec.perturbation_count = outcome.run.perturbation_count;
    rec.restart_count = outcome.run.restart_count;
    rec.feasible = sol.feasible;
    if (solution_out) *solution_out = std::move(sol);
    return rec;
}

}  // namespace

int run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    std::optional<Instance> inst;
    try {
        inst = load_with_overrides(opt);
    } catch (const std::exception& e) {
        err << "codp: " << e.what() << "\n";
        return 1;
    }

    std::ofstream trace_file;
    ProgressSink progress;
    TabuTraceSink tabu_trace;
    const auto trace_t0 = std::chrono::steady_clock::now();
    if (opt.trace_path) {
        trace_file.open(*opt.trace_path, std::ios::binary);
        if (!trace_file) {
            err << "codp: cannot write " << *opt.trace_path << "\n";
            return 1;
        }
        progress = [&trace_file](const ProgressEvent& ev) {
            nlohmann::json rec{{"phase", ev.phase},
                               {"iteration", ev.iteration},
                               {"energy", ev.energy},
                               {"elapsed", ev.elapsed_s}};
            trace_file << rec.dump() << "\n";
        };
        tabu_trace = [&trace_file, trace_t0](const TabuIterationRecord& r) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - trace_t0)
                    .count();
            nlohmann::json rec{{"phase", "tabu-iter"}, {"iteration", r.iteration},
                               {"energy", r.energy},  {"best_energy", r.best_energy},
                               {"move_i", r.move.i},  {"move_j", r.move.j},
                               {"elapsed", elapsed}};
            trace_file << rec.dump() << "\n";
        };
    }

    const std::string name = fs::path(opt.instance_path).stem().string();
    try {
        Solution sol;
        SolutionRecord rec = execute(*inst, name, opt, &sol, progress, tabu_trace);
        if (opt.out_path) save_solution(*opt.out_path, sol);
        if (opt.svg_path) {
            std::ofstream svg(*opt.svg_path, std::ios::binary);
            if (!svg) {
                err << "codp: cannot write " << *opt.svg_path << "\n";
                return 1;
            }
            svg << render_svg(*inst, sol, opt.labels);
        }
        out << summary_line(rec) << "\n";
        return rec.feasible ? 0 : 2;
    } catch (const std::exception& e) {
        err << "codp: " << name << ": " << e.what() << "\n";
        return 2;
    }
}

const char* const kBenchCsvHeader =
    "instance,n,container,mode,seed,dimension,feasible,ts_launches,perturbations,restarts,"
    "elapsed_s,error";

std::string csv_row(const SolutionRecord& rec) {
    std::ostringstream out;
    out << rec.instance_name << "," << rec.n << "," << rec.container << "," << rec.mode << ","
        << rec.seed << "," << format_dimension(rec.dimension) << "," << (rec.feasible ? 1 : 0)
        << "," << rec.ts_launch_count << "," << rec.perturbation_count << ","
        << rec.restart_count << "," << format_dimension(rec.elapsed_s, 3) << "," << rec.error;
    return out.str();
}

int bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files;
    try {
        for (const auto& entry : fs::directory_iterator(opt.corpus_dir)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
    } catch (const fs::filesystem_error& e) {
        err << "codp: " << e.what() << "\n";
        return 1;
    }
    std::sort(files.begin(), files.end());

    std::map<std::string, double> targets;
    if (opt.targets_path) {
        std::ifstream tf(*opt.targets_path);
        if (!tf) {
            err << "codp: cannot open " << *opt.targets_path << "\n";
            return 1;
        }
        std::string line;
        while (std::getline(tf, line)) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string name;
            double dim = 0.0;
            if (ls >> name >> dim) targets[name] = dim;
        }
    }

    std::vector<SolutionRecord> rows;
    for (const fs::path& file : files) {
        const std::string name = file.stem().string();
        for (SearchMode mode : opt.modes) {
            RunOptions ro;
            ro.instance_path = file.string();
            ro.time_limit = opt.time_limit;
            ro.seed = opt.seed;
            ro.mode = mode;
            if (auto it = targets.find(name); it != targets.end()) {
                ro.target_length = it->second;
            }
            SolutionRecord rec;
            try {
                Instance inst = load_instance(file.string());
                rec = execute(inst, name, ro, nullptr, {});
            } catch (const std::exception& e) {
                rec.instance_name = name;
                rec.mode = mode_name(mode);
                rec.seed = opt.seed;
                rec.error = e.what();
            }
            rows.push_back(std::move(rec));
            err << summary_line(rows.back()) << "\n";
        }
    }

    // Human-readable table.
    out << "instance          mode           L           TS      t_total\n";
    for (const auto& rec : rows) {
        char buf[160];
        if (rec.error.empty()) {
            std::snprintf(buf, sizeof buf, "%-17s %-13s %-11s %-8lld %.1fs",
                          rec.instance_name.c_str(), rec.mode.c_str(),
                          format_dimension(rec.dimension).c_str(), rec.ts_launch_count,
                          rec.elapsed_s);
        } else {
            std::snprintf(buf, sizeof buf, "%-17s %-13s error: %s", rec.instance_name.c_str(),
                          rec.mode.c_str(), rec.error.c_str());
        }
        out << buf << "\n";
    }

    if (opt.csv_path) {
        std::ofstream csv(*opt.csv_path, std::ios::binary);
        if (!csv) {
            err << "codp: cannot write " << *opt.csv_path << "\n";
            return 1;
        }
        csv << kBenchCsvHeader << "\n";
        for (const auto& rec : rows) csv << csv_row(rec) << "\n";
    }
    return 0;
}

int render(const std::string& instance_path, const std::string& solution_path,
           const std::string& out_path, bool labels, std::ostream& err) {
    try {
        Instance inst = load_instance(instance_path);
        Solution sol = load_solution(solution_path);
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            err << "codp: cannot write " << out_path << "\n";
            return 1;
        }
        out << render_svg(inst, sol, labels);
        return 0;
    } catch (const std::exception& e) {
        err << "codp: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace codp
