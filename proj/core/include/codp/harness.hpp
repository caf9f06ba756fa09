#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "codp/driver.hpp"
#include "codp/instance.hpp"

namespace codp {

// Parses "90", "90s", "5m" or "30h" into seconds.
std::chrono::duration<double> parse_time_limit(const std::string& text);

struct RunOptions {
    std::string instance_path;
    std::optional<std::string> container_override;  // "strip" or "disc"
    std::optional<double> width_override;
    std::optional<double> target_length;
    std::chrono::duration<double> time_limit = std::chrono::seconds(60);
    std::uint64_t seed = 0;
    SearchMode mode = SearchMode::its;
    std::optional<std::string> out_path;    // solution file
    std::optional<std::string> svg_path;    // rendered layout
    std::optional<std::string> trace_path;  // JSON-lines progress log
    bool labels = false;
};

// Everything the summary line, CSV rows and solution files are built from.
struct SolutionRecord {
    std::string instance_name;
    int n = 0;
    std::string container;  // width as text, or "disc"
    std::string mode;
    double dimension = 0.0;  // reported, 4 decimals
    std::uint64_t seed = 0;
    double elapsed_s = 0.0;
    long long ts_launch_count = 0;
    long long perturbation_count = 0;
    long long restart_count = 0;
    bool feasible = false;
    std::string error;  // nonempty when the run failed
};

std::string format_dimension(double v, int decimals = 4);
std::string summary_line(const SolutionRecord& rec);

// Loads the instance, runs solve_and_finish, writes the requested artifacts
// and a one-line summary. Exit code 0 when the solution file is feasible at
// the reported dimension, 2 when the run ended abortive, 1 on input errors.
int run(const RunOptions& opt, std::ostream& out, std::ostream& err);

struct BenchOptions {
    std::string corpus_dir;
    std::optional<std::string> targets_path;  // lines: `<instance-name> <dimension>`
    std::chrono::duration<double> time_limit = std::chrono::seconds(60);
    std::uint64_t seed = 0;
    std::vector<SearchMode> modes = {SearchMode::its};
    std::optional<std::string> csv_path;
};

// Runs every instance file in the corpus directory under each mode and emits
// a human-readable table plus CSV. Per-instance failures are recorded in the
// table and the harness continues.
int bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

// CSV column contract, stable across versions.
extern const char* const kBenchCsvHeader;
std::string csv_row(const SolutionRecord& rec);

int render(const std::string& instance_path, const std::string& solution_path,
           const std::string& out_path, bool labels, std::ostream& err);

}  // namespace codp
