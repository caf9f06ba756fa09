#include "codp/solution_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace codp {

std::string format_plain(double v, int significant) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*g", significant, v);
    std::string s(buf);
    const auto e = s.find_first_of("eE");
    if (e == std::string::npos) return s;

    // %g chose scientific notation; rewrite as plain decimal with the same
    // number of significant digits.
    const int exponent = std::stoi(s.substr(e + 1));
    int decimals = significant - 1 - exponent;
    if (decimals < 0) decimals = 0;
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    s = buf;
    if (s.find('.') != std::string::npos) {
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
    }
    return s;
}

std::string format_solution(const Solution& sol) {
    std::ostringstream out;
    out << "dimension " << format_plain(sol.dimension) << "\n";
    out << "feasible " << (sol.feasible ? 1 : 0) << "\n";
    for (const Vec2& c : sol.centers) {
        out << format_plain(c.x) << " " << format_plain(c.y) << "\n";
    }
    return out.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& what) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

Solution parse_solution(std::istream& in, const std::string& name) {
    Solution sol;
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) parse_fail(name, 1, "missing `dimension` line");
    ++line_no;
    {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key >> sol.dimension) || key != "dimension") {
            parse_fail(name, line_no, "expected `dimension <value>`");
        }
    }
    if (!std::getline(in, line)) parse_fail(name, 2, "missing `feasible` line");
    ++line_no;
    {
        std::istringstream ls(line);
        std::string key;
        int flag = 0;
        if (!(ls >> key >> flag) || key != "feasible" || (flag != 0 && flag != 1)) {
            parse_fail(name, line_no, "expected `feasible <0|1>`");
        }
        sol.feasible = flag == 1;
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        Vec2 c;
        if (!(ls >> c.x >> c.y)) parse_fail(name, line_no, "expected `x y`");
        std::string extra;
        if (ls >> extra) parse_fail(name, line_no, "trailing text `" + extra + "`");
        sol.centers.push_back(c);
    }
    if (sol.centers.empty()) parse_fail(name, line_no, "solution has no centers");
    return sol;
}

Solution load_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open solution file");
    return parse_solution(in, path);
}

void save_solution(const std::string& path, const Solution& sol) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot write solution file");
    out << format_solution(sol);
}

Solution make_solution(const Instance& inst, const Layout& lay, double reported_dimension) {
    Solution sol;
    sol.dimension = reported_dimension;
    sol.centers.resize(inst.size());
    for (int s = 0; s < inst.size(); ++s) {
        sol.centers[inst.input_index(s)] = lay.centers[s];
    }

    // The flag must hold for the values a reader will see, so round-trip
    // through the serialized text before validating.
    sol.feasible = false;
    std::istringstream round_trip(format_solution(sol));
    Solution parsed = parse_solution(round_trip, "<round-trip>");
    Layout parsed_layout = solution_to_layout(inst, parsed);
    sol.feasible = is_feasible(inst, parsed_layout, FeasibilityTolerance{0.0});
    return sol;
}

Layout solution_to_layout(const Instance& inst, const Solution& sol) {
    if (static_cast<int>(sol.centers.size()) != inst.size()) {
        throw std::runtime_error("solution/instance mismatch: " +
                                 std::to_string(sol.centers.size()) + " centers for " +
                                 std::to_string(inst.size()) + " circles");
    }
    Layout lay;
    lay.dimension = sol.dimension;
    lay.centers.resize(inst.size());
    for (int s = 0; s < inst.size(); ++s) {
        lay.centers[s] = sol.centers[inst.input_index(s)];
    }
    return lay;
}

}  // namespace codp
