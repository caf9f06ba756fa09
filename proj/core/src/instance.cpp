#include "codp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace codp {

Instance make_instance(std::vector<double> radii, ContainerSpec container) {
    if (radii.empty()) {
        throw std::invalid_argument("instance has no circles");
    }
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0) || !std::isfinite(radii[k])) {
            throw std::invalid_argument("radius " + std::to_string(k + 1) +
                                        " must be a positive finite number");
        }
    }
    if (container.kind == ContainerKind::strip && !(container.width > 0.0)) {
        throw std::invalid_argument("strip width must be positive");
    }

    const int n = static_cast<int>(radii.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Stable so that equal radii keep their input order.
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return radii[a] > radii[b]; });

    Instance inst;
    inst.container_ = container;
    inst.radii_.resize(n);
    inst.input_index_ = order;
    inst.sorted_index_.resize(n);
    for (int s = 0; s < n; ++s) {
        inst.radii_[s] = radii[order[s]];
        inst.sorted_index_[order[s]] = s;
    }

    if (container.kind == ContainerKind::strip &&
        container.width < 2.0 * inst.radii_.front()) {
        throw std::invalid_argument("instance infeasible by width");
    }
    return inst;
}

bool is_feasible(const Instance& inst, const Layout& lay, FeasibilityTolerance tol) {
    const int n = inst.size();
    const double eps = tol.eps;
    const auto& c = lay.centers;

    for (int i = 0; i < n; ++i) {
        const double r = inst.radius(i);
        if (inst.container().kind == ContainerKind::strip) {
            if (std::abs(c[i].x) + r - 0.5 * lay.dimension > eps) return false;
            if (std::abs(c[i].y) + r - 0.5 * inst.container().width > eps) return false;
        } else {
            if (r + norm(c[i]) - lay.dimension > eps) return false;
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (inst.radius(i) + inst.radius(j) - dist(c[i], c[j]) > eps) return false;
        }
    }
    return true;
}

Vec2 sample_center(const Instance& inst, int circle, double dimension, RandomSource& rng) {
    const double r = inst.radius(circle);
    if (inst.container().kind == ContainerKind::strip) {
        const double hx = 0.5 * dimension - r;
        const double hy = 0.5 * inst.container().width - r;
        Vec2 c;
        c.x = hx > 0.0 ? rng.uniform(-hx, hx) : 0.0;
        c.y = hy > 0.0 ? rng.uniform(-hy, hy) : 0.0;
        return c;
    }
    const double reach = dimension - r;
    if (!(reach > 0.0)) return {0.0, 0.0};
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    const double rho = reach * std::sqrt(rng.canonical());
    return {rho * std::cos(theta), rho * std::sin(theta)};
}

Layout random_layout(const Instance& inst, double dimension, RandomSource& rng) {
    Layout lay;
    lay.dimension = dimension;
    lay.centers.resize(inst.size());
    for (int i = 0; i < inst.size(); ++i) {
        lay.centers[i] = sample_center(inst, i, dimension, rng);
    }
    return lay;
}

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& what) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

// Strips comments and surrounding whitespace; empty result means skip.
std::string clean_line(std::string s) {
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

Instance parse_instance(std::istream& in, const std::string& name) {
    std::string raw;
    int line_no = 0;
    int header_line = 0;
    bool have_header = false;
    ContainerSpec container;
    std::vector<double> radii;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = clean_line(raw);
        if (line.empty()) continue;

        if (!have_header) {
            std::istringstream ls(line);
            std::string kind;
            ls >> kind;
            if (kind == "strip") {
                double w = 0.0;
                if (!(ls >> w)) parse_fail(name, line_no, "expected `strip W`");
                container = ContainerSpec::strip(w);
            } else if (kind == "disc") {
                container = ContainerSpec::disc();
            } else {
                parse_fail(name, line_no, "expected `strip W` or `disc`, got `" + kind + "`");
            }
            std::string extra;
            if (ls >> extra) parse_fail(name, line_no, "trailing text `" + extra + "`");
            have_header = true;
            header_line = line_no;
            continue;
        }

        std::istringstream ls(line);
        double r = 0.0;
        if (!(ls >> r)) parse_fail(name, line_no, "expected a radius, got `" + line + "`");
        std::string extra;
        if (ls >> extra) parse_fail(name, line_no, "trailing text `" + extra + "`");
        if (!(r > 0.0)) parse_fail(name, line_no, "radius must be positive");
        radii.push_back(r);
    }

    if (!have_header) parse_fail(name, line_no ? line_no : 1, "missing container header");
    if (radii.empty()) parse_fail(name, header_line, "instance has no circles");

    try {
        return make_instance(std::move(radii), container);
    } catch (const std::invalid_argument& e) {
        parse_fail(name, header_line, e.what());
    }
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open instance file");
    return parse_instance(in, path);
}

std::string format_instance(const Instance& inst) {
    std::ostringstream out;
    if (inst.container().kind == ContainerKind::strip) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", inst.container().width);
        out << "strip " << buf << "\n";
    } else {
        out << "disc\n";
    }
    // Input order, so that a parse/format cycle preserves the user's file.
    std::vector<double> in_order(inst.size());
    for (int s = 0; s < inst.size(); ++s) in_order[inst.input_index(s)] = inst.radius(s);
    for (double r : in_order) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", r);
        out << buf << "\n";
    }
    return out.str();
}

}  // namespace codp
