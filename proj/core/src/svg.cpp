#include "codp/svg.hpp"

#include <cstdio>
#include <sstream>

namespace codp {

namespace {

// Fixed-precision coordinate formatting keeps the output byte-stable.
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

}  // namespace

std::string render_svg(const Instance& inst, const Solution& sol, bool labels) {
    const Layout lay = solution_to_layout(inst, sol);  // validates the match

    const bool strip = inst.container().kind == ContainerKind::strip;
    const double half_w = strip ? 0.5 * inst.container().width : lay.dimension;
    const double half_l = strip ? 0.5 * lay.dimension : lay.dimension;
    const double margin = 0.05 * std::max(half_l, half_w) + 0.1;
    const double x0 = -half_l - margin;
    const double y0 = -half_w - margin;
    const double width = 2.0 * (half_l + margin);
    const double height = 2.0 * (half_w + margin);
    const double scale = 640.0 / width;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(scale * width)
        << "\" height=\"" << num(scale * height) << "\" viewBox=\"" << num(x0) << " "
        << num(y0) << " " << num(width) << " " << num(height) << "\">\n";

    if (strip) {
        out << "  <rect x=\"" << num(-half_l) << "\" y=\"" << num(-half_w) << "\" width=\""
            << num(lay.dimension) << "\" height=\"" << num(inst.container().width)
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << num(0.01 * half_l)
            << "\"/>\n";
    } else {
        out << "  <circle cx=\"0.0000\" cy=\"0.0000\" r=\"" << num(lay.dimension)
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << num(0.01 * half_l)
            << "\"/>\n";
    }

    for (int s = 0; s < inst.size(); ++s) {
        const Vec2 c = lay.centers[s];
        out << "  <circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\""
            << num(inst.radius(s))
            << "\" fill=\"#9ecae1\" fill-opacity=\"0.8\" stroke=\"#3182bd\" stroke-width=\""
            << num(0.005 * half_l) << "\"/>\n";
    }
    if (labels) {
        for (int s = 0; s < inst.size(); ++s) {
            const Vec2 c = lay.centers[s];
            out << "  <text x=\"" << num(c.x) << "\" y=\"" << num(c.y)
                << "\" font-size=\"" << num(inst.radius(s) * 0.8)
                << "\" text-anchor=\"middle\" dominant-baseline=\"central\">" << (s + 1)
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace codp
