#include "scat/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace scat {

namespace {

// Fixed palette; class -> color assignment is a pure function of the
// primitive direction, so output is byte-stable across runs.
const char* kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8", "#98df8a",
};
constexpr int kPaletteSize = 12;

const char* color_of(LatticeClass prim) {
    long h = prim.a * 131 + prim.b * 31;
    h %= kPaletteSize;
    if (h < 0) h += kPaletteSize;
    return kPalette[h];
}

std::string fmt(double v, int precision) {
    char buf[64];
    if (std::abs(v) < 0.5 * std::pow(10.0, -precision)) v = 0.0; // no "-0"
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

} // namespace

std::string render_svg(const std::vector<SvgSegment>& segments,
                       const std::vector<std::pair<double, double>>& points,
                       double xmin, double xmax, double ymin, double ymax,
                       const SvgOptions& opts) {
    const double s = opts.scale, m = opts.margin;
    // Slice coordinates -> viewport: x right, y up.
    auto X = [&](double x) { return m + (x - xmin) * s; };
    auto Y = [&](double y) { return m + (ymax - y) * s; };
    auto F = [&](double v) { return fmt(v, opts.precision); };
    double w = 2 * m + (xmax - xmin) * s, h = 2 * m + (ymax - ymin) * s;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        << "width=\"" << F(w) << "\" height=\"" << F(h) << "\" viewBox=\"0 0 "
        << F(w) << " " << F(h) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Boundary parabola y = -x^2/2 drawn exactly as one quadratic Bezier:
    // the tangents at x = a, b meet at ((a+b)/2, -ab/2).
    {
        double a = xmin, b = xmax;
        out << "<path d=\"M " << F(X(a)) << " " << F(Y(-a * a / 2)) << " Q "
            << F(X((a + b) / 2)) << " " << F(Y(-a * b / 2)) << " " << F(X(b))
            << " " << F(Y(-b * b / 2))
            << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6 3\"/>\n";
    }

    for (const auto& seg : segments) {
        double width = std::max(0.5, 2.4 / static_cast<double>(seg.mult));
        out << "<line x1=\"" << F(X(seg.x1)) << "\" y1=\"" << F(Y(seg.y1))
            << "\" x2=\"" << F(X(seg.x2)) << "\" y2=\"" << F(Y(seg.y2))
            << "\" stroke=\"" << color_of(seg.primitive)
            << "\" stroke-width=\"" << fmt(width, 2)
            << "\" stroke-linecap=\"round\"/>\n";
    }

    for (const auto& [px, py] : points)
        out << "<circle cx=\"" << F(X(px)) << "\" cy=\"" << F(Y(py))
            << "\" r=\"2.2\" fill=\"#000000\"/>\n";

    out << "</svg>\n";
    return out.str();
}

} // namespace scat
