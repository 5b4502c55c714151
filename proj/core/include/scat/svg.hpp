#pragma once

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "scat/diagram.hpp"

namespace scat {

struct SvgOptions {
    double scale = 60.0;  // user units per slice unit
    double margin = 24.0; // viewport padding in user units
    int precision = 3;    // decimal digits in emitted coordinates
};

// Presentation-only data: exact geometry is resolved (clipped) before this
// point; doubles are used only for the final fixed-precision formatting.
struct SvgSegment {
    double x1, y1, x2, y2;
    LatticeClass primitive; // direction with content divided out
    long mult;              // content of the ray class
};

// Deterministic SVG 1.1 document: boundary parabola y = -x^2/2 over
// [xmin, xmax], then the segments (colored by primitive class, stroke width
// decreasing with multiplicity), then the marked points.
std::string render_svg(const std::vector<SvgSegment>& segments,
                       const std::vector<std::pair<double, double>>& points,
                       double xmin, double xmax, double ymin, double ymax,
                       const SvgOptions& opts);

namespace detail {

inline void split_class(LatticeClass m, LatticeClass& prim, long& mult) {
    mult = std::gcd(std::abs(m.a), std::abs(m.b));
    if (mult == 0) mult = 1;
    prim = {m.a / mult, m.b / mult};
}

// Largest parameter of the ray inside the drawing window (x-range and
// x^2+2y < smax); negative if the ray never enters it.
template <typename C>
double clip_parameter(const Ray<C>& r, const Region& region) {
    double t = r.bounded ? r.T.get_d() : 1e18;
    double x0 = r.init.x.get_d(), a = static_cast<double>(r.cls.a);
    double xmin = region.xmin.get_d(), xmax = region.xmax.get_d();
    if (a > 0) t = std::min(t, (x0 - xmin) / a);
    if (a < 0) t = std::min(t, (x0 - xmax) / a);
    // x^2+2y along the ray: s0 + phi0 t + a^2 t^2 with phi0 > 0.
    double s0 = r.init.skey().get_d(), smax = region.smax.get_d();
    double phi0 = r.grade_at(r.init).get_d();
    if (s0 < smax) {
        double tb;
        if (a != 0) {
            double disc = phi0 * phi0 + 4 * a * a * (smax - s0);
            tb = (-phi0 + std::sqrt(std::max(0.0, disc))) / (2 * a * a);
        } else {
            tb = phi0 > 0 ? (smax - s0) / phi0 : 1e18;
        }
        t = std::min(t, tb);
    }
    return t;
}

// First parameter at which the ray's x-coordinate enters [xmin, xmax];
// zero when it starts inside.
template <typename C>
double clip_start(const Ray<C>& r, const Region& region) {
    double x0 = r.init.x.get_d(), a = static_cast<double>(r.cls.a);
    double xmin = region.xmin.get_d(), xmax = region.xmax.get_d();
    if (a > 0 && x0 > xmax) return (x0 - xmax) / a;
    if (a < 0 && x0 < xmin) return (x0 - xmin) / a;
    if (a == 0 && (x0 < xmin || x0 > xmax)) return 1e18; // never enters
    return 0.0;
}

} // namespace detail

template <typename C>
std::string diagram_svg(const Diagram<C>& d, const SvgOptions& opts = {}) {
    std::vector<SvgSegment> segs;
    for (const auto& r : d.rays) {
        double t0 = detail::clip_start(r, d.region);
        double t = detail::clip_parameter(r, d.region);
        if (t <= t0) continue;
        SvgSegment s;
        s.x1 = r.init.x.get_d() - t0 * r.cls.a;
        s.y1 = r.init.y.get_d() - t0 * r.cls.b;
        s.x2 = r.init.x.get_d() - t * r.cls.a;
        s.y2 = r.init.y.get_d() - t * r.cls.b;
        detail::split_class(r.cls, s.primitive, s.mult);
        segs.push_back(s);
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : d.vertex_log)
        pts.emplace_back(v.p.x.get_d(), v.p.y.get_d());
    double xmin = d.region.xmin.get_d(), xmax = d.region.xmax.get_d();
    double xa = std::max(std::abs(xmin), std::abs(xmax));
    double ymin = -xa * xa / 2, ymax = d.region.smax.get_d() / 2;
    return render_svg(segs, pts, xmin, xmax, ymin, ymax, opts);
}

} // namespace scat
