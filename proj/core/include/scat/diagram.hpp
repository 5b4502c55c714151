#pragma once

#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "scat/local_scattering.hpp"

namespace scat {

struct PointQ {
    Rat x, y;
    Rat skey() const { return x * x + 2 * y; } // sweep key, strictly
                                               // increasing along every ray
    bool in_U() const { return skey() > 0; }
    friend bool operator==(const PointQ& p, const PointQ& q) {
        return p.x == q.x && p.y == q.y;
    }
    friend bool operator<(const PointQ& p, const PointQ& q) {
        int c = cmp(p.x, q.x);
        if (c != 0) return c < 0;
        return p.y < q.y;
    }
};

// phi_sigma((a,b)) = 2(-a x - b); positive exactly on the classes that can
// carry a ray through sigma, additive, and affine increasing along rays.
inline Rat phi(const PointQ& sigma, LatticeClass m) {
    return 2 * (-m.a * sigma.x - m.b);
}

// Quadratic refinement sigma(a,b) = (-1)^{ab+a+b}; converts between the two
// sign conventions of the wall-crossing algebra.
inline int sign_twist_of(LatticeClass m) {
    long e = m.a * m.b + m.a + m.b;
    return (e % 2 == 0) ? 1 : -1;
}

enum class SignConvention { qminus, qplus };

// Oriented ray in the slice: support = init - [0,T] * cls (bounded) or
// init - R_{>=0} * cls (unbounded).
template <typename C>
struct Ray {
    PointQ init;
    LatticeClass cls;
    C fn;
    bool bounded = false;
    Rat T; // only meaningful when bounded

    PointQ point_at(const Rat& t) const {
        return {init.x - t * cls.a, init.y - t * cls.b};
    }
    // Parameter of p on the support line, or nullopt if off the line or
    // outside [0, T].
    std::optional<Rat> param_of(const PointQ& p) const {
        Rat wx = init.x - p.x, wy = init.y - p.y;
        if (wx * cls.b != wy * cls.a) return std::nullopt; // off the line
        Rat t;
        if (cls.a != 0)
            t = wx / cls.a;
        else if (cls.b != 0)
            t = wy / cls.b;
        else
            return std::nullopt;
        if (t < 0) return std::nullopt;
        if (bounded && t > T) return std::nullopt;
        return t;
    }
    Rat grade_at(const PointQ& p) const { return phi(p, cls); }
};

struct Region {
    Rat xmin, xmax, smax;
    bool contains(const PointQ& p) const {
        return p.x >= xmin && p.x <= xmax && p.skey() > 0 && p.skey() < smax;
    }
};

template <typename C>
struct VertexRecord {
    PointQ p;
    std::vector<LocalRay<C>> ingoing;
    std::vector<LocalRay<C>> outgoing;
};

template <typename C>
struct Diagram {
    std::vector<Ray<C>> rays;
    Region region;
    Rat order_cap;
    SkewForm form{3};
    std::vector<VertexRecord<C>> vertex_log;

    TruncationContext context_at(const PointQ& p) const {
        return TruncationContext(form, -2 * p.x, Rat(-2), order_cap);
    }
};

// Intersection of the two support lines, with both parameters.
template <typename C>
std::optional<std::tuple<PointQ, Rat, Rat>> ray_intersection(
    const Ray<C>& r1, const Ray<C>& r2) {
    long det = -lattice_det(r1.cls, r2.cls);
    if (det == 0) return std::nullopt;
    Rat wx = r1.init.x - r2.init.x, wy = r1.init.y - r2.init.y;
    Rat t1 = (-wx * r2.cls.b + r2.cls.a * wy) / det;
    Rat t2 = (r1.cls.a * wy - r1.cls.b * wx) / det;
    if (t1 < 0 || t2 < 0) return std::nullopt;
    if (r1.bounded && t1 > r1.T) return std::nullopt;
    if (r2.bounded && t2 > r2.T) return std::nullopt;
    return std::make_tuple(r1.point_at(t1), t1, t2);
}

namespace detail {

template <typename C>
C initial_fn(long l, int n, SignConvention conv, bool markers,
             long marker_cap) {
    RatFuncQ base = initial_coefficient(l);
    if (conv == SignConvention::qplus && l % 2 == 1) base = -base;
    if constexpr (std::is_same_v<C, MarkerPoly>) {
        if (markers)
            return MarkerPoly::marker(n, static_cast<int>(l), base,
                                      marker_cap);
        return MarkerPoly::from_ratfunc(base, marker_cap);
    } else {
        return base;
    }
}

} // namespace detail

// The initial diagram: for each tangency point s_n = (n, -n^2/2), the two
// half-tangent segments of length-1/2 x-extent carrying classes l*m_n^-,
// l*m_n^+ with m_n^- = (1,-n), m_n^+ = (-1,n) and coefficient
// -1/(l (q^{l/2}-q^{-l/2})) (q^- convention; the q^+ convention flips the
// sign for odd l).
template <typename C>
Diagram<C> initial_diagram(int n_min, int n_max, long l_max, Region region,
                           Rat order_cap,
                           SignConvention conv = SignConvention::qminus,
                           bool markers = false,
                           long marker_cap = MarkerPoly::kUncapped) {
    Diagram<C> d;
    d.region = std::move(region);
    d.order_cap = std::move(order_cap);
    // The two sign conventions live in different associative algebras: the
    // default one carries the (-1)^{<m,m'>} twist, the other does not.
    d.form.signed_product = (conv == SignConvention::qminus);
    for (int n = n_min; n <= n_max; ++n) {
        PointQ s{Rat(n), rat(-(long)n * n, 2)};
        for (int side = 0; side < 2; ++side) {
            LatticeClass m = side == 0 ? LatticeClass{1, -n}
                                       : LatticeClass{-1, n};
            for (long l = 1; l <= l_max; ++l) {
                Ray<C> r;
                r.init = s;
                r.cls = l * m;
                r.fn = detail::initial_fn<C>(l, n, conv, markers, marker_cap);
                r.bounded = true;
                r.T = rat(1, 2 * l);
                d.rays.push_back(std::move(r));
            }
        }
    }
    return d;
}

template <typename C>
Diagram<C> psi_translate(const Diagram<C>& d, int k) {
    auto map_point = [k](PointQ p) {
        int steps = k >= 0 ? k : -k;
        for (int i = 0; i < steps; ++i) {
            if (k >= 0)
                p = {p.x + 1, p.y - p.x - rat(1, 2)};
            else
                p = {p.x - 1, p.y + p.x - rat(1, 2)};
        }
        return p;
    };
    auto map_class = [k](LatticeClass m) {
        return LatticeClass{m.a, m.b - k * m.a};
    };
    auto map_fn = [k](const C& f) {
        if constexpr (std::is_same_v<C, MarkerPoly>)
            return f.shift_indices(k);
        else
            return f;
    };
    Diagram<C> r;
    r.region = {d.region.xmin + k, d.region.xmax + k, d.region.smax};
    r.order_cap = d.order_cap;
    r.form = d.form;
    for (auto& ray : d.rays) {
        Ray<C> rr;
        rr.init = map_point(ray.init);
        rr.cls = map_class(ray.cls);
        rr.fn = map_fn(ray.fn);
        rr.bounded = ray.bounded;
        rr.T = ray.T;
        r.rays.push_back(std::move(rr));
    }
    for (auto& v : d.vertex_log) {
        VertexRecord<C> vv;
        vv.p = map_point(v.p);
        for (auto& lr : v.ingoing)
            vv.ingoing.push_back({map_class(lr.cls), map_fn(lr.coef)});
        for (auto& lr : v.outgoing)
            vv.outgoing.push_back({map_class(lr.cls), map_fn(lr.coef)});
        r.vertex_log.push_back(std::move(vv));
    }
    return r;
}

template <typename C>
Diagram<C> sign_twist(const Diagram<C>& d) {
    Diagram<C> r = d;
    // The twist is an isomorphism between the signed and unsigned algebras;
    // the image diagram is consistent for the opposite product convention.
    r.form.signed_product = !d.form.signed_product;
    for (auto& ray : r.rays)
        if (sign_twist_of(ray.cls) < 0) ray.fn = -ray.fn;
    for (auto& v : r.vertex_log) {
        for (auto& lr : v.ingoing)
            if (sign_twist_of(lr.cls) < 0) lr.coef = -lr.coef;
        for (auto& lr : v.outgoing)
            if (sign_twist_of(lr.cls) < 0) lr.coef = -lr.coef;
    }
    return r;
}

// Mirror x -> -x, (a,b) -> (-a,b); the initial data is symmetric under it.
template <typename C>
Diagram<C> mirror(const Diagram<C>& d) {
    Diagram<C> r;
    r.region = {-d.region.xmax, -d.region.xmin, d.region.smax};
    r.order_cap = d.order_cap;
    r.form = d.form;
    for (auto& ray : d.rays) {
        Ray<C> rr = ray;
        rr.init = {-ray.init.x, ray.init.y};
        rr.cls = {-ray.cls.a, ray.cls.b};
        r.rays.push_back(std::move(rr));
    }
    return r;
}

// The consistent completion restricted to the region and order cap.
// Singular points are processed in increasing x^2+2y (ties: lexicographic
// (x, y)); legality rests on x^2+2y being strictly increasing along every
// ray, so a vertex's ingoing data is final before it is processed.
template <typename C>
Diagram<C> scatter(const Diagram<C>& input) {
    Diagram<C> d = input;
    using Key = std::tuple<Rat, Rat, Rat>; // (skey, x, y)
    std::set<Key> queue;
    std::set<std::pair<Rat, Rat>> processed;
    for (auto& v : d.vertex_log)
        processed.insert({v.p.x, v.p.y});

    auto push_point = [&](const PointQ& p) {
        if (!d.region.contains(p)) return;
        if (processed.count({p.x, p.y})) return;
        queue.insert({p.skey(), p.x, p.y});
    };
    // Pair event: only where both rays still scatter (grade <= cap); beyond
    // that a ray is inert (its class falls outside every support monoid).
    auto push_pair = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        auto is = ray_intersection(d.rays[i], d.rays[j]);
        if (!is) return;
        auto& [p, t1, t2] = *is;
        if (d.rays[i].grade_at(p) > d.order_cap) return;
        if (d.rays[j].grade_at(p) > d.order_cap) return;
        push_point(p);
    };
    auto push_endpoint = [&](std::size_t i) {
        if (!d.rays[i].bounded) return;
        PointQ p = d.rays[i].point_at(d.rays[i].T);
        if (d.rays[i].grade_at(p) > d.order_cap) return;
        push_point(p);
    };

    for (std::size_t i = 0; i < d.rays.size(); ++i) {
        push_endpoint(i);
        for (std::size_t j = i + 1; j < d.rays.size(); ++j) push_pair(i, j);
    }

    while (!queue.empty()) {
        auto [s, x, y] = *queue.begin();
        queue.erase(queue.begin());
        PointQ p{x, y};
        processed.insert({x, y});

        // Classify participants.
        struct Part {
            std::size_t idx;
            Rat t;
            Rat grade;
        };
        std::vector<Part> seeds, passing, enders;
        for (std::size_t i = 0; i < d.rays.size(); ++i) {
            auto t = d.rays[i].param_of(p);
            if (!t) continue;
            Part part{i, *t, d.rays[i].grade_at(p)};
            if (*t == 0)
                seeds.push_back(part);
            else if (d.rays[i].bounded && *t == d.rays[i].T)
                enders.push_back(part);
            else
                passing.push_back(part);
        }
        auto active = [&](const Part& q) { return q.grade <= d.order_cap; };
        std::vector<Part> in_active;
        for (auto& q : passing)
            if (active(q)) in_active.push_back(q);
        bool ender_active = false;
        for (auto& q : enders)
            if (active(q)) {
                in_active.push_back(q);
                ender_active = true;
            }
        if (in_active.empty() && seeds.empty()) continue;
        // Trivial vertex: nothing ends here, no seeds, and everything
        // commutes.
        if (!ender_active && seeds.empty()) {
            bool transversal = false;
            for (std::size_t i = 0; !transversal && i < in_active.size(); ++i)
                for (std::size_t j = i + 1; j < in_active.size(); ++j)
                    if (!collinear(d.rays[in_active[i].idx].cls,
                                   d.rays[in_active[j].idx].cls)) {
                        transversal = true;
                        break;
                    }
            if (!transversal) continue;
        }
        for (auto& q : in_active)
            if (q.grade < 1)
                throw std::runtime_error("order hypothesis violated");

        TruncationContext ctx = d.context_at(p);
        {
            std::vector<LatticeClass> gens;
            for (auto& q : in_active) gens.push_back(d.rays[q.idx].cls);
            for (auto& q : seeds)
                if (active(q)) gens.push_back(d.rays[q.idx].cls);
            ctx.generate_support(gens);
        }
        std::vector<LocalRay<C>> ingoing, seed_rays;
        for (auto& q : in_active)
            ingoing.push_back({d.rays[q.idx].cls, d.rays[q.idx].fn});
        for (auto& q : seeds)
            if (active(q))
                seed_rays.push_back({d.rays[q.idx].cls, d.rays[q.idx].fn});

        std::vector<LocalRay<C>> outgoing =
            complete_vertex(ingoing, seed_rays, ctx);
        d.vertex_log.push_back({p, ingoing, outgoing});

        // Geometry update.
        std::vector<std::size_t> touched; // new or extended rays
        auto find_part = [&](std::vector<Part>& v, LatticeClass m,
                             Part** hit) {
            for (auto& q : v)
                if (d.rays[q.idx].cls == m && active(q)) {
                    *hit = &q;
                    return true;
                }
            return false;
        };
        std::set<std::size_t> continued; // passing rays kept whole or split
        for (auto& lr : outgoing) {
            Part* q = nullptr;
            if (find_part(seeds, lr.cls, &q)) {
                continue; // already-present outgoing ray (re-scatter)
            } else if (find_part(passing, lr.cls, &q)) {
                continued.insert(q->idx);
                Ray<C>& old = d.rays[q->idx];
                if (old.fn == lr.coef) continue; // zero correction: no split
                Ray<C> piece;
                piece.init = p;
                piece.cls = old.cls;
                piece.fn = lr.coef;
                piece.bounded = old.bounded;
                if (old.bounded) piece.T = old.T - q->t;
                old.bounded = true;
                old.T = q->t;
                d.rays.push_back(std::move(piece));
                touched.push_back(d.rays.size() - 1);
            } else if (find_part(enders, lr.cls, &q)) {
                Ray<C>& old = d.rays[q->idx];
                if (old.fn == lr.coef) {
                    old.bounded = false; // merge: extend through the vertex
                    touched.push_back(q->idx);
                } else {
                    Ray<C> piece;
                    piece.init = p;
                    piece.cls = old.cls;
                    piece.fn = lr.coef;
                    piece.bounded = false;
                    d.rays.push_back(std::move(piece));
                    touched.push_back(d.rays.size() - 1);
                }
            } else {
                Ray<C> fresh;
                fresh.init = p;
                fresh.cls = lr.cls;
                fresh.fn = lr.coef;
                fresh.bounded = false;
                d.rays.push_back(std::move(fresh));
                touched.push_back(d.rays.size() - 1);
            }
        }
        // A passing ray whose outgoing coefficient vanished ends here.
        for (auto& q : passing) {
            if (!active(q) || continued.count(q.idx)) continue;
            bool gone = true;
            for (auto& lr : outgoing)
                if (lr.cls == d.rays[q.idx].cls) gone = false;
            if (gone) {
                d.rays[q.idx].bounded = true;
                d.rays[q.idx].T = q.t;
            }
        }
        for (auto i : touched) {
            push_endpoint(i);
            for (std::size_t j = 0; j < d.rays.size(); ++j) push_pair(i, j);
        }
    }
    return d;
}

// Wall function of class m at sigma: the unique class-m ray whose support
// contains sigma in its interior, or zero.
template <typename C>
C function_at(const Diagram<C>& d, const PointQ& sigma, LatticeClass m) {
    for (auto& v : d.vertex_log)
        if (v.p == sigma) throw std::runtime_error("probe on singular point");
    for (auto& ray : d.rays) {
        if (!(ray.cls == m)) continue;
        auto t = ray.param_of(sigma);
        if (!t) continue;
        if (*t == 0 || (ray.bounded && *t == ray.T))
            throw std::runtime_error("probe on singular point");
        return ray.fn;
    }
    return C::zero();
}

// Structural equality of normalized ray sets (log ignored).
template <typename C>
bool diagrams_equal(const Diagram<C>& a, const Diagram<C>& b) {
    auto key = [](const Ray<C>& r) {
        return std::tuple<Rat, Rat, long, long, int, Rat>(
            r.init.x, r.init.y, r.cls.a, r.cls.b, r.bounded ? 1 : 0,
            r.bounded ? r.T : Rat(0));
    };
    auto sorted = [&](const Diagram<C>& d) {
        std::vector<Ray<C>> rs = d.rays;
        std::sort(rs.begin(), rs.end(),
                  [&](const Ray<C>& r1, const Ray<C>& r2) {
                      return key(r1) < key(r2);
                  });
        return rs;
    };
    auto ra = sorted(a), rb = sorted(b);
    if (ra.size() != rb.size()) return false;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        if (!(key(ra[i]) == key(rb[i]))) return false;
        if (!(ra[i].fn == rb[i].fn)) return false;
    }
    return true;
}

} // namespace scat
