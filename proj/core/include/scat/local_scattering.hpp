#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "scat/qtorus.hpp"

namespace scat {

// A ray germ at a singular point: class, wall-function coefficient. The grade
// is phi at the point, recoverable from the TruncationContext.
template <typename C>
struct LocalRay {
    LatticeClass cls;
    C coef;
};

// Ascending label order. Ingoing: labels a <= a' satisfy <m_a, m_{a'}> <= 0,
// i.e. counterclockwise within the open half-plane phi > 0 (for kappa >= 0).
// Outgoing: the reverse (clockwise). Collinear classes commute; ties broken
// by (grade, class lex) for determinism.
template <typename C>
void angular_sort(std::vector<LocalRay<C>>& rays, bool outgoing,
                  const TruncationContext& ctx) {
    std::sort(rays.begin(), rays.end(),
              [&](const LocalRay<C>& r1, const LocalRay<C>& r2) {
                  long det = lattice_det(r1.cls, r2.cls);
                  if (det != 0) return outgoing ? det < 0 : det > 0;
                  Rat g1 = ctx.grade(r1.cls), g2 = ctx.grade(r2.cls);
                  if (g1 != g2) return g1 < g2;
                  return r1.cls < r2.cls;
              });
}

namespace detail {

// The ordered product prod-> exp(c_a z^{m_a}): higher label on the left.
template <typename C>
TorusElement<C> wall_product(std::vector<LocalRay<C>> rays, bool outgoing,
                             const TruncationContext& ctx) {
    angular_sort(rays, outgoing, ctx);
    TorusElement<C> acc = TorusElement<C>::unit();
    // Ascending labels, multiplying on the left: E_K ... E_1.
    for (auto& r : rays) {
        TorusElement<C> e =
            torus_exp(TorusElement<C>::monomial(r.cls, r.coef), ctx);
        acc = torus_mul(e, acc, ctx);
    }
    return acc;
}

template <typename C>
std::vector<LocalRay<C>> out_map_to_rays(
    const std::map<LatticeClass, C>& out) {
    std::vector<LocalRay<C>> rays;
    for (auto& [m, c] : out)
        if (!c.is_zero()) rays.push_back({m, c});
    return rays;
}

} // namespace detail

template <typename C>
bool loop_check(const std::vector<LocalRay<C>>& ingoing,
                const std::vector<LocalRay<C>>& outgoing,
                const TruncationContext& ctx) {
    return detail::wall_product(ingoing, false, ctx) ==
           detail::wall_product(outgoing, true, ctx);
}

// Consistent completion at a vertex. Outgoing rays are seeded with the
// continuations of the ingoing rays (and any rays initiating at the point,
// passed as `seeds`; a seed supersedes the continuation on its class), then
// corrected grade by grade: at the lowest unsolved grade the defect
// D - 1 = inverse(out) * in - 1 equals the needed correction, because all
// cross terms live at strictly higher grade.
template <typename C>
std::vector<LocalRay<C>> complete_vertex(
    const std::vector<LocalRay<C>>& ingoing,
    const std::vector<LocalRay<C>>& seeds, const TruncationContext& ctx) {
    std::vector<LocalRay<C>> in;
    for (auto& r : ingoing) {
        if (ctx.grade(r.cls) < 1)
            throw std::domain_error("hypothesis violated");
        in.push_back(r);
    }
    TorusElement<C> p_in = detail::wall_product(in, false, ctx);

    std::map<LatticeClass, C> out;
    for (auto& r : in) {
        auto it = out.find(r.cls);
        if (it == out.end())
            out[r.cls] = r.coef;
        else
            it->second += r.coef;
    }
    for (auto& r : seeds) out[r.cls] = r.coef;

    // Exponentials are reused across iterations; only corrected classes are
    // recomputed.
    std::map<LatticeClass, std::pair<C, TorusElement<C>>> exp_cache;
    auto cached_out_product = [&]() {
        std::vector<LocalRay<C>> rays = detail::out_map_to_rays(out);
        angular_sort(rays, true, ctx);
        TorusElement<C> acc = TorusElement<C>::unit();
        for (auto& r : rays) {
            auto it = exp_cache.find(r.cls);
            if (it == exp_cache.end() || !(it->second.first == r.coef)) {
                TorusElement<C> e = torus_exp(
                    TorusElement<C>::monomial(r.cls, r.coef), ctx);
                it = exp_cache.insert_or_assign(r.cls, std::make_pair(r.coef,
                                                                      e))
                         .first;
            }
            acc = torus_mul(it->second.second, acc, ctx);
        }
        return acc;
    };

    // Correct at the lowest unsolved grade of the defect; every grade below
    // it is already final, so the product only needs recomputing after an
    // actual insertion.
    std::size_t guard = ctx.grade_ladder().size() + 2;
    Rat solved(0);
    for (std::size_t iter = 0;; ++iter) {
        if (iter > guard) throw std::logic_error("non-causal defect");
        TorusElement<C> p_out = cached_out_product();
        TorusElement<C> defect = torus_solve_left(p_out, p_in, ctx);
        bool found = false;
        Rat g;
        for (auto& [m, c] : defect.terms) {
            if (m.is_zero()) continue;
            Rat gm = ctx.grade(m);
            if (gm <= solved) throw std::logic_error("non-causal defect");
            if (!found || gm < g) {
                g = gm;
                found = true;
            }
        }
        if (!found) break;
        for (auto& [m, c] : defect.terms) {
            if (m.is_zero() || ctx.grade(m) != g) continue;
            auto it = out.find(m);
            if (it == out.end())
                out[m] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
        solved = g;
    }

    std::vector<LocalRay<C>> result = detail::out_map_to_rays(out);
    if (!loop_check(in, result, ctx))
        throw std::logic_error("non-causal defect");
    angular_sort(result, true, ctx);
    return result;
}

// Independent slow path: solve the completion through logarithms. At the
// lowest unsolved grade, log(in) - log(out) has exactly the missing
// coefficients (BCH cross terms sit at higher grade). Used as an oracle
// against complete_vertex; not called by the sweep.
template <typename C>
std::vector<LocalRay<C>> complete_vertex_by_logarithm(
    const std::vector<LocalRay<C>>& ingoing, const TruncationContext& ctx) {
    TorusElement<C> p_in = detail::wall_product(ingoing, false, ctx);
    TorusElement<C> l_in = torus_log(p_in, ctx);

    std::map<LatticeClass, C> out;
    for (auto& r : ingoing) {
        auto it = out.find(r.cls);
        if (it == out.end())
            out[r.cls] = r.coef;
        else
            it->second += r.coef;
    }
    for (auto& g : ctx.grade_ladder()) {
        TorusElement<C> p_out =
            detail::wall_product(detail::out_map_to_rays(out), true, ctx);
        TorusElement<C> l_out = torus_log(p_out, ctx);
        TorusElement<C> diff = l_in;
        for (auto& [m, c] : l_out.terms) diff.add_term(m, -c);
        for (auto& [m, c] : diff.terms) {
            if (ctx.grade(m) != g) continue;
            auto it = out.find(m);
            if (it == out.end())
                out[m] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    auto result = detail::out_map_to_rays(out);
    angular_sort(result, true, ctx);
    return result;
}

} // namespace scat
