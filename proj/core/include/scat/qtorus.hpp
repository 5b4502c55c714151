#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "scat/marker_poly.hpp"
#include "scat/rational.hpp"

namespace scat {

// Class of a ray in the rank-2 lattice M = Z^2.
struct LatticeClass {
    long a = 0;
    long b = 0;
    friend LatticeClass operator+(LatticeClass u, LatticeClass v) {
        return {u.a + v.a, u.b + v.b};
    }
    friend LatticeClass operator*(long k, LatticeClass v) {
        return {k * v.a, k * v.b};
    }
    friend bool operator==(LatticeClass u, LatticeClass v) {
        return u.a == v.a && u.b == v.b;
    }
    friend auto operator<=>(const LatticeClass&, const LatticeClass&) = default;
    bool is_zero() const { return a == 0 && b == 0; }
};

// det(u, v) > 0 iff v is counterclockwise from u.
inline long lattice_det(LatticeClass u, LatticeClass v) {
    return u.a * v.b - u.b * v.a;
}

inline bool collinear(LatticeClass u, LatticeClass v) {
    return lattice_det(u, v) == 0;
}

// <(a,b),(a',b')> = kappa * (a'b - ab'). kappa = 3 for the projective plane;
// kept runtime-generic so external oracles (pentagon at kappa = 1) run
// through identical code.
struct SkewForm {
    long kappa = 3;
    // true: z^m z^{m'} carries the extra (-1)^{<m,m'>} (the default sign
    // convention); false: the untwisted product q^{<m,m'>/2} z^{m+m'}. The
    // quadratic refinement z^m -> (-1)^{ab+a+b} z^m is an isomorphism
    // between the two algebras.
    bool signed_product = true;
    long pairing(LatticeClass m, LatticeClass mp) const {
        return kappa * (mp.a * m.b - m.a * mp.b);
    }
};

// Truncation data at a working point: the additive grade (the value of phi
// there, affine-linear in the class), a rational cap, and the finite support
// monoid generated by the vertex's ingoing classes clipped at the cap.
// Dropping classes outside the support is the quotient by the truncation
// ideal.
class TruncationContext {
public:
    TruncationContext(SkewForm form, Rat grade_a, Rat grade_b, Rat cap)
        : form_(form), ga_(std::move(grade_a)), gb_(std::move(grade_b)),
          cap_(std::move(cap)) {
        support_.insert(LatticeClass{0, 0});
    }

    // Build the support monoid from generators by breadth-first addition.
    void generate_support(const std::vector<LatticeClass>& generators) {
        std::vector<LatticeClass> gens;
        for (auto g : generators) {
            Rat gr = grade(g);
            if (gr <= 0)
                throw std::domain_error(
                    "support generator with non-positive grade");
            if (gr <= cap_) gens.push_back(g);
        }
        std::vector<LatticeClass> frontier(support_.begin(), support_.end());
        while (!frontier.empty()) {
            std::vector<LatticeClass> next;
            for (auto e : frontier)
                for (auto g : gens) {
                    LatticeClass s = e + g;
                    if (grade(s) > cap_) continue;
                    if (support_.insert(s).second) next.push_back(s);
                }
            frontier = std::move(next);
        }
    }

    const SkewForm& form() const { return form_; }
    Rat grade(LatticeClass m) const { return ga_ * m.a + gb_ * m.b; }
    const Rat& cap() const { return cap_; }
    bool in_support(LatticeClass m) const { return support_.count(m) > 0; }
    const std::set<LatticeClass>& support() const { return support_; }

    // Distinct positive grades present in the support, ascending.
    std::vector<Rat> grade_ladder() const {
        std::set<Rat> gs;
        for (auto m : support_)
            if (!m.is_zero()) gs.insert(grade(m));
        return {gs.begin(), gs.end()};
    }

private:
    SkewForm form_;
    Rat ga_, gb_; // grade(m) = ga*m.a + gb*m.b
    Rat cap_;
    std::set<LatticeClass> support_;
};

// Element of the truncated quantum torus algebra: a finite sum of c_m z^m
// with m in the support. C is RatFuncQ or MarkerPoly.
template <typename C>
struct TorusElement {
    std::map<LatticeClass, C> terms;

    static TorusElement unit() {
        TorusElement e;
        e.terms[LatticeClass{0, 0}] = C::one();
        return e;
    }
    static TorusElement zero() { return {}; }
    static TorusElement monomial(LatticeClass m, const C& c) {
        TorusElement e;
        if (!c.is_zero()) e.terms[m] = c;
        return e;
    }
    bool is_zero() const { return terms.empty(); }
    bool is_unit() const {
        return terms.size() == 1 && terms.begin()->first.is_zero() &&
               terms.begin()->second == C::one();
    }
    C coeff(LatticeClass m) const {
        auto it = terms.find(m);
        return it == terms.end() ? C::zero() : it->second;
    }
    void add_term(LatticeClass m, const C& c) {
        if (c.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool operator==(const TorusElement& o) const { return terms == o.terms; }
};

// z^m z^{m'} = (-1)^{<m,m'>} q^{<m,m'>/2} z^{m+m'}, extended bilinearly;
// products leaving the support are dropped.
template <typename C>
TorusElement<C> torus_mul(const TorusElement<C>& x, const TorusElement<C>& y,
                          const TruncationContext& ctx) {
    TorusElement<C> r;
    for (auto& [m1, c1] : x.terms)
        for (auto& [m2, c2] : y.terms) {
            LatticeClass m = m1 + m2;
            if (!ctx.in_support(m)) continue;
            long k = ctx.form().pairing(m1, m2);
            C c = c1 * c2;
            int sgn =
                (!ctx.form().signed_product || k % 2 == 0) ? 1 : -1;
            r.add_term(m, c.mul_monomial(k, sgn));
        }
    return r;
}

template <typename C>
TorusElement<C> torus_exp(const TorusElement<C>& x,
                          const TruncationContext& ctx) {
    for (auto& [m, c] : x.terms)
        if (ctx.grade(m) <= 0)
            throw std::domain_error("non-nilpotent argument");
    TorusElement<C> acc = TorusElement<C>::unit();
    TorusElement<C> pow = TorusElement<C>::unit();
    Rat factorial(1);
    for (long n = 1; !pow.is_zero(); ++n) {
        pow = torus_mul(pow, x, ctx);
        factorial *= n;
        if (pow.is_zero()) break;
        TorusElement<C> t;
        for (auto& [m, c] : pow.terms) t.add_term(m, c.scaled(Rat(1) / factorial));
        for (auto& [m, c] : t.terms) acc.add_term(m, c);
    }
    return acc;
}

template <typename C>
TorusElement<C> torus_log(const TorusElement<C>& x,
                          const TruncationContext& ctx) {
    TorusElement<C> y = x; // y = x - 1, must be nilpotent
    auto it = y.terms.find(LatticeClass{0, 0});
    if (it == y.terms.end() || !(it->second == C::one()))
        throw std::domain_error("log requires unit constant term");
    y.terms.erase(it);
    TorusElement<C> acc;
    TorusElement<C> pow = TorusElement<C>::unit();
    for (long n = 1;; ++n) {
        pow = torus_mul(pow, y, ctx);
        if (pow.is_zero()) break;
        Rat s = rat(n % 2 == 1 ? 1 : -1, n);
        for (auto& [m, c] : pow.terms) acc.add_term(m, c.scaled(s));
    }
    return acc;
}

template <typename C>
TorusElement<C> torus_inverse(const TorusElement<C>& x,
                              const TruncationContext& ctx) {
    TorusElement<C> y = x;
    auto it = y.terms.find(LatticeClass{0, 0});
    if (it == y.terms.end() || !(it->second == C::one()))
        throw std::domain_error("inverse requires unit constant term");
    y.terms.erase(it); // x = 1 + y
    TorusElement<C> acc = TorusElement<C>::unit();
    TorusElement<C> pow = TorusElement<C>::unit();
    for (long n = 1;; ++n) {
        pow = torus_mul(pow, y, ctx);
        if (pow.is_zero()) break;
        int s = (n % 2 == 0) ? 1 : -1;
        for (auto& [m, c] : pow.terms) acc.add_term(m, c.scaled(Rat(s)));
    }
    return acc;
}

// Solve x * d = y for d, where x has unit constant term. The coefficients
// of d are determined by ascending grade, so this costs one convolution
// instead of the full series inverse.
template <typename C>
TorusElement<C> torus_solve_left(const TorusElement<C>& x,
                                 const TorusElement<C>& y,
                                 const TruncationContext& ctx) {
    auto it = x.terms.find(LatticeClass{0, 0});
    if (it == x.terms.end() || !(it->second == C::one()))
        throw std::domain_error("solve requires unit constant term");
    // Support classes by ascending grade; zero grade first.
    std::vector<LatticeClass> order(ctx.support().begin(),
                                    ctx.support().end());
    std::sort(order.begin(), order.end(),
              [&](LatticeClass a, LatticeClass b) {
                  Rat ga = ctx.grade(a), gb = ctx.grade(b);
                  if (ga != gb) return ga < gb;
                  return a < b;
              });
    TorusElement<C> d;
    for (auto m : order) {
        C acc = y.coeff(m);
        for (auto& [m1, c1] : x.terms) {
            if (m1.is_zero()) continue;
            LatticeClass m2{m.a - m1.a, m.b - m1.b};
            auto dit = d.terms.find(m2);
            if (dit == d.terms.end()) continue;
            long k = ctx.form().pairing(m1, m2);
            int sgn =
                (!ctx.form().signed_product || k % 2 == 0) ? 1 : -1;
            acc += (c1 * dit->second).mul_monomial(k, -sgn);
        }
        if (!acc.is_zero()) d.terms.emplace(m, std::move(acc));
    }
    return d;
}

// Left-to-right accumulation; callers fix the order.
template <typename C>
TorusElement<C> ordered_product(const std::vector<TorusElement<C>>& factors,
                                const TruncationContext& ctx) {
    TorusElement<C> acc = TorusElement<C>::unit();
    for (auto& f : factors) acc = torus_mul(acc, f, ctx);
    return acc;
}

} // namespace scat
