#pragma once

#include <functional>
#include <map>

#include "scat/stability.hpp"

namespace scat {

struct BettiPolynomial {
    HalfLaurent poly; // polynomial in q (even half-exponents)
    ChargeVector gamma;
    long dim = 0;
    bool is_zero() const { return poly.is_zero(); }
    std::vector<Rat> coefficients() const { // ascending powers of q
        std::vector<Rat> cs;
        if (poly.is_zero()) return {Rat(0)};
        for (long e = 0; e <= poly.max_exp(); e += 2)
            cs.push_back(poly.coeff(e));
        return cs;
    }
};

struct TreeReport {
    std::map<MarkerKey, HalfLaurent> pieces;
    BettiPolynomial total;
};

struct EulerNumbers {
    Rat plus;     // P(1)
    Rat minus;    // (-1)^dim P(1)
    Rat real;     // P(-1); geometric meaning proven for primitive classes
    bool primitive_only_flag = false; // set when gamma is non-primitive
};

struct ExtractConfig {
    Rat s_target = Rat(0);       // 0: probe height policy default
    Rat order_cap = Rat(0);      // 0: phi at the probe of the target class
    int retries = 2;             // extra stabilization doublings allowed
    std::optional<PointQ> probe; // explicit probe on L_gamma (overrides
                                 // policy; stabilization still doubles)
};

namespace detail {

template <typename C>
C coeff_from_ratfunc(const RatFuncQ& f);
template <>
inline RatFuncQ coeff_from_ratfunc<RatFuncQ>(const RatFuncQ& f) {
    return f;
}
template <>
inline MarkerPoly coeff_from_ratfunc<MarkerPoly>(const RatFuncQ& f) {
    return MarkerPoly::from_ratfunc(f);
}

// Check exact Laurent-ness of a coefficient; throws "under-converged
// diagram" via dt_invert callers.
inline bool coeff_is_laurent(const RatFuncQ& f) { return f.is_laurent(); }
inline bool coeff_is_laurent(const MarkerPoly& f) {
    for (auto& [k, v] : f.terms())
        if (!v.is_laurent()) return false;
    return true;
}

} // namespace detail

// Divisor inversion: from the wall-function coefficients h_j of the classes
// j * m_{gamma/k} (j running over the divisors of k = content), recover the
// symmetrized invariant of gamma:
//   Ib_j = -(q^{1/2}-q^{-1/2}) h_j
//          - sum_{l | j, l >= 2} ((q^{1/2}-q^{-1/2})/l)
//            * scale(Ib_{j/l}, l) / (q^{l/2}-q^{-l/2}).
// C is RatFuncQ or MarkerPoly (markers follow the l-fold cover convention).
template <typename C>
C dt_invert_general(const std::map<long, C>& h, long k) {
    HalfLaurent s = HalfLaurent::monomial(1, Rat(1)) -
                    HalfLaurent::monomial(-1, Rat(1));
    std::map<long, C> memo;
    std::function<C(long)> ib = [&](long j) -> C {
        auto it = memo.find(j);
        if (it != memo.end()) return it->second;
        auto hj = h.find(j);
        C acc = hj == h.end()
                    ? C::zero()
                    : hj->second * detail::coeff_from_ratfunc<C>(
                          RatFuncQ::from_laurent(-s));
        for (long l = 2; l <= j; ++l) {
            if (j % l != 0) continue;
            HalfLaurent dl = HalfLaurent::monomial(l, Rat(1)) -
                             HalfLaurent::monomial(-l, Rat(1));
            RatFuncQ factor = RatFuncQ(-s, dl).scaled(rat(1, l));
            acc += ib(j / l).scale_variable(l) *
                   detail::coeff_from_ratfunc<C>(factor);
        }
        if (!detail::coeff_is_laurent(acc))
            throw std::runtime_error("under-converged diagram");
        memo[j] = acc;
        return acc;
    };
    return ib(k);
}

inline HalfLaurent dt_invert(const std::map<long, RatFuncQ>& h, long k) {
    return dt_invert_general<RatFuncQ>(h, k).to_laurent();
}

// One diagram run: build the initial data around the probe, complete it, and
// read the wall-function coefficients of all divisor classes at the probe.
template <typename C>
C extract_ib(const ChargeVector& g, const PointQ& probe, Rat order_cap,
             bool markers, SignConvention conv = SignConvention::qminus,
             Diagram<C>* keep_diagram = nullptr) {
    LatticeClass m_gamma = g.ray_class();
    long k = g.content();
    ChargeVector gp = g.divided_by(k);
    Rat cap = order_cap != 0 ? order_cap : phi(probe, m_gamma);
    if (cap < phi(probe, m_gamma))
        throw std::domain_error("order cap below target grade");
    // x-window from the ancestor-chain bound |x' - x| <= phi/2, plus the
    // drift of x along the target ray itself (zero for vertical classes).
    Rat w = (g.r == 0 ? cap / 2 : cap) + 1;
    Region region{probe.x - w, probe.x + w, probe.skey()};
    long l_max = ceil_long(cap);
    int n_min = static_cast<int>(ceil_long(region.xmin - 1));
    int n_max = static_cast<int>(floor_long(region.xmax + 1));
    Diagram<C> d = initial_diagram<C>(n_min, n_max, l_max, region, cap, conv,
                                      markers, l_max);
    Diagram<C> s = scatter(d);
    std::map<long, C> h;
    for (long j = 1; j <= k; ++j) {
        if (k % j != 0) continue;
        h[j] = function_at(s, probe, j * gp.ray_class());
    }
    if (keep_diagram) *keep_diagram = std::move(s);
    return dt_invert_general<C>(h, k);
}

namespace detail {

inline PointQ perturb_probe(const ChargeVector& g, PointQ p, int attempt) {
    Rat eps = rat(attempt, 997);
    if (g.r == 0) return {p.x, p.y + eps};
    Rat x = p.x - (g.r > 0 ? eps : -eps);
    Rat y = (Rat(g.chi) - g.r - rat(3 * g.d, 2) - g.d * x) / g.r;
    return {x, y};
}

template <typename C>
C stabilized_ib(const ChargeVector& g, const ExtractConfig& cfg,
                bool markers) {
    Rat s = cfg.s_target != 0 ? cfg.s_target : default_probe_height(g);
    auto run_at = [&](const Rat& height) -> C {
        PointQ probe =
            cfg.probe && height == cfg.probe->skey()
                ? *cfg.probe
                : probe_point(g, height);
        for (int attempt = 1;; ++attempt) {
            try {
                return extract_ib<C>(g, probe, cfg.order_cap, markers);
            } catch (const std::runtime_error& e) {
                if (std::string(e.what()) != "probe on singular point" ||
                    attempt > 12)
                    throw;
                probe = perturb_probe(g, probe, attempt);
            }
        }
    };
    if (cfg.probe) s = cfg.probe->skey();
    C prev = run_at(s);
    for (int round = 0; round <= cfg.retries; ++round) {
        s = 2 * s;
        C next = run_at(s);
        if (prev == next) return next;
        prev = next;
    }
    throw std::runtime_error("not stabilized");
}

inline BettiPolynomial ib_to_betti(const HalfLaurent& ib,
                                   const ChargeVector& g) {
    BettiPolynomial b;
    b.gamma = g;
    b.dim = ib.is_zero() ? 0 : moduli_dimension(g);
    if (ib.is_zero()) return b;
    if (!ib.is_symmetric())
        throw std::runtime_error("under-converged diagram");
    HalfLaurent p = ib.shifted(b.dim);
    if (b.dim % 2 != 0) p = p.scaled(Rat(-1));
    if (!p.all_exponents_even() || p.min_exp() < 0)
        throw std::runtime_error("under-converged diagram");
    b.poly = p;
    return b;
}

} // namespace detail

// Full pipeline: probe -> region -> initial diagram -> scatter -> read-out
// -> divisor inversion -> P(q) = (-1)^dim q^{dim/2} Ib(q^{1/2}), with
// stabilization by doubling the probe's x^2+2y.
inline BettiPolynomial poincare(const ChargeVector& g,
                                const ExtractConfig& cfg = {}) {
    if (g.in_gamma0()) {
        BettiPolynomial b;
        b.gamma = g;
        if (g.chi == 1) { // the plane: 1 + q + q^2
            b.dim = 2;
            b.poly = q_integer(3);
        }
        return b; // other Gamma^0: no stable objects
    }
    HalfLaurent ib =
        detail::stabilized_ib<RatFuncQ>(g, cfg, false).to_laurent();
    return detail::ib_to_betti(ib, g);
}

inline std::map<std::pair<long, long>, Rat> hodge_table(
    const BettiPolynomial& b) {
    std::map<std::pair<long, long>, Rat> t;
    if (b.poly.is_zero()) return t;
    for (long e = 0; e <= b.poly.max_exp(); e += 2) {
        Rat c = b.poly.coeff(e);
        if (c != 0) t[{e / 2, e / 2}] = c;
    }
    return t;
}

inline EulerNumbers euler_numbers(const BettiPolynomial& b) {
    EulerNumbers e;
    e.plus = b.poly.evaluate(Rat(1));
    e.minus = (b.dim % 2 == 0) ? e.plus : -e.plus;
    e.real = b.poly.evaluate(Rat(-1));
    e.primitive_only_flag = b.gamma.content() > 1;
    return e;
}

inline std::map<std::pair<long, long>, Rat> hodge_table(
    const ChargeVector& g, const ExtractConfig& cfg = {}) {
    return hodge_table(poincare(g, cfg));
}

inline EulerNumbers euler_numbers(const ChargeVector& g,
                                  const ExtractConfig& cfg = {}) {
    return euler_numbers(poincare(g, cfg));
}

// Does some split of the leaf multiset into m_n^+ / m_n^- units balance to
// m_gamma? (delta_n = (# of minus units) - (# of plus units) at point n.)
bool leaf_balance_feasible(const MarkerKey& leaves, const ChargeVector& g);

inline bool leaf_balance_feasible(const MarkerKey& leaves,
                                  const ChargeVector& g, int idx, long dr,
                                  long dd) {
    if (idx == static_cast<int>(leaves.size())) return dr == 0 && dd == 0;
    auto [n, mult] = leaves[idx];
    long rest = 0;
    for (std::size_t i = idx; i < leaves.size(); ++i)
        rest += leaves[i].second;
    if (std::abs(dr) > rest) return false;
    for (long delta = -mult; delta <= mult; delta += 2)
        if (leaf_balance_feasible(leaves, g, idx + 1, dr - delta,
                                  dd - n * delta))
            return true;
    return false;
}

inline bool leaf_balance_feasible(const MarkerKey& leaves,
                                  const ChargeVector& g) {
    return leaf_balance_feasible(leaves, g, 0, g.r, g.d);
}

// Leaf-content tree decomposition via marker variables.
inline TreeReport tree_decomposition(const ChargeVector& g,
                                     const ExtractConfig& cfg = {}) {
    TreeReport rep;
    if (g.in_gamma0()) {
        rep.total = poincare(g, cfg);
        if (!rep.total.poly.is_zero()) rep.pieces[{}] = rep.total.poly;
        return rep;
    }
    MarkerPoly ib = detail::stabilized_ib<MarkerPoly>(g, cfg, true);
    long dim = moduli_dimension(g);
    HalfLaurent total;
    for (auto& [k, f] : ib.terms()) {
        HalfLaurent piece = f.to_laurent().shifted(dim);
        if (dim % 2 != 0) piece = piece.scaled(Rat(-1));
        if (piece.is_zero()) continue;
        if (!leaf_balance_feasible(k, g))
            throw std::runtime_error("tree piece violates class balance");
        rep.pieces[k] = piece;
        total += piece;
    }
    rep.total = detail::ib_to_betti(
        dim % 2 != 0 ? (-total).shifted(-dim) : total.shifted(-dim), g);
    return rep;
}

struct ChiIndependenceReport {
    long d = 0;
    std::vector<std::pair<long, BettiPolynomial>> entries; // (chi, P)
    bool all_equal = true;
};

inline ChiIndependenceReport chi_independence(long d,
                                              const ExtractConfig& cfg = {}) {
    if (d < 1) throw std::domain_error("d must be positive");
    ChiIndependenceReport rep;
    rep.d = d;
    for (long g = 1; g <= d; ++g) {
        if (d % g != 0) continue; // one chi per gcd class: chi = g
        rep.entries.emplace_back(g, poincare({0, d, g}, cfg));
    }
    for (auto& [chi, b] : rep.entries)
        if (!(b.poly == rep.entries.front().second.poly))
            rep.all_equal = false;
    return rep;
}

} // namespace scat
