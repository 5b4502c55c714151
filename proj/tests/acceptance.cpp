// End-to-end acceptance suite: one pass/fail line per criterion, nonzero
// exit if any criterion fails. Heavy extractions are computed once and
// shared across criteria.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "scat/invariants.hpp"
#include "scat/local_scattering.hpp"

using namespace scat;

namespace {

struct Harness {
    int failed = 0;
    std::vector<std::string> errors;

    void check(bool ok, const std::string& what) {
        if (!ok) errors.push_back(what);
    }

    void criterion(int n, const std::string& desc,
                   const std::function<void()>& body) {
        errors.clear();
        auto t0 = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const std::exception& e) {
            errors.push_back(std::string("exception: ") + e.what());
        }
        auto dt = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::ostringstream line;
        line << "criterion " << n << ": "
             << (errors.empty() ? "PASS" : "FAIL") << " (" << desc << ", "
             << dt << "s)";
        std::cout << line.str() << "\n";
        for (auto& e : errors) std::cout << "    " << e << "\n";
        if (!errors.empty()) ++failed;
        std::cout.flush();
    }
};

std::map<std::tuple<long, long, long>, BettiPolynomial> pmemo;
std::map<std::tuple<long, long, long>, TreeReport> tmemo;

const BettiPolynomial& P(long r, long d, long chi) {
    auto key = std::make_tuple(r, d, chi);
    auto it = pmemo.find(key);
    if (it == pmemo.end())
        it = pmemo.emplace(key, poincare({r, d, chi})).first;
    return it->second;
}

const TreeReport& T(long r, long d, long chi) {
    auto key = std::make_tuple(r, d, chi);
    auto it = tmemo.find(key);
    if (it == tmemo.end()) {
        it = tmemo.emplace(key, tree_decomposition({r, d, chi})).first;
        pmemo.emplace(key, it->second.total); // the total is a free Poincare
    }
    return it->second;
}

HalfLaurent qp(long e) { return HalfLaurent::monomial(e, Rat(1)); }

HalfLaurent from_coeffs(std::initializer_list<long> cs) {
    HalfLaurent p;
    long e = 0;
    for (long c : cs) {
        p += qp(e).scaled(Rat(c));
        e += 2;
    }
    return p;
}

std::string poly_str(const HalfLaurent& p) { return p.str(); }

double timed(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
}

} // namespace

int main() {
    Harness h;

    h.criterion(1, "degree 1 Betti numbers, < 1 s", [&] {
        double s = timed([&] { P(0, 1, 1); });
        h.check(s < 1.0, "over time budget");
        h.check(P(0, 1, 1).poly == q_integer(3),
                "P(0,1,1) = " + poly_str(P(0, 1, 1).poly));
    });

    h.criterion(2, "degree 2 Betti numbers, < 10 s", [&] {
        double s = timed([&] { P(0, 2, 1); });
        h.check(s < 10.0, "over time budget");
        h.check(P(0, 2, 1).poly == q_integer(6),
                "P(0,2,1) = " + poly_str(P(0, 2, 1).poly));
    });

    h.criterion(3, "degree 3 Betti numbers, < 60 s each", [&] {
        h.check(timed([&] { P(0, 3, 1); }) < 60.0, "(0,3,1) over budget");
        h.check(timed([&] { P(0, 3, 3); }) < 60.0, "(0,3,3) over budget");
        HalfLaurent expect = q_integer(9) * q_integer(3);
        h.check(P(0, 3, 1).poly == expect,
                "P(0,3,1) = " + poly_str(P(0, 3, 1).poly));
        h.check(P(0, 3, 3).poly == expect,
                "P(0,3,3) = " + poly_str(P(0, 3, 3).poly));
    });

    h.criterion(4, "degree 3 tree decomposition", [&] {
        auto& t33 = T(0, 3, 3);
        h.check(t33.pieces.size() == 2, "(0,3,3) piece count");
        HalfLaurent nine = q_integer(9);
        h.check(t33.pieces.count(MarkerKey{{-1, 3}, {0, 3}}) &&
                    t33.pieces.at(MarkerKey{{-1, 3}, {0, 3}}) ==
                        nine * (qp(0) + qp(4)),
                "(0,3,3) codimension-0 piece");
        h.check(t33.pieces.count(MarkerKey{{-2, 1}, {1, 1}}) &&
                    t33.pieces.at(MarkerKey{{-2, 1}, {1, 1}}) ==
                        nine.shifted(2),
                "(0,3,3) codimension-1 piece");
        h.check(T(0, 1, 1).pieces.size() == 1, "(0,1,1) piece count");
    });

    h.criterion(5, "degree 4 Betti numbers and piece lists, < 10 min", [&] {
        double s = timed([&] {
            T(0, 4, 1);
            T(0, 4, 2);
            T(0, 4, 4);
        });
        h.check(s < 600.0, "over time budget");
        HalfLaurent expect =
            q_integer(12) * from_coeffs({1, 1, 4, 4, 4, 1, 1});
        for (long chi : {1L, 2L, 4L})
            h.check(T(0, 4, chi).total.poly == expect,
                    "P(0,4," + std::to_string(chi) + ")");
        HalfLaurent twelve = q_integer(12);
        auto piece = [&](long chi, MarkerKey k) {
            auto& t = T(0, 4, chi);
            auto it = t.pieces.find(k);
            return it == t.pieces.end() ? HalfLaurent::zero() : it->second;
        };
        h.check(T(0, 4, 1).pieces.size() == 2, "(0,4,1) piece count");
        h.check(piece(1, {{-2, 3}, {-1, 2}, {0, 1}}) ==
                    twelve * from_coeffs({1, 1, 3, 3, 3, 1, 1}),
                "(0,4,1) codimension-0 piece");
        h.check(piece(1, {{-3, 1}, {-1, 1}, {0, 2}}) ==
                    (twelve * q_integer(3)).shifted(4),
                "(0,4,1) codimension-2 piece");
        h.check(T(0, 4, 2).pieces.size() == 3, "(0,4,2) piece count");
        h.check(piece(2, {{-2, 2}, {0, 2}}) ==
                    twelve * from_coeffs({1, 0, 2, 0, 2, 0, 1}),
                "(0,4,2) codimension-0 piece");
        h.check(piece(2, {{-2, 2}, {-1, 2}, {0, 2}}) ==
                    (twelve * from_coeffs({1, 2, 3, 2, 1})).shifted(2),
                "(0,4,2) codimension-1 piece");
        h.check(piece(2, {{-3, 1}, {1, 1}}) == twelve.shifted(6),
                "(0,4,2) codimension-3 piece");
        h.check(T(0, 4, 4).pieces.size() == 2, "(0,4,4) piece count");
        h.check(piece(4, {{-1, 4}, {0, 4}}) ==
                    twelve * from_coeffs({1, 0, 2, 1, 2, 0, 1}),
                "(0,4,4) codimension-0 piece");
        h.check(piece(4, {{-2, 1}, {-1, 1}, {0, 1}, {1, 1}}) ==
                    (twelve * q_integer(3) * q_integer(3)).shifted(2),
                "(0,4,4) codimension-1 piece");
    });

    h.criterion(6, "Euler characteristics 3, 6, 27, 192", [&] {
        long expect[4] = {3, 6, 27, 192};
        for (long d = 1; d <= 4; ++d)
            h.check(P(0, d, 1).poly.evaluate(Rat(1)) == expect[d - 1],
                    "e(0," + std::to_string(d) + ",1)");
    });

    h.criterion(7, "every vertex passes the loop check", [&] {
        Region reg{Rat(-2), Rat(2), Rat(2)};
        auto s = scatter(initial_diagram<RatFuncQ>(-3, 3, 3, reg, Rat(3)));
        h.check(!s.vertex_log.empty(), "no vertices processed");
        for (auto& v : s.vertex_log) {
            TruncationContext ctx = s.context_at(v.p);
            std::vector<LatticeClass> gens;
            for (auto& lr : v.ingoing) gens.push_back(lr.cls);
            for (auto& lr : v.outgoing) gens.push_back(lr.cls);
            ctx.generate_support(gens);
            h.check(loop_check(v.ingoing, v.outgoing, ctx),
                    "loop check failed at a vertex");
        }
    });

    h.criterion(8, "translation equivariance, 3 configurations", [&] {
        struct Config {
            Rat cap;
            long l_max;
            Rat xmin, xmax, smax;
        };
        for (Config c : {Config{Rat(2), 2, Rat(-2), Rat(2), Rat(2)},
                         Config{Rat(3), 3, Rat(-2), Rat(1), rat(3, 2)},
                         Config{Rat(2), 2, Rat(-1), Rat(2), Rat(1)}}) {
            Region reg{c.xmin, c.xmax, c.smax};
            int n_min = static_cast<int>(floor_long(c.xmin - 1));
            int n_max = static_cast<int>(ceil_long(c.xmax + 1));
            auto d = initial_diagram<RatFuncQ>(n_min, n_max, c.l_max, reg,
                                               c.cap);
            h.check(diagrams_equal(psi_translate(scatter(d), 1),
                                   scatter(psi_translate(d, 1))),
                    "equivariance failed");
        }
    });

    h.criterion(9, "sign-twist equivalence at order cap 4", [&] {
        Region reg{Rat(-2), Rat(2), rat(3, 2)};
        auto dm = initial_diagram<RatFuncQ>(-3, 3, 4, reg, Rat(4),
                                            SignConvention::qminus);
        auto dp = initial_diagram<RatFuncQ>(-3, 3, 4, reg, Rat(4),
                                            SignConvention::qplus);
        h.check(diagrams_equal(scatter(dp), sign_twist(scatter(dm))),
                "twisted completion mismatch");
    });

    h.criterion(10, "pentagon oracle at order cap 8", [&] {
        TruncationContext ctx(SkewForm{1}, Rat(1), Rat(1), Rat(8));
        ctx.generate_support({{1, 0}, {0, 1}});
        std::vector<LocalRay<RatFuncQ>> in;
        for (long l = 1; l <= 8; ++l) {
            in.push_back({{l, 0}, initial_coefficient(l)});
            in.push_back({{0, l}, initial_coefficient(l)});
        }
        auto out = complete_vertex(in, {}, ctx);
        auto coef_of = [&](LatticeClass m) {
            for (auto& r : out)
                if (r.cls == m) return r.coef;
            return RatFuncQ::zero();
        };
        h.check(out.size() == 20, "outgoing ray count");
        h.check(coef_of({1, 1}) == initial_coefficient(1),
                "new direction coefficient");
        for (long a = 1; a <= 8; ++a)
            for (long b = 1; a + b <= 8; ++b)
                if (a != b)
                    h.check(coef_of({a, b}).is_zero(),
                            "unexpected class in completion");
        // Brute-force verification of the claimed factorization at low cap
        // before trusting the solver.
        TruncationContext low(SkewForm{1}, Rat(1), Rat(1), Rat(4));
        low.generate_support({{1, 0}, {0, 1}});
        std::vector<LocalRay<RatFuncQ>> in4, out4;
        for (long l = 1; l <= 4; ++l) {
            in4.push_back({{l, 0}, initial_coefficient(l)});
            in4.push_back({{0, l}, initial_coefficient(l)});
            out4.push_back({{l, 0}, initial_coefficient(l)});
            out4.push_back({{0, l}, initial_coefficient(l)});
            if (2 * l <= 4) out4.push_back({{l, l}, initial_coefficient(l)});
        }
        h.check(loop_check(in4, out4, low), "brute-force factorization");
    });

    h.criterion(11, "structural sweep over 20 classes", [&] {
        std::vector<ChargeVector> sweep = {
            {0, 1, 1}, {0, 1, 2}, {0, 2, 1}, {0, 2, 2}, {0, 3, 1},
            {0, 3, 2}, {0, 3, 3}, {0, 4, 1}, {0, 4, 2}, {0, 4, 4},
            {1, 0, 1}, {1, 0, 0}, {1, 0, -1}, {1, 0, -2}, {1, 1, 1},
            {1, 1, 2}, {1, 1, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}};
        for (auto& g : sweep) {
            auto& b = P(g.r, g.d, g.chi);
            std::string name = "(" + std::to_string(g.r) + "," +
                               std::to_string(g.d) + "," +
                               std::to_string(g.chi) + ")";
            if (b.is_zero()) {
                h.check(false, name + " extracted as zero");
                continue;
            }
            h.check(b.dim == moduli_dimension(g), name + " dimension");
            h.check(b.poly.max_exp() == 2 * b.dim, name + " degree");
            for (long e = 0; e <= b.poly.max_exp(); e += 2) {
                Rat c = b.poly.coeff(e);
                h.check(c >= 0 && c.get_den() == 1,
                        name + " coefficient integrality");
                h.check(c == b.poly.coeff(2 * b.dim - e),
                        name + " palindromy");
            }
        }
    });

    h.criterion(12, "Hilbert scheme of two points cross-check", [&] {
        // Value derived independently by torus-fixed-point enumeration (see
        // the invariants unit tests for the enumeration itself).
        h.check(P(1, 0, -1).poly == from_coeffs({1, 2, 3, 2, 1}),
                "P(1,0,-1) = " + poly_str(P(1, 0, -1).poly));
    });

    h.criterion(13, "real-locus Euler numbers", [&] {
        h.check(P(0, 1, 1).poly.evaluate(Rat(-1)) == 1, "e_real(0,1,1)");
        for (auto& [key, b] : pmemo) {
            if (b.is_zero() || b.gamma.content() > 1) continue;
            auto eu = euler_numbers(b);
            h.check(eu.real == b.poly.evaluate(Rat(-1)),
                    "e_real mismatch for a computed class");
        }
    });

    std::cout << (h.failed == 0 ? "all criteria passed"
                                : std::to_string(h.failed) +
                                      " criteria failed")
              << "\n";
    return h.failed == 0 ? 0 : 1;
}
