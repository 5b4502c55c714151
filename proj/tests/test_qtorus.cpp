#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "scat/qtorus.hpp"

using namespace scat;

namespace {

TruncationContext make_ctx(long kappa, Rat ga, Rat gb, Rat cap,
                           std::vector<LatticeClass> gens) {
    TruncationContext ctx(SkewForm{kappa}, std::move(ga), std::move(gb),
                          std::move(cap));
    ctx.generate_support(gens);
    return ctx;
}

RatFuncQ qpow(long half_exp, int sign = 1) {
    return RatFuncQ::from_laurent(HalfLaurent::monomial(half_exp, Rat(sign)));
}

TorusElement<RatFuncQ> z(LatticeClass m, const RatFuncQ& c) {
    return TorusElement<RatFuncQ>::monomial(m, c);
}

} // namespace

TEST_CASE("torus multiplication sign and power") {
    // Grading at sigma = (0,0): phi(a,b) = -2b; generators chosen so all
    // classes of interest are in support.
    auto ctx = make_ctx(3, Rat(0), Rat(-2), Rat(8),
                        {{1, -1}, {0, -1}, {-1, -1}});
    // kappa=3: z^{(1,-1)} z^{(0,-1)}: <(1,-1),(0,-1)> = 3(0*(-1) - 1*(-1)) = 3
    auto p = torus_mul(z({1, -1}, RatFuncQ::one()),
                       z({0, -1}, RatFuncQ::one()), ctx);
    REQUIRE(p.terms.size() == 1);
    CHECK(p.coeff({1, -2}) == qpow(3, -1));
    // z^m z^m = z^{2m}
    auto sq = torus_mul(z({0, -1}, RatFuncQ::one()),
                        z({0, -1}, RatFuncQ::one()), ctx);
    CHECK(sq.coeff({0, -2}) == RatFuncQ::one());
}

TEST_CASE("commutator example") {
    // [z^{(-1,-1)}, z^{(1,0)}] = -(q^{3/2} - q^{-3/2}) z^{(0,-1)} at kappa=3.
    // Grading at sigma=(0,0) gives phi(-1,-1)=2, phi(1,0)=0 — use a point
    // where both are positive: sigma=(-1/2,0): phi(a,b) = a - 2b.
    auto ctx = make_ctx(3, Rat(1), Rat(-2), Rat(8), {{-1, -1}, {1, 0}});
    auto ab = torus_mul(z({-1, -1}, RatFuncQ::one()),
                        z({1, 0}, RatFuncQ::one()), ctx);
    auto ba = torus_mul(z({1, 0}, RatFuncQ::one()),
                        z({-1, -1}, RatFuncQ::one()), ctx);
    TorusElement<RatFuncQ> comm = ab;
    for (auto& [m, c] : ba.terms) comm.add_term(m, -c);
    REQUIRE(comm.terms.size() == 1);
    CHECK(comm.coeff({0, -1}) == qpow(3) - qpow(-3));
}

TEST_CASE("exp, inverse, log") {
    auto ctx = make_ctx(3, Rat(1), Rat(-2), Rat(8), {{-1, -1}, {1, 0}});
    CHECK(torus_exp(TorusElement<RatFuncQ>::zero(), ctx).is_unit());

    RatFuncQ c = RatFuncQ(HalfLaurent::one(),
                          HalfLaurent::monomial(1, Rat(1)) -
                              HalfLaurent::monomial(-1, Rat(1)))
                     .scaled(Rat(-1));
    auto x = z({-1, -1}, c);
    auto e = torus_exp(x, ctx);
    CHECK(e.coeff({0, 0}) == RatFuncQ::one());
    CHECK(e.coeff({-1, -1}) == c);
    auto einv = torus_inverse(e, ctx);
    CHECK(torus_mul(e, einv, ctx).is_unit());
    CHECK(torus_mul(einv, e, ctx).is_unit());
    // inverse(exp(x)) = exp(-x)
    auto eneg = torus_exp(TorusElement<RatFuncQ>::monomial({-1, -1}, -c), ctx);
    CHECK(einv == eneg);
    // log(exp(x)) = x
    CHECK(torus_log(e, ctx) == x);

    // exp truncates: 2*grade > cap => exp(c z^m) = 1 + c z^m.
    // phi(-1,-2) = 1*(-1) - 2*(-2) = 3, so its square (grade 6) exceeds 5.
    auto small = make_ctx(3, Rat(1), Rat(-2), Rat(5), {{-1, -2}, {1, 0}});
    auto e2 = torus_exp(z({-1, -2}, c), small);
    CHECK(e2.terms.size() == 2);

    CHECK_THROWS_AS(torus_exp(TorusElement<RatFuncQ>::unit(), ctx),
                    std::domain_error);
    CHECK_THROWS_AS(torus_inverse(z({-1, -1}, c), ctx), std::domain_error);
}

TEST_CASE("bch at low order") {
    // exp(H1)exp(H2) = exp(H1 + H2 + [H1,H2]/2) when all grade-3 classes are
    // outside the support: brute-force truncated multiplication oracle.
    auto ctx = make_ctx(3, Rat(1), Rat(-2), Rat(4), {{-1, -1}, {1, 0}});
    // grades: (-1,-1) -> 3? phi = 1*(-1) - 2*(-1) = 1; (1,0) -> 1.
    // cap 4 keeps grade <= 4: includes (0,-1) grade 2 etc.; to kill grade-3
    // terms use cap 2.
    auto ctx2 = make_ctx(3, Rat(1), Rat(-2), Rat(2), {{-1, -1}, {1, 0}});
    RatFuncQ c1(HalfLaurent::monomial(1, Rat(2)), q_integer(2));
    RatFuncQ c2(HalfLaurent::monomial(-1, Rat(1)),
                HalfLaurent::one() + HalfLaurent::monomial(2, Rat(3)));
    auto h1 = z({-1, -1}, c1), h2 = z({1, 0}, c2);
    auto lhs = torus_mul(torus_exp(h1, ctx2), torus_exp(h2, ctx2), ctx2);
    auto bracket = torus_mul(h1, h2, ctx2);
    for (auto& [m, c] : torus_mul(h2, h1, ctx2).terms)
        bracket.add_term(m, -c);
    TorusElement<RatFuncQ> arg = h1;
    for (auto& [m, c] : h2.terms) arg.add_term(m, c);
    for (auto& [m, c] : bracket.terms) arg.add_term(m, c.scaled(rat(1, 2)));
    CHECK(lhs == torus_exp(arg, ctx2));
    (void)ctx;
}

TEST_CASE("associativity and collinear commutation on random elements") {
    std::mt19937 rng(777);
    auto ctx = make_ctx(3, Rat(1), Rat(-2), Rat(6),
                        {{-1, -1}, {1, 0}, {0, -1}});
    std::vector<LatticeClass> sup(ctx.support().begin(), ctx.support().end());
    std::uniform_int_distribution<int> pick(0, (int)sup.size() - 1);
    std::uniform_int_distribution<int> cf(-4, 4);
    auto rand_elt = [&] {
        TorusElement<RatFuncQ> e;
        for (int i = 0; i < 4; ++i)
            e.add_term(sup[pick(rng)],
                       RatFuncQ(HalfLaurent::monomial(cf(rng), Rat(cf(rng))),
                                HalfLaurent::one()));
        return e;
    };
    for (int i = 0; i < 30; ++i) {
        auto a = rand_elt(), b = rand_elt(), c = rand_elt();
        CHECK(torus_mul(torus_mul(a, b, ctx), c, ctx) ==
              torus_mul(a, torus_mul(b, c, ctx), ctx));
    }
    // collinear classes commute
    auto u = z({0, -1}, RatFuncQ::one()), v = z({0, -2}, qpow(1));
    CHECK(torus_mul(u, v, ctx) == torus_mul(v, u, ctx));
}

TEST_CASE("truncation is an algebra quotient") {
    std::vector<LatticeClass> gens{{-1, -1}, {1, 0}};
    auto big = make_ctx(3, Rat(1), Rat(-2), Rat(6), gens);
    auto small = make_ctx(3, Rat(1), Rat(-2), Rat(3), gens);
    auto truncate = [&](TorusElement<RatFuncQ> e) {
        TorusElement<RatFuncQ> r;
        for (auto& [m, c] : e.terms)
            if (small.in_support(m)) r.add_term(m, c);
        return r;
    };
    std::mt19937 rng(31337);
    std::vector<LatticeClass> sup(big.support().begin(), big.support().end());
    std::uniform_int_distribution<int> pick(0, (int)sup.size() - 1);
    std::uniform_int_distribution<int> cf(-4, 4);
    for (int i = 0; i < 30; ++i) {
        TorusElement<RatFuncQ> a, b;
        for (int j = 0; j < 4; ++j) {
            a.add_term(sup[pick(rng)], RatFuncQ(Rat(cf(rng))));
            b.add_term(sup[pick(rng)], RatFuncQ(Rat(cf(rng))));
        }
        CHECK(truncate(torus_mul(a, b, big)) ==
              torus_mul(truncate(a), truncate(b), small));
    }
}

TEST_CASE("ordered product basics") {
    auto ctx = make_ctx(3, Rat(1), Rat(-2), Rat(6), {{-1, -1}, {1, 0}});
    CHECK(ordered_product<RatFuncQ>({}, ctx).is_unit());
    auto f = torus_exp(z({1, 0}, RatFuncQ(Rat(2))), ctx);
    CHECK(ordered_product<RatFuncQ>({f}, ctx) == f);
    auto u = z({0, -1}, RatFuncQ::one()), v = z({0, -3}, RatFuncQ(Rat(5)));
    CHECK(ordered_product<RatFuncQ>({u, v}, ctx) ==
          ordered_product<RatFuncQ>({v, u}, ctx));
}
