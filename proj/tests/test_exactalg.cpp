#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "scat/marker_poly.hpp"

using namespace scat;

namespace {

// Independent long-division oracle on dense coefficient vectors (ascending
// powers of q^{1/2}, both inputs shifted to minimal exponent 0). Returns the
// quotient only when division is exact, written without reference to
// HalfLaurent::divmod.
bool dense_exact_divide(std::vector<Rat> num, const std::vector<Rat>& den,
                        std::vector<Rat>& quot) {
    while (!num.empty() && num.back() == 0) num.pop_back();
    std::vector<Rat> d = den;
    while (!d.empty() && d.back() == 0) d.pop_back();
    if (d.empty()) return false;
    if (num.empty()) {
        quot.clear();
        return true;
    }
    if (num.size() < d.size()) return false;
    quot.assign(num.size() - d.size() + 1, Rat(0));
    for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
        Rat f = num[i + d.size() - 1] / d.back();
        quot[i] = f;
        for (std::size_t j = 0; j < d.size(); ++j) num[i + j] -= f * d[j];
    }
    for (auto& c : num)
        if (c != 0) return false;
    return true;
}

HalfLaurent from_dense(const std::vector<Rat>& v, long min_exp) {
    HalfLaurent p;
    for (std::size_t i = 0; i < v.size(); ++i)
        p += HalfLaurent::monomial(min_exp + static_cast<long>(i), v[i]);
    return p;
}

std::vector<Rat> to_dense(const HalfLaurent& p, long min_exp) {
    std::vector<Rat> v;
    if (p.is_zero()) return v;
    v.assign(p.max_exp() - min_exp + 1, Rat(0));
    for (auto& [e, c] : p.terms()) v[e - min_exp] = c;
    return v;
}

HalfLaurent random_poly(std::mt19937& rng, int max_terms, int exp_range) {
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::uniform_int_distribution<int> ex(-exp_range, exp_range);
    std::uniform_int_distribution<int> cf(-6, 6);
    HalfLaurent p;
    int n = nt(rng);
    for (int i = 0; i < n; ++i)
        p += HalfLaurent::monomial(ex(rng), rat(cf(rng), 1 + (cf(rng) & 3)));
    return p;
}

RatFuncQ random_ratfunc(std::mt19937& rng) {
    HalfLaurent n = random_poly(rng, 4, 4);
    HalfLaurent d;
    while (d.is_zero()) d = random_poly(rng, 3, 3);
    return RatFuncQ(n, d);
}

const HalfLaurent qh = HalfLaurent::monomial(2, Rat(1));   // q
const HalfLaurent qr = HalfLaurent::monomial(1, Rat(1));   // q^{1/2}

} // namespace

TEST_CASE("half-laurent ring basics") {
    HalfLaurent a = qh + HalfLaurent::one();                  // q + 1
    HalfLaurent b = qh - HalfLaurent::one();                  // q - 1
    CHECK(a * b == qh * qh - HalfLaurent::one());             // q^2 - 1
    CHECK((a - a).is_zero());
    CHECK(a.coeff(2) == 1);
    CHECK(q_integer(3).evaluate(Rat(1)) == 3);
    CHECK(q_integer(3).evaluate(Rat(-1)) == 1);
    CHECK((qr + HalfLaurent::monomial(-1, Rat(1))).is_symmetric());
    CHECK_THROWS(qr.evaluate(Rat(-1)));
}

TEST_CASE("laurent division against dense oracle") {
    // (q^{3/2} - q^{-3/2}) / (q^{1/2} - q^{-1/2}) = q + 1 + q^{-1}
    HalfLaurent n = HalfLaurent::monomial(3, Rat(1)) -
                    HalfLaurent::monomial(-3, Rat(1));
    HalfLaurent d = qr - HalfLaurent::monomial(-1, Rat(1));
    auto dm = n.divmod(d);
    CHECK(dm.rem.is_zero());
    HalfLaurent expect = qh + HalfLaurent::one() +
                         HalfLaurent::monomial(-2, Rat(1));
    CHECK(dm.quot == expect);
    // Same computation through the oracle.
    std::vector<Rat> quot;
    REQUIRE(dense_exact_divide(to_dense(n, -3), to_dense(d, -1), quot));
    CHECK(from_dense(quot, -2) == expect);

    std::mt19937 rng(20240817);
    for (int i = 0; i < 300; ++i) {
        HalfLaurent p = random_poly(rng, 5, 5);
        HalfLaurent q;
        while (q.is_zero()) q = random_poly(rng, 4, 4);
        HalfLaurent prod = p * q;
        auto r = prod.divmod(q);
        CHECK(r.rem.is_zero());
        CHECK(r.quot == p);
        if (!prod.is_zero()) {
            std::vector<Rat> qd;
            long shift = prod.min_exp() - q.min_exp();
            REQUIRE(dense_exact_divide(to_dense(prod, prod.min_exp()),
                                       to_dense(q, q.min_exp()), qd));
            CHECK(from_dense(qd, shift) == p);
        }
    }
}

TEST_CASE("ratfunc canonical form") {
    // (q^{3/2}-q^{-3/2}, q^{1/2}-q^{-1/2}) -> q + 1 + q^{-1}
    HalfLaurent n = HalfLaurent::monomial(3, Rat(1)) -
                    HalfLaurent::monomial(-3, Rat(1));
    HalfLaurent d = qr - HalfLaurent::monomial(-1, Rat(1));
    RatFuncQ f = ratfunc_normalize(n, d);
    CHECK(f.is_laurent());
    CHECK(f.to_laurent() ==
          qh + HalfLaurent::one() + HalfLaurent::monomial(-2, Rat(1)));

    CHECK(ratfunc_normalize(HalfLaurent::zero(), qh - HalfLaurent::one())
              .is_zero());
    CHECK(ratfunc_normalize(qh - HalfLaurent::one(), qh - HalfLaurent::one())
              .is_one());
    CHECK_THROWS_AS(ratfunc_normalize(qh, HalfLaurent::zero()),
                    std::domain_error);

    // 1/(q-1) is not a Laurent polynomial.
    RatFuncQ g(HalfLaurent::one(), qh - HalfLaurent::one());
    CHECK_THROWS_AS(g.to_laurent(), std::domain_error);
    // (q^2-1)/(q-1) = q+1
    CHECK(RatFuncQ(qh * qh - HalfLaurent::one(), qh - HalfLaurent::one())
              .to_laurent() == qh + HalfLaurent::one());

    // Denominator canonicalization: integer content 1, min exp 0, positive
    // leading coefficient.
    RatFuncQ h(HalfLaurent::one(),
               (qh - HalfLaurent::one()).scaled(rat(-3, 7)).shifted(-4));
    CHECK(h.den() == qh - HalfLaurent::one());
}

TEST_CASE("ratfunc field axioms and canonicality on random inputs") {
    std::mt19937 rng(987123);
    for (int i = 0; i < 120; ++i) {
        RatFuncQ a = random_ratfunc(rng), b = random_ratfunc(rng),
                 c = random_ratfunc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == RatFuncQ::zero());
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == RatFuncQ::one());
            // normalize(n*c, d*c) == normalize(n, d)
            HalfLaurent scale;
            while (scale.is_zero()) scale = random_poly(rng, 3, 3);
            RatFuncQ scaled_rep(a.num() * scale, a.den() * scale);
            CHECK(scaled_rep == a);
        }
    }
}

TEST_CASE("laurent scale is a ring homomorphism") {
    HalfLaurent p = HalfLaurent::monomial(-1, Rat(1)) + HalfLaurent::one() +
                    qh; // q^{-1/2} + 1 + q
    CHECK(p.scale_variable(1) == p);
    CHECK((HalfLaurent::one() + qh).scale_variable(2) ==
          HalfLaurent::one() + qh * qh);
    HalfLaurent e = HalfLaurent::monomial(-2, Rat(1)) + HalfLaurent::one() +
                    qh; // q^{-1}+1+q
    CHECK(e.scale_variable(3) ==
          HalfLaurent::monomial(-6, Rat(1)) + HalfLaurent::one() +
              HalfLaurent::monomial(6, Rat(1)));
    std::mt19937 rng(5150);
    for (int i = 0; i < 100; ++i) {
        HalfLaurent a = random_poly(rng, 4, 4), b = random_poly(rng, 4, 4);
        for (long l : {2L, 3L, 5L})
            CHECK((a * b).scale_variable(l) ==
                  a.scale_variable(l) * b.scale_variable(l));
    }
}

TEST_CASE("evaluate golden values") {
    HalfLaurent nine_three = q_integer(9) * q_integer(3);
    CHECK(nine_three.evaluate(Rat(1)) == 27);
    CHECK(q_integer(3).evaluate(Rat(1)) == 3);
    CHECK(q_integer(3).evaluate(Rat(-1)) == 1);
}

TEST_CASE("marker poly arithmetic") {
    RatFuncQ one = RatFuncQ::one();
    MarkerPoly a = MarkerPoly::marker(0, 1, one, 4);
    MarkerPoly b = MarkerPoly::marker(-1, 1, one, 4);
    MarkerPoly p = a * b;
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms().begin()->first == MarkerKey{{-1, 1}, {0, 1}});

    // degree cap drops high-degree terms
    MarkerPoly big = MarkerPoly::marker(0, 3, one, 4);
    CHECK((big * big).is_zero());
    CHECK(!(a * big).is_zero());

    // cap 0 collapses to plain coefficient arithmetic
    std::mt19937 rng(424242);
    for (int i = 0; i < 40; ++i) {
        RatFuncQ x = random_ratfunc(rng), y = random_ratfunc(rng);
        MarkerPoly mx = MarkerPoly::from_ratfunc(x, 0),
                   my = MarkerPoly::from_ratfunc(y, 0);
        CHECK((mx * my).total() == x * y);
        CHECK((mx + my).total() == x + y);
    }

    // scale_variable: q-scaling plus l-fold cover on leaf multiplicities
    MarkerPoly m = MarkerPoly::marker(2, 1, RatFuncQ::from_laurent(q_integer(2)), 9);
    MarkerPoly m3 = m.scale_variable(3);
    REQUIRE(m3.terms().size() == 1);
    CHECK(m3.terms().begin()->first == MarkerKey{{2, 3}});
    CHECK(m3.terms().begin()->second.to_laurent() ==
          HalfLaurent::one() + HalfLaurent::monomial(6, Rat(1)));
}
