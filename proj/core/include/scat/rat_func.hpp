#pragma once

#include "scat/half_laurent.hpp"

namespace scat {

// Rational function in q^{1/2} kept in canonical form:
//   gcd(num, den) = 1 over Q in the variable q^{1/2};
//   den has integer coefficients, content 1, minimal exponent 0 and positive
//   leading coefficient.
// With these constraints, equal values have equal representations.
class RatFuncQ {
public:
    RatFuncQ() : num_(), den_(HalfLaurent::one()) {}
    RatFuncQ(HalfLaurent num, HalfLaurent den); // normalizes
    explicit RatFuncQ(const Rat& constant)
        : num_(constant), den_(HalfLaurent::one()) {}
    static RatFuncQ zero() { return RatFuncQ(); }
    static RatFuncQ one() { return RatFuncQ(Rat(1)); }
    static RatFuncQ from_laurent(const HalfLaurent& p) {
        return RatFuncQ(p, HalfLaurent::one());
    }

    const HalfLaurent& num() const { return num_; }
    const HalfLaurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RatFuncQ operator-() const;
    RatFuncQ operator+(const RatFuncQ& o) const;
    RatFuncQ operator-(const RatFuncQ& o) const;
    RatFuncQ operator*(const RatFuncQ& o) const;
    RatFuncQ operator/(const RatFuncQ& o) const;
    RatFuncQ& operator+=(const RatFuncQ& o) { return *this = *this + o; }
    RatFuncQ& operator-=(const RatFuncQ& o) { return *this = *this - o; }
    RatFuncQ& operator*=(const RatFuncQ& o) { return *this = *this * o; }
    bool operator==(const RatFuncQ& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RatFuncQ& o) const { return !(*this == o); }

    RatFuncQ inverse() const;
    RatFuncQ scaled(const Rat& s) const;
    // Multiply by sign * q^{half_exp/2}.
    RatFuncQ mul_monomial(long half_exp, int sign) const;
    // q^{1/2} -> q^{l/2}.
    RatFuncQ scale_variable(long l) const;

    // Exact quotient; throws std::domain_error("not a Laurent polynomial")
    // if the denominator is not 1 (canonical form makes divisibility
    // equivalent to den == 1).
    HalfLaurent to_laurent() const;
    bool is_laurent() const { return den_.is_one(); }

    std::string str() const;

private:
    void normalize();
    HalfLaurent num_, den_;
};

inline RatFuncQ ratfunc_normalize(const HalfLaurent& n, const HalfLaurent& d) {
    return RatFuncQ(n, d);
}

// -1/(l * (q^{l/2} - q^{-l/2})): the level-l initial wall coefficient in the
// default sign convention.
RatFuncQ initial_coefficient(long l);

} // namespace scat
