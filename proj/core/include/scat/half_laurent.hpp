#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scat/rational.hpp"

namespace scat {

// Laurent polynomial in q^{1/2}. Exponents are stored as integers e meaning
// q^{e/2}, so no fractional exponents ever appear. Dense representation:
// coefficient vector plus the exponent of its first entry; the first and
// last entries are nonzero whenever the polynomial is.
class HalfLaurent {
public:
    HalfLaurent() = default;
    explicit HalfLaurent(const Rat& constant);

    // coef * q^{half_exp/2}
    static HalfLaurent monomial(long half_exp, const Rat& coef);
    static HalfLaurent zero() { return HalfLaurent(); }
    static HalfLaurent one() { return HalfLaurent(Rat(1)); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    Rat coeff(long half_exp) const;
    long min_exp() const; // throws on zero
    long max_exp() const; // throws on zero
    std::size_t term_count() const;
    // Exponent -> coefficient map of the nonzero terms (materialized).
    std::map<long, Rat> terms() const;

    HalfLaurent operator-() const;
    HalfLaurent operator+(const HalfLaurent& o) const;
    HalfLaurent operator-(const HalfLaurent& o) const;
    HalfLaurent operator*(const HalfLaurent& o) const;
    HalfLaurent& operator+=(const HalfLaurent& o);
    HalfLaurent& operator-=(const HalfLaurent& o);
    HalfLaurent& operator*=(const HalfLaurent& o);
    bool operator==(const HalfLaurent& o) const {
        return off_ == o.off_ && c_ == o.c_;
    }
    bool operator!=(const HalfLaurent& o) const { return !(*this == o); }

    HalfLaurent scaled(const Rat& s) const;       // multiply all coefficients
    HalfLaurent shifted(long half_exp) const;     // multiply by q^{half_exp/2}

    // q^{1/2} -> q^{l/2}: every exponent multiplied by l.
    HalfLaurent scale_variable(long l) const;

    // Substitute q = value. Requires all exponents even (pure powers of q)
    // unless value == 1; throws otherwise, and on value == 0 with negative
    // exponents.
    Rat evaluate(const Rat& q_value) const;

    bool all_exponents_even() const;
    // Symmetric under q^{1/2} -> q^{-1/2}?
    bool is_symmetric() const;

    // Exact division: *this = q * d + r with deg(r) < deg(d) after aligning
    // minimal exponents. Returns quotient and remainder.
    struct DivMod;
    DivMod divmod(const HalfLaurent& d) const;

    // Monic gcd over Q in the variable q^{1/2} (units q^{k/2} quotiented out:
    // both inputs are shifted to minimal exponent 0 first).
    static HalfLaurent gcd(const HalfLaurent& a, const HalfLaurent& b);

    // Positive rational s such that s * (*this) has integer coefficients with
    // content 1. Requires nonzero.
    Rat content_normalizer() const;

    Rat leading_coeff() const; // coefficient of max_exp; throws on zero

    std::string str() const; // human-readable, e.g. "q^-1 + 1 + q"

private:
    void normalize_bounds(); // restore the nonzero-endpoint invariant
    long off_ = 0;           // exponent of c_[0]
    std::vector<Rat> c_;
};

struct HalfLaurent::DivMod {
    HalfLaurent quot;
    HalfLaurent rem;
};

inline HalfLaurent operator*(const Rat& s, const HalfLaurent& p) {
    return p.scaled(s);
}

// [k]_q = 1 + q + ... + q^{k-1}
HalfLaurent q_integer(long k);

} // namespace scat
