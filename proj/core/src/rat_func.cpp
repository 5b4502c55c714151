#include "scat/rat_func.hpp"

namespace scat {

RatFuncQ::RatFuncQ(HalfLaurent num, HalfLaurent den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("division by zero");
    normalize();
}

void RatFuncQ::normalize() {
    if (num_.is_zero()) {
        den_ = HalfLaurent::one();
        return;
    }
    // Split off the unit q^{k/2} factors.
    long sn = num_.min_exp();
    long sd = den_.min_exp();
    // Unit denominator: fold it into the numerator directly.
    if (sd == den_.max_exp()) {
        num_ = num_.scaled(Rat(1) / den_.leading_coeff()).shifted(-sd);
        den_ = HalfLaurent::one();
        return;
    }
    HalfLaurent n0 = num_.shifted(-sn);
    HalfLaurent d0 = den_.shifted(-sd);
    // A unit numerator shares no polynomial factor with the denominator.
    if (sn != num_.max_exp()) {
        HalfLaurent g = HalfLaurent::gcd(n0, d0);
        if (!g.is_one()) {
            n0 = n0.divmod(g).quot;
            d0 = d0.divmod(g).quot;
        }
    }
    // Denominator: integer coefficients, content 1, positive leading.
    Rat s = d0.content_normalizer();
    if (d0.leading_coeff() < 0) s = -s;
    den_ = d0.scaled(s);
    num_ = n0.scaled(s).shifted(sn - sd);
}

RatFuncQ RatFuncQ::operator-() const {
    RatFuncQ r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFuncQ RatFuncQ::operator+(const RatFuncQ& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) {
        RatFuncQ r;
        r.num_ = num_ + o.num_;
        r.den_ = HalfLaurent::one();
        return r;
    }
    if (den_ == o.den_) return RatFuncQ(num_ + o.num_, den_);
    return RatFuncQ(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFuncQ RatFuncQ::operator-(const RatFuncQ& o) const { return *this + (-o); }

RatFuncQ RatFuncQ::operator*(const RatFuncQ& o) const {
    if (is_zero() || o.is_zero()) return zero();
    if (den_.is_one() && o.den_.is_one()) {
        RatFuncQ r;
        r.num_ = num_ * o.num_;
        r.den_ = HalfLaurent::one();
        return r;
    }
    return RatFuncQ(num_ * o.num_, den_ * o.den_);
}

RatFuncQ RatFuncQ::operator/(const RatFuncQ& o) const {
    return *this * o.inverse();
}

RatFuncQ RatFuncQ::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    return RatFuncQ(den_, num_);
}

RatFuncQ RatFuncQ::scaled(const Rat& s) const {
    if (s == 0) return zero();
    RatFuncQ r;
    r.num_ = num_.scaled(s);
    r.den_ = den_;
    return r;
}

RatFuncQ RatFuncQ::mul_monomial(long half_exp, int sign) const {
    RatFuncQ r;
    r.num_ = num_.shifted(half_exp).scaled(Rat(sign));
    r.den_ = den_;
    // A pure unit times a canonical form stays canonical.
    return r;
}

RatFuncQ RatFuncQ::scale_variable(long l) const {
    if (l == 1) return *this;
    return RatFuncQ(num_.scale_variable(l), den_.scale_variable(l));
}

HalfLaurent RatFuncQ::to_laurent() const {
    if (!den_.is_one()) throw std::domain_error("not a Laurent polynomial");
    return num_;
}

std::string RatFuncQ::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

RatFuncQ initial_coefficient(long l) {
    // -1/l * 1/(q^{l/2} - q^{-l/2})
    HalfLaurent den = HalfLaurent::monomial(l, Rat(1)) -
                      HalfLaurent::monomial(-l, Rat(1));
    return RatFuncQ(HalfLaurent(rat(-1, l)), den);
}

} // namespace scat
