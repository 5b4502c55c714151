#include "scat/half_laurent.hpp"

#include <algorithm>
#include <sstream>

namespace scat {

HalfLaurent::HalfLaurent(const Rat& constant) {
    if (constant != 0) {
        off_ = 0;
        c_.push_back(constant);
    }
}

HalfLaurent HalfLaurent::monomial(long half_exp, const Rat& coef) {
    HalfLaurent p;
    if (coef != 0) {
        p.off_ = half_exp;
        p.c_.push_back(coef);
    }
    return p;
}

void HalfLaurent::normalize_bounds() {
    std::size_t lo = 0, hi = c_.size();
    while (hi > lo && c_[hi - 1] == 0) --hi;
    while (lo < hi && c_[lo] == 0) ++lo;
    if (lo == hi) {
        c_.clear();
        off_ = 0;
        return;
    }
    if (hi != c_.size()) c_.resize(hi);
    if (lo != 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lo));
        off_ += static_cast<long>(lo);
    }
}

bool HalfLaurent::is_one() const {
    return c_.size() == 1 && off_ == 0 && c_[0] == 1;
}

Rat HalfLaurent::coeff(long half_exp) const {
    long i = half_exp - off_;
    if (i < 0 || i >= static_cast<long>(c_.size())) return Rat(0);
    return c_[static_cast<std::size_t>(i)];
}

long HalfLaurent::min_exp() const {
    if (c_.empty()) throw std::domain_error("min_exp of zero polynomial");
    return off_;
}

long HalfLaurent::max_exp() const {
    if (c_.empty()) throw std::domain_error("max_exp of zero polynomial");
    return off_ + static_cast<long>(c_.size()) - 1;
}

std::size_t HalfLaurent::term_count() const {
    std::size_t n = 0;
    for (auto& v : c_)
        if (v != 0) ++n;
    return n;
}

std::map<long, Rat> HalfLaurent::terms() const {
    std::map<long, Rat> m;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) m.emplace(off_ + static_cast<long>(i), c_[i]);
    return m;
}

HalfLaurent HalfLaurent::operator-() const {
    HalfLaurent r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    long lo = std::min(off_, o.off_);
    long hi = std::max(max_exp(), o.max_exp());
    if (lo < off_ || hi > max_exp()) {
        std::vector<Rat> nc(static_cast<std::size_t>(hi - lo + 1));
        for (std::size_t i = 0; i < c_.size(); ++i)
            nc[static_cast<std::size_t>(off_ - lo) + i] = std::move(c_[i]);
        c_ = std::move(nc);
        off_ = lo;
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[static_cast<std::size_t>(o.off_ - off_) + i] += o.c_[i];
    normalize_bounds();
    return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) {
        *this = o;
        for (auto& v : c_) v = -v;
        return *this;
    }
    long lo = std::min(off_, o.off_);
    long hi = std::max(max_exp(), o.max_exp());
    if (lo < off_ || hi > max_exp()) {
        std::vector<Rat> nc(static_cast<std::size_t>(hi - lo + 1));
        for (std::size_t i = 0; i < c_.size(); ++i)
            nc[static_cast<std::size_t>(off_ - lo) + i] = std::move(c_[i]);
        c_ = std::move(nc);
        off_ = lo;
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[static_cast<std::size_t>(o.off_ - off_) + i] -= o.c_[i];
    normalize_bounds();
    return *this;
}

HalfLaurent HalfLaurent::operator+(const HalfLaurent& o) const {
    HalfLaurent r = *this;
    r += o;
    return r;
}

HalfLaurent HalfLaurent::operator-(const HalfLaurent& o) const {
    HalfLaurent r = *this;
    r -= o;
    return r;
}

HalfLaurent HalfLaurent::operator*(const HalfLaurent& o) const {
    HalfLaurent r;
    if (c_.empty() || o.c_.empty()) return r;
    r.off_ = off_ + o.off_;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    r.normalize_bounds();
    return r;
}

HalfLaurent& HalfLaurent::operator*=(const HalfLaurent& o) {
    *this = *this * o;
    return *this;
}

HalfLaurent HalfLaurent::scaled(const Rat& s) const {
    HalfLaurent r;
    if (s == 0 || c_.empty()) return r;
    r.off_ = off_;
    r.c_.reserve(c_.size());
    for (auto& v : c_) r.c_.push_back(v * s);
    return r;
}

HalfLaurent HalfLaurent::shifted(long half_exp) const {
    HalfLaurent r = *this;
    if (!r.c_.empty()) r.off_ += half_exp;
    return r;
}

HalfLaurent HalfLaurent::scale_variable(long l) const {
    if (l < 1) throw std::domain_error("scale_variable requires l >= 1");
    HalfLaurent r;
    if (c_.empty() || l == 1) {
        r = *this;
        return r;
    }
    r.off_ = off_ * l;
    r.c_.assign((c_.size() - 1) * static_cast<std::size_t>(l) + 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i * static_cast<std::size_t>(l)] = c_[i];
    return r;
}

Rat HalfLaurent::evaluate(const Rat& q_value) const {
    Rat acc(0);
    if (q_value == 1) {
        for (auto& v : c_) acc += v;
        return acc;
    }
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        long e = off_ + static_cast<long>(i);
        if (e % 2 != 0)
            throw std::domain_error("evaluate: odd half-power of q present");
        long k = e / 2;
        if (q_value == 0 && k < 0)
            throw std::domain_error("evaluate: negative power at q = 0");
        Rat p(1);
        Rat base = k >= 0 ? q_value : Rat(1) / q_value;
        for (long j = 0; j < (k >= 0 ? k : -k); ++j) p *= base;
        acc += c_[i] * p;
    }
    return acc;
}

bool HalfLaurent::all_exponents_even() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0 && (off_ + static_cast<long>(i)) % 2 != 0) return false;
    return true;
}

bool HalfLaurent::is_symmetric() const {
    for (std::size_t i = 0; i < c_.size(); ++i) {
        long e = off_ + static_cast<long>(i);
        if (coeff(-e) != c_[i]) return false;
    }
    return true;
}

HalfLaurent::DivMod HalfLaurent::divmod(const HalfLaurent& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    long ds = d.min_exp();
    if (c_.empty()) return {HalfLaurent(), HalfLaurent()};
    long dd = d.max_exp() - ds; // degree of the shifted divisor
    // Work on a mutable copy of our coefficients; synthetic division.
    std::vector<Rat> rem = c_;
    long roff = off_;
    const Rat& lead = d.c_.back();
    long rdeg = static_cast<long>(rem.size()) - 1;
    HalfLaurent quot;
    if (rdeg >= dd) {
        quot.c_.assign(static_cast<std::size_t>(rdeg - dd + 1), Rat(0));
        quot.off_ = roff - ds + dd - dd; // fixed after loop; see below
    }
    for (long e = rdeg; e >= dd; --e) {
        Rat& top = rem[static_cast<std::size_t>(e)];
        if (top == 0) continue;
        Rat f = top / lead;
        // rem -= f * d.shifted(e - dd - ds + roff ...): subtract aligned.
        for (std::size_t j = 0; j + 1 < d.c_.size(); ++j)
            rem[static_cast<std::size_t>(e - dd) + j] -= f * d.c_[j];
        top = 0;
        quot.c_[static_cast<std::size_t>(e - dd)] = std::move(f);
    }
    if (!quot.c_.empty()) {
        quot.off_ = roff - ds;
        quot.normalize_bounds();
    }
    HalfLaurent r;
    r.c_ = std::move(rem);
    r.off_ = roff;
    r.normalize_bounds();
    return {std::move(quot), std::move(r)};
}

namespace {

// Primitive integer polynomial helpers for the gcd: coefficient vectors with
// nonzero leading entry, index = degree.
using ZPoly = std::vector<Int>;

void z_trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void z_make_primitive(ZPoly& p) {
    Int g(0);
    for (auto& v : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0 || g == 1) return;
    for (auto& v : p) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// Pseudo-remainder of a by b (deg a >= deg b >= 0), in place on a.
void z_pseudo_rem(ZPoly& a, const ZPoly& b) {
    const Int& lb = b.back();
    long db = static_cast<long>(b.size()) - 1;
    while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
        long da = static_cast<long>(a.size()) - 1;
        Int la = a.back();
        for (auto& v : a) v *= lb;
        for (long j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(da - db + j)] -=
                la * b[static_cast<std::size_t>(j)];
        z_trim(a);
        z_make_primitive(a); // keeps coefficient growth linear
    }
}

} // namespace

HalfLaurent HalfLaurent::gcd(const HalfLaurent& a, const HalfLaurent& b) {
    if (a.is_zero() && b.is_zero()) return HalfLaurent::zero();
    if (a.is_zero() || b.is_zero()) {
        const HalfLaurent& n = a.is_zero() ? b : a;
        HalfLaurent m = n.shifted(-n.min_exp());
        return m.scaled(Rat(1) / m.leading_coeff());
    }
    // Convert both to primitive integer polynomials with constant term slot 0.
    auto to_z = [](const HalfLaurent& p) {
        Rat s = p.content_normalizer();
        if (s < 0) s = -s;
        ZPoly z;
        z.reserve(p.c_.size());
        for (auto& v : p.c_) {
            Rat w = v * s;
            z.push_back(w.get_num());
        }
        return z;
    };
    ZPoly x = to_z(a), y = to_z(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        z_pseudo_rem(x, y);
        std::swap(x, y);
    }
    z_make_primitive(x);
    // Monic rational polynomial, minimal exponent 0.
    HalfLaurent g;
    g.off_ = 0;
    g.c_.reserve(x.size());
    const Int& lead = x.back();
    for (auto& v : x) {
        Rat w(v, lead);
        w.canonicalize();
        g.c_.push_back(std::move(w));
    }
    g.normalize_bounds();
    return g;
}

Rat HalfLaurent::content_normalizer() const {
    if (is_zero())
        throw std::domain_error("content_normalizer of zero polynomial");
    Int num_gcd(0), den_lcm(1);
    for (auto& v : c_) {
        if (v == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                v.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                v.get_den().get_mpz_t());
    }
    Rat s(den_lcm, num_gcd);
    s.canonicalize();
    return s;
}

Rat HalfLaurent::leading_coeff() const {
    if (is_zero()) throw std::domain_error("leading_coeff of zero polynomial");
    return c_.back();
}

std::string HalfLaurent::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const Rat& v = c_[i];
        if (v == 0) continue;
        long e = off_ + static_cast<long>(i);
        Rat av = abs(v);
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        bool unit_coef = (av == 1) && e != 0;
        if (!unit_coef) os << av.get_str();
        if (e != 0) {
            if (!unit_coef) os << "*";
            if (e % 2 == 0) {
                os << "q";
                if (e / 2 != 1) os << "^" << e / 2;
            } else {
                os << "q^(" << e << "/2)";
            }
        }
    }
    return os.str();
}

HalfLaurent q_integer(long k) {
    HalfLaurent p;
    for (long i = 0; i < k; ++i) p += HalfLaurent::monomial(2 * i, Rat(1));
    return p;
}

} // namespace scat
