#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <utility>
#include <vector>

#include "scat/rat_func.hpp"

namespace scat {

// Multiset of initial tangency indices n, as sorted (n, multiplicity) pairs
// with positive multiplicities. One marker power per unit of class
// multiplicity drawn from the initial point s_n.
using MarkerKey = std::vector<std::pair<int, int>>;

inline long marker_degree(const MarkerKey& k) {
    long d = 0;
    for (auto& [n, m] : k) d += m;
    return d;
}

inline MarkerKey marker_union(const MarkerKey& a, const MarkerKey& b) {
    MarkerKey r;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return r;
}

// Polynomial in commuting marker variables eps_n with RatFuncQ coefficients.
// Terms of total marker degree beyond degree_cap are dropped by arithmetic;
// with degree_cap = 0 this collapses to plain RatFuncQ arithmetic.
class MarkerPoly {
public:
    static constexpr long kUncapped = LONG_MAX;

    MarkerPoly() : cap_(kUncapped) {}
    static MarkerPoly zero(long cap = kUncapped) {
        MarkerPoly p;
        p.cap_ = cap;
        return p;
    }
    static MarkerPoly one(long cap = kUncapped) {
        return from_ratfunc(RatFuncQ::one(), cap);
    }
    static MarkerPoly from_ratfunc(const RatFuncQ& f, long cap = kUncapped) {
        MarkerPoly p;
        p.cap_ = cap;
        if (!f.is_zero()) p.t_[{}] = f;
        return p;
    }
    // f * eps_n^mult
    static MarkerPoly marker(int n, int mult, const RatFuncQ& f, long cap) {
        MarkerPoly p;
        p.cap_ = cap;
        if (!f.is_zero() && mult <= cap) p.t_[{{n, mult}}] = f;
        return p;
    }

    long degree_cap() const { return cap_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<MarkerKey, RatFuncQ>& terms() const { return t_; }
    RatFuncQ piece(const MarkerKey& k) const {
        auto it = t_.find(k);
        return it == t_.end() ? RatFuncQ::zero() : it->second;
    }
    // Sum of all pieces (markers set to 1).
    RatFuncQ total() const {
        RatFuncQ s;
        for (auto& [k, f] : t_) s += f;
        return s;
    }

    MarkerPoly operator-() const {
        MarkerPoly r;
        r.cap_ = cap_;
        for (auto& [k, f] : t_) r.t_[k] = -f;
        return r;
    }
    MarkerPoly operator+(const MarkerPoly& o) const {
        MarkerPoly r = *this;
        r.cap_ = std::min(cap_, o.cap_);
        for (auto& [k, f] : o.t_) {
            auto it = r.t_.find(k);
            if (it == r.t_.end()) {
                r.t_[k] = f;
            } else {
                it->second += f;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
        return r;
    }
    MarkerPoly operator-(const MarkerPoly& o) const { return *this + (-o); }
    MarkerPoly operator*(const MarkerPoly& o) const {
        MarkerPoly r;
        r.cap_ = std::min(cap_, o.cap_);
        for (auto& [k1, f1] : t_)
            for (auto& [k2, f2] : o.t_) {
                if (marker_degree(k1) + marker_degree(k2) > r.cap_) continue;
                MarkerKey k = marker_union(k1, k2);
                auto it = r.t_.find(k);
                if (it == r.t_.end()) {
                    RatFuncQ f = f1 * f2;
                    if (!f.is_zero()) r.t_[k] = f;
                } else {
                    it->second += f1 * f2;
                    if (it->second.is_zero()) r.t_.erase(it);
                }
            }
        return r;
    }
    MarkerPoly& operator+=(const MarkerPoly& o) { return *this = *this + o; }
    MarkerPoly& operator-=(const MarkerPoly& o) { return *this = *this - o; }
    MarkerPoly& operator*=(const MarkerPoly& o) { return *this = *this * o; }
    bool operator==(const MarkerPoly& o) const { return t_ == o.t_; }
    bool operator!=(const MarkerPoly& o) const { return t_ != o.t_; }

    MarkerPoly scaled(const Rat& s) const {
        MarkerPoly r;
        r.cap_ = cap_;
        if (s == 0) return r;
        for (auto& [k, f] : t_) r.t_[k] = f.scaled(s);
        return r;
    }
    MarkerPoly mul_monomial(long half_exp, int sign) const {
        MarkerPoly r;
        r.cap_ = cap_;
        for (auto& [k, f] : t_) r.t_[k] = f.mul_monomial(half_exp, sign);
        return r;
    }
    // q^{1/2} -> q^{l/2} together with the l-fold cover on markers (leaf
    // multiplicities times l): used when lifting a divisor-class invariant.
    MarkerPoly scale_variable(long l) const {
        MarkerPoly r;
        r.cap_ = cap_;
        for (auto& [k, f] : t_) {
            MarkerKey kk = k;
            for (auto& [n, m] : kk) m *= static_cast<int>(l);
            if (marker_degree(kk) > cap_) continue;
            r.t_[kk] = f.scale_variable(l);
        }
        return r;
    }
    // Shift every marker index n -> n + step (psi-translation).
    MarkerPoly shift_indices(int step) const {
        MarkerPoly r;
        r.cap_ = cap_;
        for (auto& [k, f] : t_) {
            MarkerKey kk = k;
            for (auto& [n, m] : kk) n += step;
            r.t_[kk] = f;
        }
        return r;
    }

private:
    std::map<MarkerKey, RatFuncQ> t_;
    long cap_;
};

} // namespace scat
