#pragma once

#include <gmpxx.h>
#include <string>
#include <utility>

namespace scat {

// Exact rational scalar used everywhere in the engine. No floating point.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Numerator/denominator as strings, for JSON [num, den] pairs.
inline std::pair<std::string, std::string> rat_pair(const Rat& r) {
    return {r.get_num().get_str(), r.get_den().get_str()};
}

inline long floor_long(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q.get_si();
}

inline long ceil_long(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q.get_si();
}

} // namespace scat
