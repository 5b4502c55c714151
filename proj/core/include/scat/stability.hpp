#pragma once

#include <array>
#include <optional>

#include "scat/diagram.hpp"

namespace scat {

// gamma = (r, d, chi): rank, degree, Euler characteristic.
struct ChargeVector {
    long r = 0, d = 0, chi = 0;
    friend bool operator==(const ChargeVector&, const ChargeVector&) = default;
    friend auto operator<=>(const ChargeVector&, const ChargeVector&) = default;
    LatticeClass ray_class() const { return {r, -d}; }
    bool in_gamma0() const { return r == 0 && d == 0; }
    bool divisible_by(long l) const {
        return l >= 1 && r % l == 0 && d % l == 0 && chi % l == 0;
    }
    ChargeVector divided_by(long l) const {
        if (!divisible_by(l))
            throw std::domain_error("charge not divisible");
        return {r / l, d / l, chi / l};
    }
    long content() const; // gcd of entries (positive), 0 only for (0,0,0)
};

// (gamma, gamma') = -3dr' - rr' - dd' + r chi' + chi r'
Rat euler_form(const ChargeVector& g, const ChargeVector& gp);

// 1 - (gamma, gamma) for classes with stable objects; Gamma^0 is special.
long moduli_dimension(const ChargeVector& g);

// Z = re + i * im_coeff * sqrt(x^2+2y); the square root is never evaluated.
struct ChargeValue {
    Rat re, im_coeff;
    bool purely_imaginary_positive() const { return re == 0 && im_coeff > 0; }
};

ChargeValue central_charge(const ChargeVector& g, const PointQ& sigma);

// A rational point on the ray locus L_gamma = {Re Z = 0, Im > 0} with
// x^2 + 2y >= s_target. Throws "empty ray locus" when L_gamma is empty
// (r = 0, d <= 0).
PointQ probe_point(const ChargeVector& g, const Rat& s_target);

// Default probe height policy: s_target = x*^2 + 2*max(1, d^2).
Rat default_probe_height(const ChargeVector& g);

// The charge of O(n): (1, n, n^2/2 + 3n/2 + 1); integral for all n.
ChargeVector charge_of_twist(long n);

// gamma(E(1)): tensoring by O(1), the inverse of T^{-1}(r,d,chi) =
// (r, d - r, chi - r - d).
ChargeVector tensor_by_o1(const ChargeVector& g);

// Quadratic potential wall between two non-collinear classes:
// F(x,y) = (d1 - r1 x)(r2 y + d2 x + r2 + 3/2 d2 - chi2)
//        - (d2 - r2 x)(r1 y + d1 x + r1 + 3/2 d1 - chi1),
// vanishing wherever both charges are really proportional; returned as
// coefficients {xx, xy, yy, x, y, 1}.
struct WallConic {
    std::array<Rat, 6> coef; // F = c0 x^2 + c1 xy + c2 y^2 + c3 x + c4 y + c5
    Rat eval(const PointQ& p) const {
        return coef[0] * p.x * p.x + coef[1] * p.x * p.y +
               coef[2] * p.y * p.y + coef[3] * p.x + coef[4] * p.y + coef[5];
    }
    // Tangent line at a point where both Re Z vanish: (x-x0)x0 + (y-y0) = 0,
    // returned as (slope dy/dx = -x0) per the wall geometry.
    static Rat tangent_slope(const PointQ& p) { return -p.x; }
};

WallConic potential_wall(const ChargeVector& g1, const ChargeVector& g2);

} // namespace scat
