#include "scat/stability.hpp"

#include <numeric>

namespace scat {

long ChargeVector::content() const {
    long g = std::gcd(std::gcd(std::abs(r), std::abs(d)), std::abs(chi));
    return g;
}

Rat euler_form(const ChargeVector& g, const ChargeVector& gp) {
    return Rat(-3 * g.d * gp.r - g.r * gp.r - g.d * gp.d + g.r * gp.chi +
               g.chi * gp.r);
}

long moduli_dimension(const ChargeVector& g) {
    if (g.in_gamma0()) {
        if (g.chi == 1) return 2; // the plane itself
        throw std::domain_error("no stable objects");
    }
    Rat dim = 1 - euler_form(g, g);
    if (dim.get_den() != 1)
        throw std::logic_error("non-integer moduli dimension");
    return dim.get_num().get_si();
}

ChargeValue central_charge(const ChargeVector& g, const PointQ& sigma) {
    Rat re = g.r * sigma.y + g.d * sigma.x + g.r + rat(3 * g.d, 2) - g.chi;
    Rat im = g.d - g.r * sigma.x;
    return {re, im};
}

Rat default_probe_height(const ChargeVector& g) {
    Rat y0 = std::max<long>(1, g.d * g.d);
    if (g.r == 0) {
        if (g.d <= 0) throw std::domain_error("empty ray locus");
        Rat xs = rat(g.chi, g.d) - rat(3, 2);
        return xs * xs + 2 * y0;
    }
    Rat x0 = rat(g.d, g.r) + (g.r > 0 ? -2 : 2);
    return x0 * x0 + 2 * y0;
}

PointQ probe_point(const ChargeVector& g, const Rat& s_target) {
    if (g.r == 0) {
        if (g.d <= 0) throw std::domain_error("empty ray locus");
        // Re Z = d x + 3d/2 - chi vanishes at x = chi/d - 3/2.
        Rat xs = rat(g.chi, g.d) - rat(3, 2);
        Rat y = (s_target - xs * xs) / 2;
        return {xs, y};
    }
    // Line r y + d x + r + 3d/2 - chi = 0, half-plane d - r x > 0: step x
    // away from d/r in halves until x^2 + 2y reaches the target height.
    Rat x = rat(g.d, g.r);
    Rat step = rat(1, 2);
    for (int k = 1;; ++k) {
        Rat xk = g.r > 0 ? Rat(x - k * step) : Rat(x + k * step);
        Rat y = (Rat(g.chi) - g.r - rat(3 * g.d, 2) - g.d * xk) / g.r;
        PointQ p{xk, y};
        if (p.skey() >= s_target) return p;
    }
}

ChargeVector charge_of_twist(long n) {
    return {1, n, (n * n + 3 * n + 2) / 2};
}

ChargeVector tensor_by_o1(const ChargeVector& g) {
    return {g.r, g.d + g.r, g.chi + g.d + 2 * g.r};
}

WallConic potential_wall(const ChargeVector& g1, const ChargeVector& g2) {
    if (g1.d * g2.r - g2.d * g1.r == 0)
        throw std::domain_error("no wall");
    Rat c1 = Rat(g1.r) + rat(3 * g1.d, 2) - g1.chi;
    Rat c2 = Rat(g2.r) + rat(3 * g2.d, 2) - g2.chi;
    WallConic w;
    Rat lead = Rat(g1.d * g2.r - g2.d * g1.r);
    w.coef[0] = lead;                        // x^2
    w.coef[1] = Rat(0);                      // xy
    w.coef[2] = Rat(0);                      // y^2
    w.coef[3] = g2.r * c1 - g1.r * c2;       // x
    w.coef[4] = lead;                        // y
    w.coef[5] = g1.d * c2 - g2.d * c1;       // 1
    return w;
}

} // namespace scat
