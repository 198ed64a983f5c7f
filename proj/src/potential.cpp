#include "hsch/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsch {

LandauValue landau_at(double r) {
    LandauValue v;
    v.F = 0.25 * (r * r - 1.0) * (r * r - 1.0);
    v.f = r * r * r - r;
    v.fprime = 3.0 * r * r - 1.0;
    return v;
}

Potential landau() {
    Potential p;
    p.F = [](double r) { return landau_at(r).F; };
    p.f = [](double r) { return landau_at(r).f; };
    p.fprime = [](double r) { return landau_at(r).fprime; };
    p.c_f = 6.0; // |f''| = 6|r| ≤ 6(1+|r|)
    p.name = "landau";
    return p;
}

Potential quartic(const std::array<double, 5>& a) {
    if (!(a[4] > 0.0))
        throw std::invalid_argument("quartic potential: leading coefficient must be positive");
    Potential p;
    p.F = [a](double r) {
        return a[0] + r * (a[1] + r * (a[2] + r * (a[3] + r * a[4])));
    };
    p.f = [a](double r) {
        return a[1] + r * (2.0 * a[2] + r * (3.0 * a[3] + r * 4.0 * a[4]));
    };
    p.fprime = [a](double r) { return 2.0 * a[2] + r * (6.0 * a[3] + 12.0 * a[4] * r); };
    p.c_f = std::abs(6.0 * a[3]) + 24.0 * a[4]; // |f''| = |6a3 + 24a4 r|
    p.name = "quartic";
    return p;
}

PotentialCheck check_growth(const Potential& pot, int samples) {
    PotentialCheck c;
    const double lo = -10.0, hi = 10.0;
    double max_ratio = 0.0;
    double fmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double r = lo + (hi - lo) * i / (samples - 1);
        const double dr = 1e-5;
        const double fpp = (pot.fprime(r + dr) - pot.fprime(r - dr)) / (2.0 * dr);
        max_ratio = std::max(max_ratio, std::abs(fpp) / (1.0 + std::abs(r)));
        fmin = std::min(fmin, pot.F(r));
    }
    c.c_f_estimate = max_ratio;
    c.F_min = fmin;
    c.fprime_at_edges = std::min(pot.fprime(lo), pot.fprime(hi));
    c.ok = (max_ratio <= pot.c_f * (1.0 + 1e-6)) && (c.fprime_at_edges > 0.0) &&
           std::isfinite(fmin);
    if (!c.ok) c.detail = "growth spot check failed on [-10, 10]";
    return c;
}

} // namespace hsch
