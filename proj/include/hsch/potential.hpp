#pragma once

#include <array>
#include <functional>
#include <string>

namespace hsch {

// Double-well potential data: F' = f, with the growth constants checked by
// sampling (the analysis only needs |f''| ≤ c_f(1+|r|) and liminf f' > 0).
struct Potential {
    std::function<double(double)> F;
    std::function<double(double)> f;
    std::function<double(double)> fprime;
    double c_f = 6.0;
    std::string name = "landau";
};

struct LandauValue {
    double f;
    double fprime;
    double F;
};

// F(r) = ¼(r²−1)², f(r) = r³−r, f'(r) = 3r²−1
LandauValue landau_at(double r);
Potential landau();

// F(r) = Σ_k a_k r^k with a_4 > 0 (general quartic well)
Potential quartic(const std::array<double, 5>& F_coeffs);

struct PotentialCheck {
    bool ok = false;
    double c_f_estimate = 0.0;   // max |f''|/(1+|r|) on the sampled range
    double fprime_at_edges = 0.0; // min of f' at r = ±10
    double F_min = 0.0;
    std::string detail;
};

// spot checks of the growth conditions on r in [-10, 10]
PotentialCheck check_growth(const Potential& pot, int samples = 2001);

} // namespace hsch
