#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Dirichlet heat problem on (-1,1), diffusivity a, w(0)=1: eigenseries for
// g(t) = ½∫w dζ = Σ_{n odd} 8/(n²π²) e^{-a n²π² t/4}
inline double g_series(double t, double a, int modes = 400) {
    double s = 0.0;
    for (int k = modes; k >= 1; --k) {
        const double n = 2.0 * k - 1.0;
        s += 8.0 / (n * n * kPi * kPi) * std::exp(-a * n * n * kPi * kPi * t / 4.0);
    }
    return s;
}

// ‖w(t)‖_{L²(-1,1)} of the same problem
inline double w_l2(double t, double a, int modes = 400) {
    double s = 0.0;
    for (int k = modes; k >= 1; --k) {
        const double n = 2.0 * k - 1.0;
        s += 16.0 / (n * n * kPi * kPi) * std::exp(-a * n * n * kPi * kPi * t / 2.0);
    }
    return std::sqrt(s);
}

// (g*f)(t) for g = Σ w e^{-λ s} and f(s) = s:  Σ w (t/λ - (1-e^{-λt})/λ²)
inline double conv_ramp(const std::vector<std::pair<double, double>>& modes, double t) {
    double s = 0.0;
    for (const auto& [w, lam] : modes)
        s += w * (t / lam - (1.0 - std::exp(-lam * t)) / (lam * lam));
    return s;
}

// (g*1)(t) for the same kernel: Σ w (1-e^{-λt})/λ
inline double conv_const(const std::vector<std::pair<double, double>>& modes, double t) {
    double s = 0.0;
    for (const auto& [w, lam] : modes) s += w * (1.0 - std::exp(-lam * t)) / lam;
    return s;
}

// composite trapezoid of a function on [lo, hi]
inline double trapz(const std::function<double(double)>& f, double lo, double hi, int n) {
    double s = 0.5 * (f(lo) + f(hi));
    const double h = (hi - lo) / n;
    for (int i = 1; i < n; ++i) s += f(lo + i * h);
    return s * h;
}

// least-squares slope of y against x
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle
