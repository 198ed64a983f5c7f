#pragma once

#include <functional>

#include "hsch/field.hpp"

namespace hsch {

// Body force h(t,x) = (h1(t,x̄), 0): component k sampled at face positions.
struct Forcing {
    std::function<double(double t, double x, double y, int k)> eval;

    static Forcing zero() {
        return {[](double, double, double, int) { return 0.0; }};
    }
    static Forcing constant(double fx, double fy = 0.0) {
        return {[fx, fy](double, double, double, int k) { return k == 0 ? fx : fy; }};
    }
};

inline VectorField sample_forcing(const Forcing& h, const Grid& g, double t) {
    return VectorField::sample(
        g, Bc::None, [&](double x, double y, int k) { return h.eval(t, x, y, k); });
}

} // namespace hsch
