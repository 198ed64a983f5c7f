#pragma once

#include <cstdint>
#include <vector>

#include "hsch/kernel.hpp"

namespace hsch {

// Exponential quadrature coefficients for one step of length dt against
// exp(-rate (t - s)) with the integrand reconstructed linearly on the step:
//   increment = c_old f(t) + c_new f(t+dt),  decay = exp(-rate dt).
struct ExpQuad {
    double decay;
    double c_old;
    double c_new;
};
ExpQuad exp_quad(double rate, double dt);

// Running integrals of (g * f)(t) for a scalar exponential-sum kernel over a
// flat field of fixed length. O(modes·len) work and memory per step,
// independent of the step count.
class ConvolutionState {
public:
    ConvolutionState(std::vector<KernelMode> modes, std::size_t len, double dt);

    // record f(0); must be the first call
    void seed(const std::vector<double>& f0);

    // advance one step with the new sample; returns (g*f) at the new time
    const std::vector<double>& step(const std::vector<double>& f_new);

    // first advance with the seed tied to the sample (f(0) := f(dt)); matches
    // the startup convention of solve_step so forward and inverse recursions
    // stay exact inverses
    const std::vector<double>& step_replacing_seed(const std::vector<double>& f_new);

    // advance one step, choosing f_new so the returned value equals target.
    // On the first advance the seed is tied to the unknown (f(0)=f(dt)).
    // Throws when the instantaneous weight is below weight_floor.
    const std::vector<double>& solve_step(const std::vector<double>& target,
                                          std::vector<double>& f_out,
                                          double weight_floor = 1e-8);

    const std::vector<double>& value() const { return value_; }
    double t_last() const { return t_; }
    double dt() const { return dt_; }
    std::size_t steps() const { return steps_; }
    std::size_t len() const { return len_; }
    bool seeded() const { return seeded_; }

    // per-step work in mode·sample units (for the O(1) cost property)
    std::uint64_t mode_ops_last_step() const { return ops_last_; }

private:
    void advance(const std::vector<double>& f_new);

    std::vector<KernelMode> modes_;
    std::vector<ExpQuad> quad_;
    std::size_t len_;
    double dt_;
    double t_ = 0.0;
    std::size_t steps_ = 0;
    bool seeded_ = false;
    std::vector<double> I_;      // modes x len
    std::vector<double> f_prev_;
    std::vector<double> value_;
    std::uint64_t ops_last_ = 0;
};

// Direct trapezoid evaluation of (G*f)(t) over a stored uniform history.
// samples[k][c] is component c (a flat array) at time times[k]; the result
// has kernel.dim() components. Oracle-grade: O(steps·modes·len).
std::vector<std::vector<double>> conv_direct(const MemoryKernel& kernel,
                                             const std::vector<double>& times,
                                             const std::vector<std::vector<std::vector<double>>>& samples,
                                             double t);

// scalar convenience (dim 1, len 1)
double conv_direct_scalar(const std::vector<KernelMode>& modes,
                          const std::vector<double>& times,
                          const std::vector<double>& samples, double t);

// Fast engine for a full matrix kernel: value_i = Σ_j (G_ij * f_j).
class MatrixConvolution {
public:
    MatrixConvolution(const MemoryKernel& kernel, std::size_t len, double dt);
    void seed(const std::vector<std::vector<double>>& f0);
    const std::vector<std::vector<double>>& step(const std::vector<std::vector<double>>& f_new);
    const std::vector<std::vector<double>>& value() const { return value_; }

private:
    int dim_;
    std::size_t len_;
    // state (i,j): convolution of entry (i,j) against component j
    std::vector<ConvolutionState> states_;
    std::vector<std::vector<double>> value_;
};

} // namespace hsch
