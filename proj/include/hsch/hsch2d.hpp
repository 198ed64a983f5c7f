#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hsch/cahn_hilliard.hpp"
#include "hsch/convolution.hpp"
#include "hsch/forcing.hpp"
#include "hsch/kernel.hpp"
#include "hsch/poisson.hpp"

namespace hsch {

struct HschParams {
    ChParams ch;
    double proj_rel_tol = 1e-12; // projection CG; keeps div u at the floor
    double deconv_weight_floor = 1e-8;
    // optional local (memoryless) Darcy closure u = P[m (h1 + μ∇φ)]
    std::optional<double> local_darcy_mobility;
};

struct HschState {
    ChState ch;
    VectorField u;  // divergence-free, u·n = 0 structural
    ScalarField p;  // mean-zero, recovered from q = g*p
    double t = 0.0;
};

struct HschStepDiag {
    double div_inf = 0.0;        // ‖div u‖∞ after projection
    double u_inf = 0.0;
    double mean_p = 0.0;
    double darcy_residual = 0.0; // ‖(G u⁰ + G*(h₁+μ∇φ) - G*∇p) - u‖₂
    int proj_iterations = 0;
};

// Operator-split stepper for the memory Hele-Shaw / Cahn-Hilliard system:
// velocity from the kernel convolution and Leray projection with lagged
// (φ, μ), then the convective CH step with the fresh velocity. Requires an
// isotropic diagonal kernel G = g(t)·I (what the cell problem produces), so
// the pressure deconvolution is a scalar solve per node.
class HschSolver {
public:
    HschSolver(const Grid& grid, const HschParams& params, const MemoryKernel& kernel);

    // u0 is projected once; pass nullptr for u⁰ = 0
    HschState initialize(const ScalarField& phi0, const VectorField* u0, const Forcing& h1);

    HschStepDiag step(HschState& s, const Forcing& h1, double dt);

    double energy(const HschState& s) const { return ch_energy(s.ch, &s.u, p_.ch); }
    double mass(const HschState& s) const { return mean(s.ch.phi); }

    const Grid& grid() const { return grid_; }
    const HschParams& params() const { return p_; }
    const MemoryKernel& kernel() const { return kernel_; }

private:
    std::vector<double> pack_faces(const VectorField& v) const;
    VectorField unpack_faces(const std::vector<double>& packed) const;
    VectorField drive_field(const HschState& s, const Forcing& h1, double t) const;

    Grid grid_;
    HschParams p_;
    MemoryKernel kernel_;
    CahnHilliardSolver ch_;
    VectorField u0_;
    bool has_u0_ = false;
    double dt_ = 0.0; // fixed after the first step
    std::vector<double> pending_seed_;
    std::unique_ptr<ConvolutionState> conv_b_;  // over packed h₁+μ∇φ faces
    std::unique_ptr<ConvolutionState> conv_p_;  // over p nodes (deconvolution)
    std::unique_ptr<ConvolutionState> conv_gp_; // over packed ∇p (residual check)
};

struct DependenceReport {
    double delta = 0.0;
    double sup_ratio = 0.0;   // sup_t ‖φ₁-φ₂‖₂ / δ
    bool exact_match = false; // δ = 0: trajectories bitwise identical
};

// Two runs from φ⁰ and φ⁰ + δ·shape, identical otherwise. shape is sampled
// on the grid; δ = 0 compares trajectories bitwise.
DependenceReport continuous_dependence_test(
    const Grid& grid, const HschParams& params, const MemoryKernel& kernel,
    const ScalarField& phi0, const ScalarField& shape, double delta, const Forcing& h1,
    double dt, double t_end);

} // namespace hsch
