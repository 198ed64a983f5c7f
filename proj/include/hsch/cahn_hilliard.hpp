#pragma once

#include <optional>

#include "hsch/field.hpp"
#include "hsch/ops.hpp"
#include "hsch/potential.hpp"
#include "hsch/spectral.hpp"

namespace hsch {

struct ChParams {
    double beta = 0.01;
    double lambda = 1.0;
    // stabilized semi-implicit constant; < 0 means λ·max|f'| on |r| ≤ 1.2
    double stabilization = -1.0;
    Potential pot = landau();

    double stab() const {
        return stabilization >= 0.0 ? stabilization : lambda * (3.0 * 1.44 - 1.0);
    }
};

struct ChState {
    ScalarField phi; // Neumann0
    ScalarField mu;  // Neumann0
    double t = 0.0;
};

// μ = -β Δφ + λ f(φ)
ScalarField chemical_potential(const ScalarField& phi, double beta, double lambda,
                               const Potential& pot);

// E = ½‖u‖² + (β/2)‖∇φ‖² + λ ∫ F(φ); pass nullptr for u = 0
double ch_energy(const ChState& s, const VectorField* u, const ChParams& p);

// Convective Cahn-Hilliard stepper. One step solves the constant-coefficient
// system (I + dt·S·(-Δ) + dt·β·Δ²) φ⁺ = φⁿ - dt·div(u φⁿ) + dt·Δ(λf(φⁿ) - Sφⁿ)
// exactly in the cosine basis; the discrete mean of φ is conserved to
// roundoff and the scheme dissipates the discrete energy for S ≥ λ·max f'/2
// along the trajectory.
class CahnHilliardSolver {
public:
    CahnHilliardSolver(const Grid& grid, const ChParams& params);

    ChState make_state(const ScalarField& phi0) const;
    void step(ChState& s, const VectorField* u, double dt) const;

    // implicit potential of the last step's identity: -βΔφ⁺ + λf(φⁿ) + S(φ⁺-φⁿ)
    ScalarField stabilized_potential(const ScalarField& phi_new,
                                     const ScalarField& phi_old) const;

    const Grid& grid() const { return grid_; }
    const ChParams& params() const { return p_; }

private:
    Grid grid_;
    ChParams p_;
    NeumannSpectral spec_;
};

} // namespace hsch
