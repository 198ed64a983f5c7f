#pragma once

#include "hsch/field.hpp"
#include "hsch/ops.hpp"

namespace hsch {

struct PoissonOptions {
    double rel_tol = 1e-10;     // on the weighted L2 residual
    int max_iter = 0;           // 0: pick from grid size
    double compat_tol = 1e-10;  // allowed |mean(rhs)| relative to max|rhs|
    bool enforce_compat = false; // throw instead of projecting when violated
};

struct PoissonResult {
    ScalarField q;        // mean-zero solution, Neumann0
    double residual_rel;  // final ||r|| / ||rhs||
    double residual_inf;  // final max |r|
    int iterations;
    double removed_mean;  // mean component projected out of rhs
};

// laplacian(q) = rhs under Neumann0, mean(q) = 0. Conjugate gradients with
// Jacobi preconditioning on the mean-zero subspace. The operator is
// divergence∘gradient restricted to the active faces of `mask` (pass a
// Dirichlet0-tagged field for no-slip walls); default is the plain Neumann
// laplacian.
PoissonResult solve_neumann_poisson(const ScalarField& rhs,
                                    const PoissonOptions& opt = {});
PoissonResult solve_neumann_poisson(const ScalarField& rhs,
                                    const VectorField& mask,
                                    const PoissonOptions& opt = {});

struct LerayResult {
    VectorField u;  // divergence-free part, u·n = 0 structural
    ScalarField q;  // potential removed from b
    double residual_rel;
    double residual_inf;
    int iterations;
};

// Helmholtz decomposition b = u + ∇q with div u = 0 to solver tolerance.
// Pinned (no-slip) rows of b stay untouched.
LerayResult leray_project(const VectorField& b, const PoissonOptions& opt = {});

// gradient with the pinned rows of `like` zeroed (adjoint pair of the masked
// divergence used by the projection)
VectorField masked_gradient(const ScalarField& f, const VectorField& like);

} // namespace hsch
