#include "hsch/cahn_hilliard.hpp"

#include <stdexcept>

namespace hsch {

ScalarField chemical_potential(const ScalarField& phi, double beta, double lambda,
                               const Potential& pot) {
    if (phi.bc() != Bc::Neumann0)
        throw std::invalid_argument("chemical_potential: phi needs a Neumann0 tag");
    ScalarField mu = laplacian(phi);
    auto& mv = mu.data();
    const auto& pv = phi.data();
    for (std::size_t i = 0; i < mv.size(); ++i)
        mv[i] = -beta * mv[i] + lambda * pot.f(pv[i]);
    mu.set_bc(Bc::Neumann0);
    return mu;
}

double ch_energy(const ChState& s, const VectorField* u, const ChParams& p) {
    double e = 0.0;
    if (u != nullptr) e += 0.5 * dot(*u, *u);
    VectorField g = gradient(s.phi);
    e += 0.5 * p.beta * dot(g, g);
    const Grid& gr = s.phi.grid();
    const int nx = gr.nodes(0);
    const int ny = (gr.dim() == 2) ? gr.nodes(1) : 1;
    double fint = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            fint += gr.node_weight(i, j) * p.pot.F(s.phi(i, j));
    return e + p.lambda * fint;
}

CahnHilliardSolver::CahnHilliardSolver(const Grid& grid, const ChParams& params)
    : grid_(grid), p_(params), spec_(grid) {}

ChState CahnHilliardSolver::make_state(const ScalarField& phi0) const {
    if (phi0.grid() != grid_) throw std::invalid_argument("CahnHilliardSolver: grid mismatch");
    ChState s;
    s.phi = phi0;
    s.phi.set_bc(Bc::Neumann0);
    s.mu = chemical_potential(s.phi, p_.beta, p_.lambda, p_.pot);
    s.t = 0.0;
    return s;
}

ScalarField CahnHilliardSolver::stabilized_potential(const ScalarField& phi_new,
                                                     const ScalarField& phi_old) const {
    ScalarField mu = laplacian(phi_new);
    auto& mv = mu.data();
    const auto& pn = phi_new.data();
    const auto& po = phi_old.data();
    const double S = p_.stab();
    for (std::size_t i = 0; i < mv.size(); ++i)
        mv[i] = -p_.beta * mv[i] + p_.lambda * p_.pot.f(po[i]) + S * (pn[i] - po[i]);
    mu.set_bc(Bc::Neumann0);
    return mu;
}

void CahnHilliardSolver::step(ChState& s, const VectorField* u, double dt) const {
    if (!(dt > 0.0)) throw std::invalid_argument("ch_step: dt must be > 0");
    const double S = p_.stab();

    // dt·Δ(λ f(φ) - S φ)
    ScalarField nl(grid_, Bc::Neumann0);
    {
        auto& nv = nl.data();
        const auto& pv = s.phi.data();
        for (std::size_t i = 0; i < nv.size(); ++i)
            nv[i] = p_.lambda * p_.pot.f(pv[i]) - S * pv[i];
    }
    ScalarField rhs = laplacian(nl);
    scale(rhs, dt);
    axpy(1.0, s.phi, rhs);
    if (u != nullptr) {
        ScalarField adv = advect(*u, s.phi);
        axpy(-dt, adv, rhs);
    }

    ScalarField phi_new = spec_.solve(1.0, dt * S, dt * p_.beta, rhs);
    phi_new.set_bc(Bc::Neumann0);
    s.mu = chemical_potential(phi_new, p_.beta, p_.lambda, p_.pot);
    s.phi = std::move(phi_new);
    s.t += dt;
}

} // namespace hsch
