#include "hsch/strip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsch/errors.hpp"

namespace hsch {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// -Δ of one velocity component on its face grid: odd ghost across the
// no-slip wall along the own axis, pinned zero rows along the node axes.
void neg_laplacian_component(const VectorField& like, int k, const std::vector<double>& in,
                             std::vector<double>& out) {
    const Grid& g = like.grid();
    const int cx = like.comp_extent(k, 0);
    const int cy = like.comp_extent(k, 1);
    const double hx = g.axis(0).h;
    const double hy = (g.dim() == 2) ? g.axis(1).h : 1.0;
    out.assign(in.size(), 0.0);
    for (int j = 0; j < cy; ++j)
        for (int i = 0; i < cx; ++i) {
            const std::size_t idx = like.comp_index(k, i, j);
            if (like.pinned(k, i, j)) {
                out[idx] = 0.0;
                continue;
            }
            double s = 0.0;
            // along x
            {
                const double c = in[idx];
                double lo, hi;
                if (k == 0) { // faces along x
                    lo = (i == 0) ? -c : in[like.comp_index(k, i - 1, j)];
                    hi = (i == cx - 1) ? -c : in[like.comp_index(k, i + 1, j)];
                } else { // nodes along x (pinned rows hold zeros)
                    lo = (i == 0) ? 0.0 : in[like.comp_index(k, i - 1, j)];
                    hi = (i == cx - 1) ? 0.0 : in[like.comp_index(k, i + 1, j)];
                    if (i == 0 || i == cx - 1) { out[idx] = 0.0; continue; }
                }
                s += (2.0 * c - lo - hi) / (hx * hx);
            }
            if (g.dim() == 2) {
                const double c = in[idx];
                double lo, hi;
                if (k == 1) {
                    lo = (j == 0) ? -c : in[like.comp_index(k, i, j - 1)];
                    hi = (j == cy - 1) ? -c : in[like.comp_index(k, i, j + 1)];
                } else {
                    lo = (j == 0) ? 0.0 : in[like.comp_index(k, i, j - 1)];
                    hi = (j == cy - 1) ? 0.0 : in[like.comp_index(k, i, j + 1)];
                    if (j == 0 || j == cy - 1) { out[idx] = 0.0; continue; }
                }
                s += (2.0 * c - lo - hi) / (hy * hy);
            }
            out[idx] = s;
        }
}

// CG for (I + nu (-Δ)) x = b on one component; pinned entries stay zero
int solve_viscous_component(const VectorField& like, int k, double nu,
                            const std::vector<double>& b, std::vector<double>& x,
                            double rel_tol) {
    const std::size_t n = b.size();
    x.assign(n, 0.0);
    std::vector<double> r = b, p, Ap(n), tmp(n);
    // zero pinned rhs entries
    {
        const int cx = like.comp_extent(k, 0);
        const int cy = like.comp_extent(k, 1);
        for (int j = 0; j < cy; ++j)
            for (int i = 0; i < cx; ++i)
                if (like.pinned(k, i, j)) r[like.comp_index(k, i, j)] = 0.0;
    }
    p = r;
    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        neg_laplacian_component(like, k, in, tmp);
        for (std::size_t m = 0; m < n; ++m) out[m] = in[m] + nu * tmp[m];
        const int cx = like.comp_extent(k, 0);
        const int cy = like.comp_extent(k, 1);
        for (int j = 0; j < cy; ++j)
            for (int i = 0; i < cx; ++i)
                if (like.pinned(k, i, j)) out[like.comp_index(k, i, j)] = 0.0;
    };
    double rr = 0.0, b2 = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        rr += r[m] * r[m];
        b2 += b[m] * b[m];
    }
    if (b2 == 0.0) return 0;
    const double stop2 = rel_tol * rel_tol * b2;
    int it = 0;
    const int max_iter = 4000;
    for (; it < max_iter && rr > stop2; ++it) {
        apply(p, Ap);
        double pAp = 0.0;
        for (std::size_t m = 0; m < n; ++m) pAp += p[m] * Ap[m];
        const double a = rr / pAp;
        for (std::size_t m = 0; m < n; ++m) {
            x[m] += a * p[m];
            r[m] -= a * Ap[m];
        }
        double rr_new = 0.0;
        for (std::size_t m = 0; m < n; ++m) rr_new += r[m] * r[m];
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t m = 0; m < n; ++m) p[m] = r[m] + beta * p[m];
    }
    if (rr > stop2 * 100)
        throw SolverError("strip viscous CG did not converge", std::sqrt(rr / b2), it);
    return it;
}

} // namespace

StripSolver::StripSolver(double a, double b, int nx, double eps, int n_zeta,
                         const StripParams& p)
    : grid_(Grid::rectangle(a, b, nx, -eps, eps, n_zeta)), eps_(eps), p_(p),
      ch_(grid_, p.ch) {
    if (n_zeta < 16)
        throw std::invalid_argument("StripSolver: need at least 16 cells across the gap");
    if (!(eps > 0.0)) throw std::invalid_argument("StripSolver: eps must be > 0");
    if (!(p.alpha > 0.0)) throw std::invalid_argument("StripSolver: alpha must be > 0");
}

StripState StripSolver::initialize(const std::function<double(double)>& phi0_of_x) const {
    return initialize2d([&](double x, double) { return phi0_of_x(x); });
}

StripState StripSolver::initialize2d(
    const std::function<double(double, double)>& phi0_x_zhat) const {
    StripState s;
    s.eps = eps_;
    s.t = 0.0;
    s.phi = ScalarField::sample(grid_, Bc::Neumann0,
                                [&](double x, double z) { return phi0_x_zhat(x, z / eps_); });
    s.mu = chemical_potential(s.phi, p_.ch.beta, p_.ch.lambda, p_.ch.pot);
    s.u = VectorField(grid_, Bc::Dirichlet0);
    s.p = ScalarField(grid_, Bc::Neumann0);
    return s;
}

void StripSolver::set_consistent_pressure(StripState& s, const Forcing& h1) const {
    VectorField bp = sample_forcing(h1, grid_, s.t);
    VectorField gphi = gradient(s.phi);
    VectorField muf = to_faces(s.mu);
    const double visc = p_.alpha * s.eps * s.eps;
    std::vector<double> lap;
    for (int k = 0; k < 2; ++k) {
        neg_laplacian_component(s.u, k, s.u.comp(k), lap);
        auto& bk = bp.comp(k);
        const auto& gk = gphi.comp(k);
        const auto& mk = muf.comp(k);
        for (std::size_t m = 0; m < bk.size(); ++m)
            bk[m] += mk[m] * gk[m] - visc * lap[m];
    }
    PoissonResult pp = solve_neumann_poisson(divergence(bp),
                                             PoissonOptions{p_.proj_rel_tol, 0, 1e-10, false});
    s.p = std::move(pp.q);
}

void StripSolver::set_initial_velocity(StripState& s,
                                       const std::function<double(double, double, int)>& shape,
                                       double l2_norm) const {
    VectorField raw = VectorField::sample(grid_, Bc::Dirichlet0, [&](double x, double z, int k) {
        return shape(x, z / eps_, k);
    });
    LerayResult lr = leray_project(raw, PoissonOptions{p_.proj_rel_tol, 0, 1e-10, false});
    const double n = norm2(lr.u);
    if (n == 0.0) throw std::invalid_argument("set_initial_velocity: shape projects to zero");
    s.u = lr.u;
    scale(s.u, l2_norm / n);
}

double StripSolver::energy(const StripState& s) const {
    ChState c;
    c.phi = s.phi;
    c.mu = s.mu;
    return ch_energy(c, &s.u, p_.ch);
}

StripStepDiag StripSolver::step(StripState& s, const Forcing& h1, double dt) const {
    if (!(dt > 0.0)) throw std::invalid_argument("strip_step: dt must be > 0");
    StripStepDiag diag;
    const double nu = dt * p_.alpha * s.eps * s.eps;

    const double e_before = energy(s);
    const ScalarField phi_old = s.phi;

    // explicit force μ∇φ + h at faces
    VectorField force = sample_forcing(h1, grid_, s.t + dt);
    VectorField hforce = force; // external part, for the work bookkeeping
    {
        VectorField gphi = gradient(s.phi);
        VectorField muf = to_faces(s.mu);
        for (int k = 0; k < force.components(); ++k) {
            auto& fk = force.comp(k);
            const auto& gk = gphi.comp(k);
            const auto& mk = muf.comp(k);
            for (std::size_t m = 0; m < fk.size(); ++m) fk[m] += mk[m] * gk[m];
        }
    }

    const double h_min = std::min(grid_.axis(0).h, grid_.axis(1).h);
    diag.cfl = dt * max_abs(force) / h_min;
    diag.cfl_violation = diag.cfl > 1.0;

    // implicit diffusion: (I + nu (-Δ)) u* = uⁿ + dt (μ∇φ + h)
    VectorField u_star(grid_, Bc::Dirichlet0);
    for (int k = 0; k < 2; ++k) {
        std::vector<double> rhs = s.u.comp(k);
        const auto& fk = force.comp(k);
        for (std::size_t m = 0; m < rhs.size(); ++m) rhs[m] += dt * fk[m];
        diag.visc_iterations +=
            solve_viscous_component(u_star, k, nu, rhs, u_star.comp(k), p_.visc_rel_tol);
    }
    u_star.enforce_tags();

    // dissipation and work of the viscous stage
    {
        std::vector<double> lap;
        double d = 0.0;
        for (int k = 0; k < 2; ++k) {
            neg_laplacian_component(u_star, k, u_star.comp(k), lap);
            const auto& uk = u_star.comp(k);
            const int cx = u_star.comp_extent(k, 0);
            const int cy = u_star.comp_extent(k, 1);
            for (int j = 0; j < cy; ++j)
                for (int i = 0; i < cx; ++i) {
                    const std::size_t idx = u_star.comp_index(k, i, j);
                    d += u_star.face_weight(k, i, j) * uk[idx] * lap[idx];
                }
        }
        diag.dissipation = p_.alpha * s.eps * s.eps * d;
        diag.work = dot(hforce, u_star);
    }

    // pressure projection
    const VectorField u_old = s.u;
    LerayResult lr = leray_project(u_star, PoissonOptions{p_.proj_rel_tol, 0, 1e-10, false});
    s.u = lr.u;
    diag.proj_iterations = lr.iterations;
    diag.div_inf = max_abs(divergence(s.u));

    // convective CH step with the projected velocity
    ChState cs;
    cs.phi = std::move(s.phi);
    cs.mu = std::move(s.mu);
    cs.t = s.t;
    ch_.step(cs, &s.u, dt);
    s.phi = std::move(cs.phi);
    s.mu = std::move(cs.mu);

    // diagnostic pressure from the momentum residual of the updated state:
    // ∇p = h + μ∇φ + αε²Δu - ∂ₜu, solved unmasked so the wall rows keep the
    // physical force values. Using the projected velocity and the fresh
    // (φ, μ) keeps the ζ-averaged pressure-relation residual proportional to
    // the velocity instead of the splitting lag.
    {
        VectorField bp = sample_forcing(h1, grid_, s.t + dt);
        VectorField gphi_new = gradient(s.phi);
        VectorField muf_new = to_faces(s.mu);
        const double visc = p_.alpha * s.eps * s.eps;
        std::vector<double> lap;
        for (int k = 0; k < 2; ++k) {
            neg_laplacian_component(s.u, k, s.u.comp(k), lap);
            auto& bk = bp.comp(k);
            const auto& gk = gphi_new.comp(k);
            const auto& mk = muf_new.comp(k);
            const auto& un = s.u.comp(k);
            const auto& uo = u_old.comp(k);
            for (std::size_t m = 0; m < bk.size(); ++m)
                bk[m] += mk[m] * gk[m] - visc * lap[m] - (un[m] - uo[m]) / dt;
        }
        PoissonResult pp = solve_neumann_poisson(divergence(bp),
                                                 PoissonOptions{p_.proj_rel_tol, 0, 1e-10, false});
        s.p = std::move(pp.q);
    }

    // chemical dissipation uses the implicit potential of the step identity
    {
        ScalarField mu_tilde = ch_.stabilized_potential(s.phi, phi_old);
        VectorField gmu = gradient(mu_tilde);
        diag.dissipation += dot(gmu, gmu);
    }

    s.t += dt;
    const double e_after = energy(s);
    diag.energy_slack = e_after - e_before + dt * diag.dissipation - dt * diag.work;
    return diag;
}

ScalarField m_eps(const ScalarField& f) {
    const Grid& g = f.grid();
    if (g.dim() != 2) throw std::invalid_argument("m_eps: strip field expected");
    const double eps = g.axis(1).hi;
    Grid line = Grid::interval(g.axis(0).lo, g.axis(0).hi, g.axis(0).n);
    ScalarField out(line, Bc::Neumann0);
    const double hz = g.axis(1).h;
    for (int i = 0; i < g.nodes(0); ++i) {
        double s = 0.0;
        for (int j = 0; j < g.nodes(1); ++j) s += g.trap(1, j) * hz * f(i, j);
        out(i) = s / (2.0 * eps);
    }
    return out;
}

std::vector<double> m_eps_velocity_x(const VectorField& u) {
    const Grid& g = u.grid();
    const double eps = g.axis(1).hi;
    const double hz = g.axis(1).h;
    std::vector<double> out(static_cast<std::size_t>(g.faces(0)), 0.0);
    for (int i = 0; i < g.faces(0); ++i) {
        double s = 0.0;
        for (int j = 0; j < g.nodes(1); ++j) s += g.trap(1, j) * hz * u.at(0, i, j);
        out[static_cast<std::size_t>(i)] = s / (2.0 * eps);
    }
    return out;
}

std::vector<double> m_eps_velocity_zeta(const VectorField& u) {
    const Grid& g = u.grid();
    const double eps = g.axis(1).hi;
    const double hz = g.axis(1).h;
    std::vector<double> out(static_cast<std::size_t>(g.nodes(0)), 0.0);
    for (int i = 0; i < g.nodes(0); ++i) {
        double s = 0.0;
        for (int j = 0; j < g.faces(1); ++j) s += hz * u.at(1, i, j);
        out[static_cast<std::size_t>(i)] = s / (2.0 * eps);
    }
    return out;
}

StripStudyReport convergence_study(const StripStudyConfig& cfg) {
    if (cfg.eps_list.size() < 2)
        throw std::invalid_argument("convergence_study: need a decreasing eps list");
    for (std::size_t i = 1; i < cfg.eps_list.size(); ++i)
        if (!(cfg.eps_list[i] < cfg.eps_list[i - 1]))
            throw std::invalid_argument("convergence_study: eps list must decrease");

    const int steps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));

    // shared 1D CH reference
    Grid line = Grid::interval(cfg.a, cfg.b, cfg.nx);
    CahnHilliardSolver ref(line, cfg.params.ch);
    std::vector<ScalarField> phi_ref;
    phi_ref.reserve(static_cast<std::size_t>(steps) + 1);
    {
        ChState rs = ref.make_state(ScalarField::sample(
            line, Bc::Neumann0, [&](double x, double) { return cfg.phi0(x); }));
        phi_ref.push_back(rs.phi);
        for (int k = 0; k < steps; ++k) {
            ref.step(rs, nullptr, cfg.dt);
            phi_ref.push_back(rs.phi);
        }
    }

    StripStudyReport rep;
    for (const double eps : cfg.eps_list) {
        StripSolver solver(cfg.a, cfg.b, cfg.nx, eps, cfg.n_zeta, cfg.params);
        StripState s =
            (cfg.pert_amp != 0.0 && cfg.phi0_pert)
                ? solver.initialize2d([&](double x, double zh) {
                      return cfg.phi0(x) + cfg.pert_amp * eps * cfg.phi0_pert(x, zh);
                  })
                : solver.initialize(cfg.phi0);
        if (cfg.u0_scale > 0.0) {
            // smooth interior eddy; the projection enforces the discrete
            // solenoidal no-slip structure
            auto shape = [](double x, double zh, int k) {
                const double sx = std::sin(kPi * x);
                const double sz = 1.0 - zh * zh;
                return (k == 0) ? sx * sx * (-2.0 * zh) * sz : kPi * std::sin(2.0 * kPi * x) * sz * sz;
            };
            solver.set_initial_velocity(s, shape, cfg.u0_scale * std::sqrt(eps));
        }
        solver.set_consistent_pressure(s, cfg.h1);
        const Grid& g = solver.grid();
        const double mass0 = mean(s.phi);

        StripStudyRow row;
        row.eps = eps;
        double e_phi2 = 0.0, e_u2 = 0.0, r_p2 = 0.0, mu_h1_int = 0.0, p_l2_int = 0.0;
        double u_linf = 0.0, phi_h1_max = 0.0;

        auto accumulate = [&](int k) {
            const double wt = (k == 0 || k == steps) ? 0.5 * cfg.dt : cfg.dt;
            // e_phi
            {
                ScalarField mphi = m_eps(s.phi);
                axpy(-1.0, phi_ref[static_cast<std::size_t>(k)], mphi);
                const double n = norm2(mphi);
                e_phi2 += wt * n * n;
            }
            // e_u: both averaged components
            {
                const std::vector<double> mx = m_eps_velocity_x(s.u);
                const std::vector<double> mz = m_eps_velocity_zeta(s.u);
                double n2 = 0.0;
                for (double v : mx) n2 += g.axis(0).h * v * v;
                for (int i = 0; i < g.nodes(0); ++i)
                    n2 += g.trap(0, i) * g.axis(0).h * mz[static_cast<std::size_t>(i)] *
                          mz[static_cast<std::size_t>(i)];
                e_u2 += wt * n2;
            }
            // r_p on x-faces
            {
                ScalarField mp = m_eps(s.p);
                VectorField gphi = gradient(s.phi);
                VectorField muf = to_faces(s.mu);
                double n2 = 0.0;
                const double hx = g.axis(0).h;
                const double hz = g.axis(1).h;
                const double epsm = 2.0 * eps;
                for (int i = 0; i < g.faces(0); ++i) {
                    const double dpx = (mp(i + 1) - mp(i)) / hx;
                    double mst = 0.0; // M_ε(μ ∂ₓφ) at this x-face
                    for (int j = 0; j < g.nodes(1); ++j)
                        mst += g.trap(1, j) * hz * muf.at(0, i, j) * gphi.at(0, i, j);
                    mst /= epsm;
                    const double h1v = cfg.h1.eval(s.t, g.face_coord(0, i), 0.0, 0);
                    const double r = dpx - h1v - mst;
                    n2 += hx * r * r;
                }
                r_p2 += wt * n2;
            }
            // a priori quantities
            u_linf = std::max(u_linf, norm2(s.u));
            {
                VectorField gp = gradient(s.phi);
                phi_h1_max = std::max(phi_h1_max,
                                      std::sqrt(dot(s.phi, s.phi) + dot(gp, gp)));
                VectorField gm = gradient(s.mu);
                mu_h1_int += wt * (dot(s.mu, s.mu) + dot(gm, gm));
                p_l2_int += wt * dot(s.p, s.p);
            }
            row.mass_drift = std::max(row.mass_drift, std::abs(mean(s.phi) - mass0));
        };

        accumulate(0);
        for (int k = 1; k <= steps; ++k) {
            StripStepDiag d = solver.step(s, cfg.h1, cfg.dt);
            row.max_energy_slack = std::max(row.max_energy_slack, d.energy_slack);
            accumulate(k);
        }

        row.e_phi = std::sqrt(e_phi2);
        row.e_u = std::sqrt(e_u2);
        row.r_p = std::sqrt(r_p2);
        const double se = 1.0 / std::sqrt(eps);
        row.su_linf_l2 = se * u_linf;
        row.sphi_linf_h1 = se * phi_h1_max;
        row.smu_l2_h1 = se * std::sqrt(mu_h1_int);
        row.sp_l2 = se * std::sqrt(p_l2_int);
        rep.rows.push_back(row);
    }

    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
        const double le = std::log(rep.rows[i].eps / rep.rows[i + 1].eps);
        auto rate = [&](double a, double b) {
            return (a > 0.0 && b > 0.0) ? std::log(a / b) / le : 0.0;
        };
        rep.rate_phi.push_back(rate(rep.rows[i].e_phi, rep.rows[i + 1].e_phi));
        rep.rate_u.push_back(rate(rep.rows[i].e_u, rep.rows[i + 1].e_u));
        rep.rate_p.push_back(rate(rep.rows[i].r_p, rep.rows[i + 1].r_p));
    }
    return rep;
}

} // namespace hsch
