#include "hsch/hsch2d.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace hsch {

HschSolver::HschSolver(const Grid& grid, const HschParams& params, const MemoryKernel& kernel)
    : grid_(grid), p_(params), kernel_(kernel), ch_(grid, params.ch), u0_(grid, Bc::None) {
    if (!kernel_.isotropic_diagonal())
        throw std::invalid_argument("HschSolver: kernel must be isotropic diagonal (G = g·I)");
    if (kernel_.dim() != grid.dim())
        throw std::invalid_argument("HschSolver: kernel dim must match grid dim");
}

std::vector<double> HschSolver::pack_faces(const VectorField& v) const {
    std::vector<double> out;
    for (int k = 0; k < v.components(); ++k)
        out.insert(out.end(), v.comp(k).begin(), v.comp(k).end());
    return out;
}

VectorField HschSolver::unpack_faces(const std::vector<double>& packed) const {
    VectorField v(grid_, Bc::None);
    std::size_t off = 0;
    for (int k = 0; k < v.components(); ++k) {
        std::copy(packed.begin() + static_cast<std::ptrdiff_t>(off),
                  packed.begin() + static_cast<std::ptrdiff_t>(off + v.comp_size(k)),
                  v.comp(k).begin());
        off += v.comp_size(k);
    }
    return v;
}

VectorField HschSolver::drive_field(const HschState& s, const Forcing& h1, double t) const {
    // h₁ + μ∇φ at faces (μ averaged to faces: the product rule that makes the
    // advection work cancel exactly)
    VectorField b = sample_forcing(h1, grid_, t);
    VectorField gphi = gradient(s.ch.phi);
    VectorField muf = to_faces(s.ch.mu);
    for (int k = 0; k < b.components(); ++k) {
        auto& bk = b.comp(k);
        const auto& gk = gphi.comp(k);
        const auto& mk = muf.comp(k);
        for (std::size_t m = 0; m < bk.size(); ++m) bk[m] += mk[m] * gk[m];
    }
    return b;
}

HschState HschSolver::initialize(const ScalarField& phi0, const VectorField* u0,
                                 const Forcing& h1) {
    HschState s;
    s.ch = ch_.make_state(phi0);
    s.t = 0.0;
    s.p = ScalarField(grid_, Bc::Neumann0);

    has_u0_ = (u0 != nullptr);
    if (has_u0_) {
        LerayResult lr = leray_project(*u0, PoissonOptions{p_.proj_rel_tol, 0, 1e-10, false});
        u0_ = lr.u;
    } else {
        u0_ = VectorField(grid_, Bc::None);
    }

    // u(0) = G(0) u⁰ (already solenoidal)
    s.u = u0_;
    scale(s.u, kernel_.evaluate_scalar(0.0));

    conv_b_.reset();
    conv_p_.reset();
    conv_gp_.reset();
    dt_ = 0.0;

    // seed the driving-field history at t = 0
    pending_seed_ = pack_faces(drive_field(s, h1, 0.0));
    return s;
}

HschStepDiag HschSolver::step(HschState& s, const Forcing& h1, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("hsch_step: dt must be > 0");
    HschStepDiag diag;

    if (p_.local_darcy_mobility) {
        // memoryless surrogate: u = P[m (h₁ + μ∇φ)], p from the projection
        VectorField b = drive_field(s, h1, s.t + dt);
        scale(b, *p_.local_darcy_mobility);
        LerayResult lr = leray_project(b, PoissonOptions{p_.proj_rel_tol, 0, 1e-10, false});
        s.u = lr.u;
        s.p = lr.q; // plays the role of m·p
        diag.proj_iterations = lr.iterations;
        diag.div_inf = max_abs(divergence(s.u));
        diag.u_inf = max_abs(s.u);
        diag.mean_p = mean(s.p);
        ch_.step(s.ch, &s.u, dt);
        s.t += dt;
        return diag;
    }

    if (conv_b_ == nullptr) {
        dt_ = dt;
        const std::size_t len = pending_seed_.size();
        conv_b_ = std::make_unique<ConvolutionState>(kernel_.entry(0, 0), len, dt);
        conv_b_->seed(pending_seed_);
        conv_p_ = std::make_unique<ConvolutionState>(kernel_.entry(0, 0),
                                                     grid_.node_count(), dt);
        conv_p_->seed(std::vector<double>(grid_.node_count(), 0.0));
        conv_gp_ = std::make_unique<ConvolutionState>(kernel_.entry(0, 0), len, dt);
        conv_gp_->seed(std::vector<double>(len, 0.0));
    } else if (std::abs(dt - dt_) > 1e-14 * std::max(1.0, dt_)) {
        throw std::invalid_argument("hsch_step: dt must stay fixed across a run");
    }

    const double t_new = s.t + dt;

    // velocity update with lagged (φ, μ)
    const std::vector<double> bt = pack_faces(drive_field(s, h1, t_new));
    const std::vector<double>& conv_val = conv_b_->step(bt);
    VectorField b = unpack_faces(conv_val);
    if (has_u0_) axpy(kernel_.evaluate_scalar(t_new), u0_, b);

    LerayResult lr = leray_project(b, PoissonOptions{p_.proj_rel_tol, 0, 1e-10, false});
    s.u = lr.u;
    diag.proj_iterations = lr.iterations;
    diag.div_inf = max_abs(divergence(s.u));
    diag.u_inf = max_abs(s.u);

    // pressure from q = g*p, newest-sample inversion
    std::vector<double> p_new;
    conv_p_->solve_step(lr.q.data(), p_new, p_.deconv_weight_floor);
    s.p = ScalarField(grid_, Bc::Neumann0);
    s.p.data() = std::move(p_new);
    {
        const double mp = mean(s.p);
        for (double& v : s.p.data()) v -= mp;
        diag.mean_p = mp;
    }

    // residual of the memory-Darcy relation via an independently advanced
    // convolution of ∇p
    {
        const std::vector<double> gp = pack_faces(masked_gradient(s.p, b));
        const std::vector<double>& gp_conv =
            (conv_gp_->steps() == 0) ? conv_gp_->step_replacing_seed(gp) : conv_gp_->step(gp);
        VectorField resid = b; // G u⁰ + G*(h₁+μ∇φ)
        VectorField gpv = unpack_faces(gp_conv);
        axpy(-1.0, gpv, resid);
        axpy(-1.0, s.u, resid);
        diag.darcy_residual = norm2(resid);
    }

    // CH step with the fresh velocity
    ch_.step(s.ch, &s.u, dt);
    s.t = t_new;
    return diag;
}

DependenceReport continuous_dependence_test(const Grid& grid, const HschParams& params,
                                            const MemoryKernel& kernel,
                                            const ScalarField& phi0, const ScalarField& shape,
                                            double delta, const Forcing& h1, double dt,
                                            double t_end) {
    DependenceReport rep;
    rep.delta = delta;

    auto run = [&](const ScalarField& p0) {
        HschSolver solver(grid, params, kernel);
        HschState s = solver.initialize(p0, nullptr, h1);
        std::vector<ScalarField> traj;
        traj.push_back(s.ch.phi);
        const int steps = static_cast<int>(std::llround(t_end / dt));
        for (int k = 0; k < steps; ++k) {
            solver.step(s, h1, dt);
            traj.push_back(s.ch.phi);
        }
        return traj;
    };

    ScalarField p1 = phi0;
    axpy(delta, shape, p1);

    const std::vector<ScalarField> base = run(phi0);
    const std::vector<ScalarField> pert = run(p1);

    if (delta == 0.0) {
        rep.exact_match = true;
        for (std::size_t k = 0; k < base.size(); ++k) {
            const auto& a = base[k].data();
            const auto& b = pert[k].data();
            if (std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) != 0) {
                rep.exact_match = false;
                break;
            }
        }
        rep.sup_ratio = 0.0;
        return rep;
    }

    double sup = 0.0;
    for (std::size_t k = 0; k < base.size(); ++k) {
        ScalarField d = pert[k];
        axpy(-1.0, base[k], d);
        sup = std::max(sup, norm2(d));
    }
    rep.sup_ratio = sup / delta;
    return rep;
}

} // namespace hsch
