#include "hsch/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "hsch/errors.hpp"

namespace hsch {

VectorField masked_gradient(const ScalarField& f, const VectorField& like) {
    VectorField g = gradient(f);
    for (int k = 0; k < g.components(); ++k) {
        g.set_bc(k, like.bc(k));
    }
    g.enforce_tags();
    return g;
}

namespace {

// diagonal of -divergence∘masked_gradient (positive; for Jacobi)
ScalarField operator_diagonal(const Grid& g, const VectorField& mask) {
    ScalarField d(g, Bc::None);
    const int nx = g.nodes(0);
    const int ny = (g.dim() == 2) ? g.nodes(1) : 1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double s = 0.0;
            for (int k = 0; k < g.dim(); ++k) {
                const double h = g.axis(k).h;
                const int idx = (k == 0) ? i : j;
                const int n = g.axis(k).n;
                // faces idx-1 and idx of axis k around this node
                for (int f = idx - 1; f <= idx; ++f) {
                    if (f < 0 || f >= n) continue;
                    const int fi = (k == 0) ? f : i;
                    const int fj = (k == 0) ? j : f;
                    if (mask.pinned(k, fi, fj)) continue;
                    const bool boundary_node = (idx == 0 || idx == n);
                    s += (boundary_node ? 2.0 : 1.0) / (h * h);
                }
            }
            d(i, j) = (s > 0.0) ? s : 1.0;
        }
    return d;
}

// A = -div∘grad (symmetric positive semidefinite in the trapezoid product)
inline ScalarField apply_operator(const ScalarField& x, const VectorField& mask) {
    ScalarField y = divergence(masked_gradient(x, mask));
    for (double& v : y.data()) v = -v;
    return y;
}

void subtract_mean(ScalarField& f) {
    const double m = mean(f);
    for (double& v : f.data()) v -= m;
}

} // namespace

PoissonResult solve_neumann_poisson(const ScalarField& rhs, const PoissonOptions& opt) {
    return solve_neumann_poisson(rhs, VectorField(rhs.grid(), Bc::None), opt);
}

PoissonResult solve_neumann_poisson(const ScalarField& rhs, const VectorField& mask,
                                    const PoissonOptions& opt) {
    const Grid& g = rhs.grid();
    PoissonResult res;
    res.q = ScalarField(g, Bc::Neumann0);
    res.removed_mean = mean(rhs);

    const double rhs_inf = max_abs(rhs);
    if (opt.enforce_compat && std::abs(res.removed_mean) > opt.compat_tol * std::max(rhs_inf, 1e-300))
        throw std::invalid_argument("solve_neumann_poisson: rhs incompatible beyond tolerance");

    // laplacian(q) = rhs  <=>  A q = -rhs with A = -div grad
    ScalarField b = rhs;
    for (double& v : b.data()) v = -(v - res.removed_mean);

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        res.residual_rel = 0.0;
        res.residual_inf = 0.0;
        res.iterations = 0;
        return res;
    }

    ScalarField diag = operator_diagonal(g, mask);
    auto precond = [&](const ScalarField& r) {
        ScalarField z = r;
        auto& zv = z.data();
        const auto& dv = diag.data();
        for (std::size_t m = 0; m < zv.size(); ++m) zv[m] /= dv[m];
        subtract_mean(z);
        return z;
    };

    const int big_n = std::max(g.nodes(0), g.dim() == 2 ? g.nodes(1) : 0);
    const int max_iter = (opt.max_iter > 0) ? opt.max_iter : 80 * big_n + 4000;

    ScalarField x(g, Bc::Neumann0);
    ScalarField r = b;
    ScalarField z = precond(r);
    ScalarField p = z;
    double rz = dot(r, z);
    int it = 0;
    for (; it < max_iter; ++it) {
        if (norm2(r) <= opt.rel_tol * bnorm) break;
        ScalarField Ap = apply_operator(p, mask);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0.0)) break; // exhausted the positive subspace
        const double alpha = rz / pAp;
        axpy(alpha, p, x);
        axpy(-alpha, Ap, r);
        z = precond(r);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        scale(p, beta);
        axpy(1.0, z, p);
    }
    // true residual
    ScalarField rr = b;
    axpy(-1.0, apply_operator(x, mask), rr);
    const double res_rel = norm2(rr) / bnorm;
    if (res_rel > opt.rel_tol * 10 && it >= max_iter)
        throw SolverError("solve_neumann_poisson: CG did not converge, residual " +
                              std::to_string(res_rel),
                          res_rel, it);

    subtract_mean(x);
    res.q = x;
    res.residual_rel = res_rel;
    res.residual_inf = max_abs(rr);
    res.iterations = it;
    return res;
}

LerayResult leray_project(const VectorField& b, const PoissonOptions& opt) {
    ScalarField rhs = divergence(b);
    PoissonResult pr = solve_neumann_poisson(rhs, b, opt);
    VectorField u = b;
    axpy(-1.0, masked_gradient(pr.q, b), u);
    LerayResult lr;
    lr.u = std::move(u);
    lr.q = std::move(pr.q);
    lr.residual_rel = pr.residual_rel;
    lr.residual_inf = pr.residual_inf;
    lr.iterations = pr.iterations;
    return lr;
}

} // namespace hsch
