#include "hsch/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsch/rng.hpp"

namespace hsch {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

FieldNorms norms(const ScalarField& f) {
    const Grid& g = f.grid();
    FieldNorms n;
    const int nx = g.nodes(0);
    const int ny = (g.dim() == 2) ? g.nodes(1) : 1;
    double s2 = 0.0, s4 = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double w = g.node_weight(i, j);
            const double v = f(i, j);
            s2 += w * v * v;
            s4 += w * v * v * v * v;
            n.linf = std::max(n.linf, std::abs(v));
        }
    n.l2 = std::sqrt(s2);
    n.l4 = std::pow(s4, 0.25);
    VectorField grad = gradient(f);
    n.h1_semi = norm2(grad);
    return n;
}

namespace {

struct Mode {
    double a;
    int k, m;
};

// f = Σ a sin(kπ(ζ+1)/2) cos(mπ(x-lo)/Lx) on a strip, Dirichlet at ζ = ±1
ScalarField strip_sample(const Grid& g, const std::vector<Mode>& modes) {
    return ScalarField::sample(g, Bc::Dirichlet0, [&](double x, double z) {
        const double lx = g.axis(0).hi - g.axis(0).lo;
        double s = 0.0;
        for (const Mode& md : modes)
            s += md.a * std::sin(md.k * kPi * (z + 1.0) / 2.0) *
                 std::cos(md.m * kPi * (x - g.axis(0).lo) / lx);
        return s;
    });
}

// f = Σ a cos(kπx/Lx) cos(mπy/Ly) on the unit square, Neumann
ScalarField square_sample(const Grid& g, const std::vector<Mode>& modes) {
    return ScalarField::sample(g, Bc::Neumann0, [&](double x, double y) {
        const double lx = g.axis(0).hi - g.axis(0).lo;
        const double ly = g.axis(1).hi - g.axis(1).lo;
        double s = 0.0;
        for (const Mode& md : modes)
            s += md.a * std::cos(md.k * kPi * (x - g.axis(0).lo) / lx) *
                 std::cos(md.m * kPi * (y - g.axis(1).lo) / ly);
        return s;
    });
}

std::vector<Mode> random_modes(Rng& rng, int count, int kmax, bool k_from_one) {
    std::vector<Mode> mm(static_cast<std::size_t>(count));
    for (Mode& md : mm) {
        md.a = rng.uniform(-1.0, 1.0);
        md.k = k_from_one ? 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(kmax))
                          : static_cast<int>(rng.next() % static_cast<std::uint64_t>(kmax + 1));
        md.m = static_cast<int>(rng.next() % static_cast<std::uint64_t>(kmax + 1));
    }
    return mm;
}

double ratio_for(InequalityKind kind, const ScalarField& f) {
    const FieldNorms n = norms(f);
    switch (kind) {
        case InequalityKind::PoincareStrip:
            return (n.h1_semi > 0.0) ? n.l2 / n.h1_semi : 0.0;
        case InequalityKind::Agmon: {
            ScalarField lap = laplacian(f);
            const double l2lap = norms(lap).l2;
            const double h2 = std::sqrt(n.l2 * n.l2 + n.h1_semi * n.h1_semi + l2lap * l2lap);
            const double den = std::sqrt(n.l2) * std::sqrt(h2);
            return (den > 0.0) ? n.linf / den : 0.0;
        }
        case InequalityKind::GagliardoNirenbergL4: {
            const double den = std::sqrt(n.l2 * n.h1_semi) + n.l2;
            return (den > 0.0) ? n.l4 / den : 0.0;
        }
    }
    return 0.0;
}

} // namespace

InequalityReport inequality_check(InequalityKind kind, int samples, std::uint64_t seed,
                                  int n_base) {
    InequalityReport rep;
    rep.samples = samples;
    Rng rng(seed);

    auto make_grid = [&](int n) {
        if (kind == InequalityKind::PoincareStrip)
            return Grid::rectangle(0.0, 2.0, n, -1.0, 1.0, n);
        return Grid::rectangle(0.0, 1.0, n, 0.0, 1.0, n);
    };
    const Grid g0 = make_grid(n_base);
    const Grid g1 = make_grid(2 * n_base);

    switch (kind) {
        case InequalityKind::PoincareStrip: rep.name = "poincare_strip"; break;
        case InequalityKind::Agmon: rep.name = "agmon"; break;
        case InequalityKind::GagliardoNirenbergL4: rep.name = "gn_l4"; break;
    }

    for (int s = 0; s < samples; ++s) {
        const std::vector<Mode> modes =
            random_modes(rng, 4, 4, kind == InequalityKind::PoincareStrip);
        const ScalarField f0 = (kind == InequalityKind::PoincareStrip)
                                   ? strip_sample(g0, modes)
                                   : square_sample(g0, modes);
        const ScalarField f1 = (kind == InequalityKind::PoincareStrip)
                                   ? strip_sample(g1, modes)
                                   : square_sample(g1, modes);
        rep.max_ratio = std::max(rep.max_ratio, ratio_for(kind, f0));
        rep.max_ratio_refined = std::max(rep.max_ratio_refined, ratio_for(kind, f1));
    }

    if (kind == InequalityKind::PoincareStrip) {
        const std::vector<Mode> eig = {{1.0, 1, 0}};
        rep.eigenfunction_ratio = ratio_for(kind, strip_sample(g0, eig));
    }

    rep.grid_stable =
        rep.max_ratio > 0.0 &&
        std::abs(rep.max_ratio_refined - rep.max_ratio) <= 0.10 * rep.max_ratio;
    return rep;
}

GronwallReport gronwall_envelope(const std::vector<double>& u, const std::vector<double>& v,
                                 const std::vector<std::vector<double>>& h, double c1,
                                 double c2, double dt, double slack) {
    if (u.size() != v.size() || u.empty())
        throw std::invalid_argument("gronwall_envelope: u, v size mismatch");
    if (!h.empty() && h.size() != u.size())
        throw std::invalid_argument("gronwall_envelope: h rows must match u");
    for (double x : u)
        if (x < 0.0) throw std::invalid_argument("gronwall_envelope: series must be nonnegative");

    const std::size_t n = u.size();
    GronwallReport rep;
    rep.hypothesis_ok = true;
    rep.bound_ok = true;

    auto trap = [&](const std::vector<double>& f, std::size_t upto) {
        double s = 0.0;
        for (std::size_t k = 1; k <= upto; ++k) s += 0.5 * dt * (f[k - 1] + f[k]);
        return s;
    };

    // inner ∫ h(s,·)u and ∫ h(s,·)
    std::vector<double> hu(n, 0.0), h1(n, 0.0);
    if (!h.empty()) {
        for (std::size_t k = 0; k < n; ++k) {
            if (h[k].size() != k + 1)
                throw std::invalid_argument("gronwall_envelope: h must be lower triangular");
            double su = 0.0, s1 = 0.0;
            for (std::size_t r = 1; r <= k; ++r) {
                su += 0.5 * dt * (h[k][r - 1] * u[r - 1] + h[k][r] * u[r]);
                s1 += 0.5 * dt * (h[k][r - 1] + h[k][r]);
            }
            hu[k] = su;
            h1[k] = s1;
        }
    }

    std::vector<double> inner_u(n), inner_1(n);
    for (std::size_t k = 0; k < n; ++k) {
        inner_u[k] = v[k] * u[k] + hu[k];
        inner_1[k] = v[k] + h1[k];
    }

    const double tol = slack * std::max(1.0, std::abs(c1));
    for (std::size_t k = 0; k < n; ++k) {
        const double hyp = c1 + c2 * trap(inner_u, k);
        if (u[k] > hyp + tol) {
            rep.hypothesis_ok = false;
            rep.max_hypothesis_violation = std::max(rep.max_hypothesis_violation, u[k] - hyp);
        }
        const double bound = c1 * std::exp(c2 * trap(inner_1, k));
        if (u[k] > bound + tol) {
            rep.bound_ok = false;
            rep.max_violation = std::max(rep.max_violation, u[k] - bound);
        }
    }
    return rep;
}

} // namespace hsch
