#include "hsch/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsch {

VectorField gradient(const ScalarField& f) {
    const Grid& g = f.grid();
    VectorField out(g, Bc::None);
    const int nx = g.nodes(0);
    const double hx = g.axis(0).h;
    if (g.dim() == 1) {
        for (int i = 0; i < g.faces(0); ++i)
            out.at(0, i) = (f(i + 1) - f(i)) / hx;
        return out;
    }
    const int ny = g.nodes(1);
    const double hy = g.axis(1).h;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx - 1; ++i)
            out.at(0, i, j) = (f(i + 1, j) - f(i, j)) / hx;
    for (int j = 0; j < ny - 1; ++j)
        for (int i = 0; i < nx; ++i)
            out.at(1, i, j) = (f(i, j + 1) - f(i, j)) / hy;
    return out;
}

ScalarField divergence(const VectorField& v) {
    const Grid& g = v.grid();
    ScalarField out(g, Bc::None);
    const double hx = g.axis(0).h;
    const int nx = g.nodes(0);
    auto dif_x = [&](int i, int j) {
        // faces i-1/2 and i+1/2 around node i; boundary nodes own half cells
        if (i == 0) return v.at(0, 0, j) / (0.5 * hx);
        if (i == nx - 1) return -v.at(0, nx - 2, j) / (0.5 * hx);
        return (v.at(0, i, j) - v.at(0, i - 1, j)) / hx;
    };
    if (g.dim() == 1) {
        for (int i = 0; i < nx; ++i) out(i) = dif_x(i, 0);
        return out;
    }
    const double hy = g.axis(1).h;
    const int ny = g.nodes(1);
    auto dif_y = [&](int i, int j) {
        if (j == 0) return v.at(1, i, 0) / (0.5 * hy);
        if (j == ny - 1) return -v.at(1, i, ny - 2) / (0.5 * hy);
        return (v.at(1, i, j) - v.at(1, i, j - 1)) / hy;
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out(i, j) = dif_x(i, j) + dif_y(i, j);
    return out;
}

namespace {

// 1D second difference with ghost from the bc; i in [0, n]
inline double d2_line(const ScalarField& f, Bc bc, int axis, int i, int j, int n, double h) {
    auto val = [&](int a) { return (axis == 0) ? f(a, j) : f(i, a); };
    const int idx = (axis == 0) ? i : j;
    double lo, mid = val(idx), hi;
    if (idx == 0) {
        hi = val(1);
        lo = (bc == Bc::Neumann0) ? hi : -hi; // mirror / odd reflection
    } else if (idx == n) {
        lo = val(n - 1);
        hi = (bc == Bc::Neumann0) ? lo : -lo;
    } else {
        lo = val(idx - 1);
        hi = val(idx + 1);
    }
    return (lo - 2.0 * mid + hi) / (h * h);
}

} // namespace

ScalarField laplacian(const ScalarField& f) {
    if (f.bc() == Bc::None)
        throw std::invalid_argument("laplacian: field needs a Neumann0 or Dirichlet0 tag");
    const Grid& g = f.grid();
    ScalarField out(g, f.bc());
    const int nx = g.nodes(0);
    const int ny = (g.dim() == 2) ? g.nodes(1) : 1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double s = d2_line(f, f.bc(), 0, i, j, g.axis(0).n, g.axis(0).h);
            if (g.dim() == 2)
                s += d2_line(f, f.bc(), 1, i, j, g.axis(1).n, g.axis(1).h);
            out(i, j) = s;
        }
    return out;
}

VectorField to_faces(const ScalarField& f) {
    const Grid& g = f.grid();
    VectorField out(g, Bc::None);
    const int nx = g.nodes(0);
    const int ny = (g.dim() == 2) ? g.nodes(1) : 1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx - 1; ++i)
            out.at(0, i, j) = 0.5 * (f(i, j) + f(i + 1, j));
    if (g.dim() == 2)
        for (int j = 0; j < ny - 1; ++j)
            for (int i = 0; i < nx; ++i)
                out.at(1, i, j) = 0.5 * (f(i, j) + f(i, j + 1));
    return out;
}

ScalarField advect(const VectorField& v, const ScalarField& phi) {
    if (v.grid() != phi.grid())
        throw std::invalid_argument("advect: grid mismatch");
    VectorField flux = to_faces(phi);
    for (int k = 0; k < v.components(); ++k) {
        auto& fk = flux.comp(k);
        const auto& vk = v.comp(k);
        for (std::size_t m = 0; m < fk.size(); ++m) fk[m] *= vk[m];
    }
    return divergence(flux);
}

double dot(const ScalarField& a, const ScalarField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("dot: grid mismatch");
    const Grid& g = a.grid();
    const int nx = g.nodes(0);
    const int ny = (g.dim() == 2) ? g.nodes(1) : 1;
    double s = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            s += g.node_weight(i, j) * a(i, j) * b(i, j);
    return s;
}

double dot(const VectorField& a, const VectorField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("dot: grid mismatch");
    double s = 0.0;
    for (int k = 0; k < a.components(); ++k) {
        const int cx = a.comp_extent(k, 0);
        const int cy = a.comp_extent(k, 1);
        for (int j = 0; j < cy; ++j)
            for (int i = 0; i < cx; ++i)
                s += a.face_weight(k, i, j) * a.at(k, i, j) * b.at(k, i, j);
    }
    return s;
}

double norm2(const ScalarField& a) { return std::sqrt(dot(a, a)); }
double norm2(const VectorField& a) { return std::sqrt(dot(a, a)); }

double max_abs(const ScalarField& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const VectorField& a) {
    double m = 0.0;
    for (int k = 0; k < a.components(); ++k)
        for (double x : a.comp(k)) m = std::max(m, std::abs(x));
    return m;
}

double mean(const ScalarField& f) {
    ScalarField one(f.grid(), Bc::None, 1.0);
    return dot(f, one) / f.grid().measure();
}

void axpy(double a, const ScalarField& x, ScalarField& y) {
    const auto& xv = x.data();
    auto& yv = y.data();
    for (std::size_t m = 0; m < yv.size(); ++m) yv[m] += a * xv[m];
}

void axpy(double a, const VectorField& x, VectorField& y) {
    for (int k = 0; k < y.components(); ++k) {
        const auto& xv = x.comp(k);
        auto& yv = y.comp(k);
        for (std::size_t m = 0; m < yv.size(); ++m) yv[m] += a * xv[m];
    }
    y.enforce_tags();
}

void scale(ScalarField& x, double a) {
    for (double& v : x.data()) v *= a;
}

void scale(VectorField& x, double a) {
    for (int k = 0; k < x.components(); ++k)
        for (double& v : x.comp(k)) v *= a;
}

} // namespace hsch
