#include "hsch/spectral.hpp"

#include <cmath>

namespace hsch {

NeumannSpectral::AxisBasis NeumannSpectral::build_axis(const Axis& a) {
    AxisBasis b;
    b.n = a.n;
    const int m = a.n + 1;
    b.P.assign(static_cast<std::size_t>(m) * m, 0.0);
    b.PtW.assign(static_cast<std::size_t>(m) * m, 0.0);
    b.sigma.assign(m, 0.0);
    const double pi = 3.14159265358979323846264338327950288;
    for (int k = 0; k < m; ++k)
        b.sigma[k] = (2.0 - 2.0 * std::cos(pi * k / a.n)) / (a.h * a.h);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            b.P[static_cast<std::size_t>(i) * m + k] = std::cos(pi * k * i / a.n);
    // N_k = sum_i w_i cos^2 with trapezoid weights (h cancels between the
    // forward weights and the norm)
    for (int k = 0; k < m; ++k) {
        double nk = 0.0;
        for (int i = 0; i < m; ++i) {
            const double w = (i == 0 || i == a.n) ? 0.5 : 1.0;
            const double c = b.P[static_cast<std::size_t>(i) * m + k];
            nk += w * c * c;
        }
        for (int i = 0; i < m; ++i) {
            const double w = (i == 0 || i == a.n) ? 0.5 : 1.0;
            b.PtW[static_cast<std::size_t>(k) * m + i] =
                b.P[static_cast<std::size_t>(i) * m + k] * w / nk;
        }
    }
    return b;
}

NeumannSpectral::NeumannSpectral(const Grid& grid) : grid_(grid) {
    ax_[0] = build_axis(grid.axis(0));
    if (grid.dim() == 2) ax_[1] = build_axis(grid.axis(1));
}

void NeumannSpectral::apply_axis0(const std::vector<double>& m, const std::vector<double>& in,
                                  std::vector<double>& out) const {
    const int nx = grid_.nodes(0);
    const int ny = (grid_.dim() == 2) ? grid_.nodes(1) : 1;
    out.assign(in.size(), 0.0);
    for (int j = 0; j < ny; ++j) {
        const double* col = in.data() + static_cast<std::size_t>(j) * nx;
        double* res = out.data() + static_cast<std::size_t>(j) * nx;
        for (int r = 0; r < nx; ++r) {
            const double* row = m.data() + static_cast<std::size_t>(r) * nx;
            double s = 0.0;
            for (int i = 0; i < nx; ++i) s += row[i] * col[i];
            res[r] = s;
        }
    }
}

void NeumannSpectral::apply_axis1(const std::vector<double>& m, const std::vector<double>& in,
                                  std::vector<double>& out) const {
    const int nx = grid_.nodes(0);
    const int ny = grid_.nodes(1);
    out.assign(in.size(), 0.0);
    for (int r = 0; r < ny; ++r) {
        const double* row = m.data() + static_cast<std::size_t>(r) * ny;
        for (int i = 0; i < nx; ++i) {
            double s = 0.0;
            for (int j = 0; j < ny; ++j) s += row[j] * in[static_cast<std::size_t>(j) * nx + i];
            out[static_cast<std::size_t>(r) * nx + i] = s;
        }
    }
}

ScalarField NeumannSpectral::solve(double c0, double c1, double c2,
                                   const ScalarField& rhs) const {
    const int nx = grid_.nodes(0);
    const int ny = (grid_.dim() == 2) ? grid_.nodes(1) : 1;

    std::vector<double> coef, tmp;
    apply_axis0(ax_[0].PtW, rhs.data(), coef);
    if (grid_.dim() == 2) {
        apply_axis1(ax_[1].PtW, coef, tmp);
        coef.swap(tmp);
    }

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double sig = ax_[0].sigma[i] + (grid_.dim() == 2 ? ax_[1].sigma[j] : 0.0);
            const double den = c0 + c1 * sig + c2 * sig * sig;
            double& c = coef[static_cast<std::size_t>(j) * nx + i];
            c = (den != 0.0) ? c / den : 0.0; // zero mode dropped when singular
        }

    // back transform: f = P c (per axis)
    std::vector<double> outv;
    // P uses row index i, column k: reuse apply with the transpose layout
    // build-on-the-fly transposed multiply: out[i] = sum_k P[i,k] c[k]
    {
        const auto& P = ax_[0].P;
        outv.assign(coef.size(), 0.0);
        for (int j = 0; j < ny; ++j) {
            const double* col = coef.data() + static_cast<std::size_t>(j) * nx;
            double* res = outv.data() + static_cast<std::size_t>(j) * nx;
            for (int i = 0; i < nx; ++i) {
                const double* row = P.data() + static_cast<std::size_t>(i) * nx;
                double s = 0.0;
                for (int k = 0; k < nx; ++k) s += row[k] * col[k];
                res[i] = s;
            }
        }
    }
    if (grid_.dim() == 2) {
        const auto& P = ax_[1].P;
        tmp.assign(outv.size(), 0.0);
        for (int jj = 0; jj < ny; ++jj) {
            const double* row = P.data() + static_cast<std::size_t>(jj) * ny;
            for (int i = 0; i < nx; ++i) {
                double s = 0.0;
                for (int k = 0; k < ny; ++k) s += row[k] * outv[static_cast<std::size_t>(k) * nx + i];
                tmp[static_cast<std::size_t>(jj) * nx + i] = s;
            }
        }
        outv.swap(tmp);
    }

    ScalarField out(grid_, Bc::Neumann0);
    out.data() = std::move(outv);
    return out;
}

} // namespace hsch
