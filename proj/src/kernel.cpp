#include "hsch/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsch {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

std::array<double, 2> KernelValue::eigenvalues() const {
    if (dim == 1) return {a[0], a[0]};
    const double tr = a[0] + a[3];
    const double det = a[0] * a[3] - a[1] * a[2];
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {tr / 2.0 - disc, tr / 2.0 + disc};
}

MemoryKernel::MemoryKernel(int dim) : dim_(dim) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("MemoryKernel: dim must be 1 or 2");
}

std::size_t MemoryKernel::slot(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
        throw std::out_of_range("MemoryKernel: entry index");
    if (i == j) return static_cast<std::size_t>(i);
    return 2;
}

void MemoryKernel::set_entry(int i, int j, std::vector<KernelMode> modes) {
    for (const KernelMode& m : modes)
        if (!(m.weight > 0.0) || !(m.rate > 0.0) || !std::isfinite(m.weight) ||
            !std::isfinite(m.rate))
            throw std::invalid_argument("MemoryKernel: modes need positive finite weight and rate");
    entries_[slot(i, j)] = std::move(modes);
}

const std::vector<KernelMode>& MemoryKernel::entry(int i, int j) const {
    return entries_[slot(i, j)];
}

KernelValue MemoryKernel::evaluate(double t) const {
    if (t < 0.0) throw std::invalid_argument("MemoryKernel::evaluate: negative time");
    KernelValue v;
    v.dim = dim_;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j) {
            double s = 0.0;
            for (const KernelMode& m : entries_[slot(i, j)])
                s += m.weight * std::exp(-m.rate * t);
            v(i, j) = s;
            v(j, i) = s;
        }
    return v;
}

double MemoryKernel::evaluate_scalar(double t) const {
    if (t < 0.0) throw std::invalid_argument("MemoryKernel::evaluate_scalar: negative time");
    double s = 0.0;
    for (const KernelMode& m : entries_[0]) s += m.weight * std::exp(-m.rate * t);
    return s;
}

double MemoryKernel::min_rate() const {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& e : entries_)
        for (const KernelMode& m : e) r = std::min(r, m.rate);
    return r;
}

double MemoryKernel::weight_sum() const {
    double s = 0.0;
    for (const KernelMode& m : entries_[0]) s += m.weight;
    return s;
}

bool MemoryKernel::isotropic_diagonal() const {
    if (!entries_[2].empty()) return false;
    if (dim_ == 1) return true;
    if (entries_[0].size() != entries_[1].size()) return false;
    for (std::size_t k = 0; k < entries_[0].size(); ++k)
        if (entries_[0][k].weight != entries_[1][k].weight ||
            entries_[0][k].rate != entries_[1][k].rate)
            return false;
    return true;
}

double CellProblemReduction::eigenvalue(int n) const {
    return alpha * (n * kPi / 2.0) * (n * kPi / 2.0);
}

double CellProblemReduction::series_weight(int n) {
    if (n % 2 == 0) return 0.0;
    return 8.0 / (static_cast<double>(n) * n * kPi * kPi);
}

CellProblemReduction reduce_cell_problem(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("reduce_cell_problem: alpha must be > 0");
    CellProblemReduction r;
    r.alpha = alpha;
    return r;
}

MemoryKernel kernel_series(double alpha, int n_modes, int dim) {
    if (!(alpha > 0.0)) throw std::invalid_argument("kernel_series: alpha must be > 0");
    if (n_modes < 1) throw std::invalid_argument("kernel_series: need at least one mode");
    std::vector<KernelMode> modes;
    modes.reserve(static_cast<std::size_t>(n_modes));
    for (int k = 1; k <= n_modes; ++k) {
        const int n = 2 * k - 1;
        KernelMode m;
        m.weight = 8.0 / (static_cast<double>(n) * n * kPi * kPi);
        m.rate = alpha * n * n * kPi * kPi / 4.0;
        modes.push_back(m);
    }
    // exact weight tail: 1 - Σ 8/(n²π²), summed small-to-large
    long double sum = 0.0L;
    for (int k = n_modes; k >= 1; --k) {
        const long double n = 2.0L * k - 1.0L;
        sum += 8.0L / (n * n * static_cast<long double>(kPi) * kPi);
    }
    const double tail = static_cast<double>(std::max(0.0L, 1.0L - sum));

    MemoryKernel kern(dim);
    for (int i = 0; i < dim; ++i) kern.set_entry(i, i, modes);
    kern.set_truncation_error_bound(tail);
    return kern;
}

KernelFdResult kernel_fd(double alpha, const Grid& grid, double dt, double t_end,
                         int profile_stride) {
    if (!(alpha > 0.0)) throw std::invalid_argument("kernel_fd: alpha must be > 0");
    if (grid.dim() != 1) throw std::invalid_argument("kernel_fd: 1D grid expected");
    if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("kernel_fd: dt, t_end > 0");

    const int n = grid.axis(0).n;
    const double h = grid.axis(0).h;
    const int steps = static_cast<int>(std::llround(t_end / dt));
    if (profile_stride <= 0) profile_stride = std::max(1, steps / 256);

    // interior unknowns w_1..w_{n-1}; walls pinned to zero
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 1.0);
    w[0] = 0.0;
    w[static_cast<std::size_t>(n)] = 0.0;

    const double r = alpha * dt / (h * h);

    // (I - theta r D2) factorization, shared by the CN steps and (with r/2)
    // by the Rannacher half steps
    struct Tri {
        std::vector<double> c_prime; // forward-eliminated super-diagonal
        double diag, off;
        int m;
        void build(int m_, double diag_, double off_) {
            m = m_;
            diag = diag_;
            off = off_;
            c_prime.assign(static_cast<std::size_t>(m), 0.0);
            c_prime[0] = off / diag;
            for (int i = 1; i < m; ++i)
                c_prime[static_cast<std::size_t>(i)] =
                    off / (diag - off * c_prime[static_cast<std::size_t>(i - 1)]);
        }
        void solve(std::vector<double>& d) const {
            d[0] /= diag;
            for (int i = 1; i < m; ++i)
                d[static_cast<std::size_t>(i)] =
                    (d[static_cast<std::size_t>(i)] - off * d[static_cast<std::size_t>(i - 1)]) /
                    (diag - off * c_prime[static_cast<std::size_t>(i - 1)]);
            for (int i = m - 2; i >= 0; --i)
                d[static_cast<std::size_t>(i)] -=
                    c_prime[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i + 1)];
        }
    };

    const int m = n - 1;
    Tri cn, be; // CN: theta = 1/2 at full dt; BE half steps: theta = 1 at dt/2
    cn.build(m, 1.0 + r, -0.5 * r);
    be.build(m, 1.0 + r, -0.5 * r); // same matrix: (I - (dt/2) a D2)

    auto sample_g = [&]() {
        double s = 0.0;
        for (int i = 1; i < n; ++i) s += w[static_cast<std::size_t>(i)];
        return 0.5 * h * s; // walls are zero
    };

    KernelFdResult out;
    out.times.reserve(static_cast<std::size_t>(steps) + 1);
    out.g.reserve(static_cast<std::size_t>(steps) + 1);
    out.profile.grid = grid;
    out.profile.alpha = alpha;
    out.times.push_back(0.0);
    out.g.push_back(sample_g());
    out.profile.times.push_back(0.0);
    out.profile.w.push_back(w);

    std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
    auto be_half_step = [&]() {
        for (int i = 1; i < n; ++i) rhs[static_cast<std::size_t>(i - 1)] = w[static_cast<std::size_t>(i)];
        be.solve(rhs);
        for (int i = 1; i < n; ++i) w[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i - 1)];
    };
    auto cn_step = [&]() {
        for (int i = 1; i < n; ++i) {
            const double lap = w[static_cast<std::size_t>(i - 1)] - 2.0 * w[static_cast<std::size_t>(i)] +
                               w[static_cast<std::size_t>(i + 1)];
            rhs[static_cast<std::size_t>(i - 1)] = w[static_cast<std::size_t>(i)] + 0.5 * r * lap;
        }
        cn.solve(rhs);
        for (int i = 1; i < n; ++i) w[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i - 1)];
    };

    for (int k = 1; k <= steps; ++k) {
        if (k == 1) {
            be_half_step();
            be_half_step();
        } else {
            cn_step();
        }
        out.times.push_back(k * dt);
        out.g.push_back(sample_g());
        if (k % profile_stride == 0 || k == steps) {
            out.profile.times.push_back(k * dt);
            out.profile.w.push_back(w);
        }
    }
    return out;
}

} // namespace hsch
