#pragma once

#include <array>
#include <vector>

#include "hsch/field.hpp"

namespace hsch {

// One exponential mode weight·exp(-rate·t) of a kernel entry.
struct KernelMode {
    double weight = 0.0; // dimensionless, > 0
    double rate = 0.0;   // 1/time, > 0
};

// Small symmetric matrix value of the kernel at a time.
struct KernelValue {
    int dim = 1;
    std::array<double, 4> a{}; // row-major dim x dim
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }
    // eigenvalues of the symmetric matrix (ascending)
    std::array<double, 2> eigenvalues() const;
};

// Matrix kernel G(t) as an exponential sum per entry. Entries (i,j) and
// (j,i) share storage, so evaluated matrices are symmetric exactly.
class MemoryKernel {
public:
    explicit MemoryKernel(int dim = 1);

    int dim() const { return dim_; }
    double truncation_error_bound() const { return trunc_; }
    void set_truncation_error_bound(double b) { trunc_ = b; }

    void set_entry(int i, int j, std::vector<KernelMode> modes);
    const std::vector<KernelMode>& entry(int i, int j) const;

    // G(t)_ij = sum weight * exp(-rate t); throws on t < 0
    KernelValue evaluate(double t) const;
    // scalar diagonal evaluation g(t) (entry 0,0)
    double evaluate_scalar(double t) const;

    double min_rate() const;      // slowest decay among all modes
    double weight_sum() const;    // entry (0,0)
    // true when G = g(t)·I (equal diagonal lists, empty off-diagonal)
    bool isotropic_diagonal() const;

private:
    std::size_t slot(int i, int j) const;
    int dim_;
    double trunc_ = 0.0;
    std::array<std::vector<KernelMode>, 3> entries_; // (0,0), (1,1), (0,1)=(1,0)
};

// Constant-coefficient reduction of the auxiliary Stokes cell problem: the
// tangential components solve the 1D heat equation a·w'' on (-1,1) with
// w(±1)=0, w(0)=1; the wall-normal component vanishes identically and the
// cell pressure is independent of the thin coordinate, so G(t) = g(t)·I.
struct CellProblemReduction {
    double alpha = 1.0;
    double domain_lo = -1.0, domain_hi = 1.0;
    bool normal_component_zero = true;     // ω_d ≡ 0
    bool pressure_zeta_independent = true; // ∂π/∂ζ = 0
    bool cross_entries_zero = true;        // G_ij = 0 for i ≠ j

    // Dirichlet eigenvalue of the heat problem, n ≥ 1: alpha (n π / 2)²
    double eigenvalue(int n) const;
    // eigenseries weight of odd n in g(t): 8/(n²π²); even n carry none
    static double series_weight(int n);
};

CellProblemReduction reduce_cell_problem(double alpha);

// Closed-form eigenseries kernel: modes (8/(n²π²), α n²π²/4) over odd n.
// truncation_error_bound is the exact weight tail 1 - Σ weights.
MemoryKernel kernel_series(double alpha, int n_modes, int dim = 2);

// 1D heat-equation profile history from the finite-difference cross check.
struct CellProblemSolution {
    Grid grid;              // interval (-1, 1)
    double alpha = 1.0;
    std::vector<double> times;               // subsampled profile times
    std::vector<std::vector<double>> w;      // profiles w(t_k, ·), Dirichlet0
};

struct KernelFdResult {
    std::vector<double> times; // every step, starting at 0
    std::vector<double> g;     // g(t_k) = ½ trapezoid(w(t_k,·))
    CellProblemSolution profile;
};

// Crank–Nicolson with a Rannacher start (two backward-Euler half steps) for
// the cell heat problem; g sampled at every step.
KernelFdResult kernel_fd(double alpha, const Grid& grid, double dt, double t_end,
                         int profile_stride = 0);

} // namespace hsch
