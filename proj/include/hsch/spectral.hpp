#pragma once

#include <vector>

#include "hsch/field.hpp"

namespace hsch {

// Direct solver for c0 + c1(-Δ) + c2 Δ² under Neumann0 on a rectangle.
// The compact mirror-ghost laplacian diagonalizes exactly in the cos(kπi/n)
// basis, which is orthogonal under the trapezoid weights, so the solve is a
// per-axis cosine transform, a diagonal scaling, and the transform back.
class NeumannSpectral {
public:
    explicit NeumannSpectral(const Grid& grid);

    // If c0 == 0 the constant mode of rhs is dropped and the solution is
    // returned mean-free.
    ScalarField solve(double c0, double c1, double c2, const ScalarField& rhs) const;

    const Grid& grid() const { return grid_; }

private:
    struct AxisBasis {
        int n = 0;                    // cells; n+1 nodes
        std::vector<double> P;        // P[i*(n+1)+k] = cos(pi k i / n)
        std::vector<double> PtW;      // PtW[k*(n+1)+i] = P[i,k] * w_i / N_k
        std::vector<double> sigma;    // eigenvalues of -Δ along this axis
    };

    static AxisBasis build_axis(const Axis& a);

    // transform along axis 0 / axis 1 of a (nx+1) x (ny+1) row-major array
    void apply_axis0(const std::vector<double>& m, const std::vector<double>& in,
                     std::vector<double>& out) const;
    void apply_axis1(const std::vector<double>& m, const std::vector<double>& in,
                     std::vector<double>& out) const;

    Grid grid_;
    AxisBasis ax_[2];
};

} // namespace hsch
