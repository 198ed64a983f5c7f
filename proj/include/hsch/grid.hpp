#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace hsch {

// One coordinate axis of a uniform grid: n cells on [lo, hi], n+1 nodes.
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 4; // cell count
    double h = 0.25;
};

// Uniform rectangular grid, node-centered layout. Scalar unknowns live on the
// (n+1)^dim nodes; vector components live on the faces of their own axis
// (midpoints between adjacent nodes), node positions along the other axes.
class Grid {
public:
    static Grid interval(double lo, double hi, int n) {
        Grid g;
        g.dim_ = 1;
        g.ax_[0] = make_axis(lo, hi, n);
        return g;
    }

    static Grid rectangle(double x_lo, double x_hi, int nx,
                          double y_lo, double y_hi, int ny) {
        Grid g;
        g.dim_ = 2;
        g.ax_[0] = make_axis(x_lo, x_hi, nx);
        g.ax_[1] = make_axis(y_lo, y_hi, ny);
        return g;
    }

    int dim() const { return dim_; }
    const Axis& axis(int k) const { return ax_[static_cast<std::size_t>(k)]; }

    // nodes per axis
    int nodes(int k) const { return ax_[static_cast<std::size_t>(k)].n + 1; }
    // faces per axis (midpoints)
    int faces(int k) const { return ax_[static_cast<std::size_t>(k)].n; }

    std::size_t node_count() const {
        std::size_t c = static_cast<std::size_t>(nodes(0));
        if (dim_ == 2) c *= static_cast<std::size_t>(nodes(1));
        return c;
    }

    // row-major: x fastest
    std::size_t node_index(int i, int j = 0) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(nodes(0)) * static_cast<std::size_t>(j);
    }

    double node_coord(int k, int i) const {
        const Axis& a = ax_[static_cast<std::size_t>(k)];
        return a.lo + a.h * i;
    }
    double face_coord(int k, int i) const {
        const Axis& a = ax_[static_cast<std::size_t>(k)];
        return a.lo + a.h * (i + 0.5);
    }

    // trapezoid weight along axis k at node i (no h factor)
    double trap(int k, int i) const {
        return (i == 0 || i == ax_[static_cast<std::size_t>(k)].n) ? 0.5 : 1.0;
    }

    // full quadrature weight of a node (product of h_k * trap_k)
    double node_weight(int i, int j = 0) const {
        double w = ax_[0].h * trap(0, i);
        if (dim_ == 2) w *= ax_[1].h * trap(1, j);
        return w;
    }

    double measure() const {
        double m = ax_[0].hi - ax_[0].lo;
        if (dim_ == 2) m *= ax_[1].hi - ax_[1].lo;
        return m;
    }

    bool operator==(const Grid& o) const {
        if (dim_ != o.dim_) return false;
        for (int k = 0; k < dim_; ++k) {
            const Axis& a = ax_[static_cast<std::size_t>(k)];
            const Axis& b = o.ax_[static_cast<std::size_t>(k)];
            if (a.lo != b.lo || a.hi != b.hi || a.n != b.n) return false;
        }
        return true;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    static Axis make_axis(double lo, double hi, int n) {
        if (!(std::isfinite(lo) && std::isfinite(hi)) || !(hi > lo))
            throw std::invalid_argument("grid: axis extents must be finite with hi > lo");
        if (n < 4)
            throw std::invalid_argument("grid: need at least 4 cells per axis");
        Axis a;
        a.lo = lo;
        a.hi = hi;
        a.n = n;
        a.h = (hi - lo) / n;
        return a;
    }

    int dim_ = 1;
    std::array<Axis, 2> ax_{};
};

} // namespace hsch
