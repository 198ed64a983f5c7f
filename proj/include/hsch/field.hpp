#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hsch/grid.hpp"

namespace hsch {

enum class Bc { Neumann0, Dirichlet0, None };

// Scalar unknown sampled on grid nodes.
class ScalarField {
public:
    ScalarField() = default;

    ScalarField(const Grid& grid, Bc bc, double fill = 0.0)
        : grid_(grid), bc_(bc), v_(grid.node_count(), fill) {}

    static ScalarField sample(const Grid& grid, Bc bc,
                              const std::function<double(double, double)>& f) {
        ScalarField s(grid, bc);
        const int nx = grid.nodes(0);
        const int ny = (grid.dim() == 2) ? grid.nodes(1) : 1;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                s.v_[grid.node_index(i, j)] =
                    f(grid.node_coord(0, i), grid.dim() == 2 ? grid.node_coord(1, j) : 0.0);
        return s;
    }

    const Grid& grid() const { return grid_; }
    Bc bc() const { return bc_; }
    void set_bc(Bc bc) { bc_ = bc; }

    double& operator()(int i, int j = 0) { return v_[grid_.node_index(i, j)]; }
    double operator()(int i, int j = 0) const { return v_[grid_.node_index(i, j)]; }

    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }
    std::size_t size() const { return v_.size(); }

    bool finite() const {
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

private:
    Grid grid_;
    Bc bc_ = Bc::None;
    std::vector<double> v_;
};

// Vector unknown with component k at the faces of axis k (nodes on the other
// axes). Normal components on the physical boundary are not stored: u·n = 0
// is structural. A Dirichlet0 tag on a component additionally pins its
// boundary rows along the node axes (no-slip).
class VectorField {
public:
    VectorField() = default;

    explicit VectorField(const Grid& grid, Bc bc = Bc::None) : grid_(grid) {
        for (int k = 0; k < grid.dim(); ++k) {
            bc_[static_cast<std::size_t>(k)] = bc;
            comp_[static_cast<std::size_t>(k)].assign(comp_size(k), 0.0);
        }
    }

    // f(x, y, comp) evaluated at the face positions of each component
    static VectorField sample(const Grid& grid, Bc bc,
                              const std::function<double(double, double, int)>& f) {
        VectorField v(grid, bc);
        for (int k = 0; k < grid.dim(); ++k) {
            const int cx = v.comp_extent(k, 0);
            const int cy = v.comp_extent(k, 1);
            for (int j = 0; j < cy; ++j)
                for (int i = 0; i < cx; ++i) {
                    const double x = (k == 0) ? grid.face_coord(0, i) : grid.node_coord(0, i);
                    const double y = (grid.dim() == 1) ? 0.0
                                   : (k == 1) ? grid.face_coord(1, j) : grid.node_coord(1, j);
                    v.at(k, i, j) = f(x, y, k);
                }
            v.enforce_tags();
        }
        return v;
    }

    const Grid& grid() const { return grid_; }
    int components() const { return grid_.dim(); }
    Bc bc(int k) const { return bc_[static_cast<std::size_t>(k)]; }
    void set_bc(int k, Bc bc) { bc_[static_cast<std::size_t>(k)] = bc; }

    // extent of component k along axis a
    int comp_extent(int k, int a) const {
        if (a >= grid_.dim()) return 1;
        return (a == k) ? grid_.faces(a) : grid_.nodes(a);
    }

    std::size_t comp_size(int k) const {
        std::size_t c = static_cast<std::size_t>(comp_extent(k, 0));
        if (grid_.dim() == 2) c *= static_cast<std::size_t>(comp_extent(k, 1));
        return c;
    }

    std::size_t comp_index(int k, int i, int j = 0) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(comp_extent(k, 0)) * static_cast<std::size_t>(j);
    }

    double& at(int k, int i, int j = 0) { return comp_[static_cast<std::size_t>(k)][comp_index(k, i, j)]; }
    double at(int k, int i, int j = 0) const { return comp_[static_cast<std::size_t>(k)][comp_index(k, i, j)]; }

    std::vector<double>& comp(int k) { return comp_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& comp(int k) const { return comp_[static_cast<std::size_t>(k)]; }

    // quadrature weight of a face of component k (own axis: full h)
    double face_weight(int k, int i, int j = 0) const {
        double w = 1.0;
        for (int a = 0; a < grid_.dim(); ++a) {
            const int idx = (a == 0) ? i : j;
            w *= grid_.axis(a).h;
            if (a != k) w *= grid_.trap(a, idx);
        }
        return w;
    }

    // true if (i,j) of component k lies on a pinned no-slip boundary row
    bool pinned(int k, int i, int j = 0) const {
        if (bc_[static_cast<std::size_t>(k)] != Bc::Dirichlet0) return false;
        for (int a = 0; a < grid_.dim(); ++a) {
            if (a == k) continue;
            const int idx = (a == 0) ? i : j;
            if (idx == 0 || idx == grid_.axis(a).n) return true;
        }
        return false;
    }

    // zero all pinned rows (used after sampling / arithmetic)
    void enforce_tags() {
        for (int k = 0; k < grid_.dim(); ++k) {
            if (bc_[static_cast<std::size_t>(k)] != Bc::Dirichlet0) continue;
            const int cx = comp_extent(k, 0);
            const int cy = comp_extent(k, 1);
            for (int j = 0; j < cy; ++j)
                for (int i = 0; i < cx; ++i)
                    if (pinned(k, i, j)) at(k, i, j) = 0.0;
        }
    }

    bool finite() const {
        for (int k = 0; k < grid_.dim(); ++k)
            for (double x : comp_[static_cast<std::size_t>(k)])
                if (!std::isfinite(x)) return false;
        return true;
    }

private:
    Grid grid_;
    std::array<Bc, 2> bc_{Bc::None, Bc::None};
    std::array<std::vector<double>, 2> comp_;
};

} // namespace hsch
