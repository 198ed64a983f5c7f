#include <doctest.h>

#include <cmath>

#include "hsch/field.hpp"
#include "hsch/ops.hpp"
#include "hsch/poisson.hpp"
#include "hsch/rng.hpp"

#include "oracles.hpp"

using namespace hsch;
using oracle::kPi;

namespace {

ScalarField random_neumann_field(const Grid& g, Rng& rng) {
    // random cosine combinations satisfy the Neumann tag exactly
    const double lx = g.axis(0).hi - g.axis(0).lo;
    const double ly = (g.dim() == 2) ? g.axis(1).hi - g.axis(1).lo : 1.0;
    const double a1 = rng.uniform(-1, 1), a2 = rng.uniform(-1, 1), a3 = rng.uniform(-1, 1);
    const int k1 = 1 + static_cast<int>(rng.next() % 3);
    const int k2 = static_cast<int>(rng.next() % 4);
    return ScalarField::sample(g, Bc::Neumann0, [&](double x, double y) {
        double s = a1 * std::cos(k1 * kPi * (x - g.axis(0).lo) / lx);
        if (g.dim() == 2)
            s += a2 * std::cos(k2 * kPi * (y - g.axis(1).lo) / ly) +
                 a3 * std::cos(kPi * (x - g.axis(0).lo) / lx) *
                     std::cos(kPi * (y - g.axis(1).lo) / ly);
        return s;
    });
}

VectorField random_face_field(const Grid& g, Rng& rng) {
    VectorField v(g, Bc::None);
    for (int k = 0; k < g.dim(); ++k)
        for (double& x : v.comp(k)) x = rng.uniform(-1, 1);
    return v;
}

} // namespace

TEST_CASE("grid construction and invariants") {
    Grid g = Grid::rectangle(0, 2, 8, -1, 1, 6);
    CHECK(g.dim() == 2);
    CHECK(g.axis(0).h == doctest::Approx(0.25));
    CHECK(g.axis(1).h == doctest::Approx(2.0 / 6));
    CHECK(g.node_count() == 9 * 7);
    CHECK(g.measure() == doctest::Approx(4.0));
    CHECK_THROWS_AS(Grid::interval(0, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(Grid::interval(1, 1, 8), std::invalid_argument);
}

TEST_CASE("gradient of a constant vanishes") {
    Grid g = Grid::rectangle(0, 1, 8, 0, 1, 8);
    ScalarField f(g, Bc::Neumann0, 3.7);
    VectorField v = gradient(f);
    CHECK(max_abs(v) == 0.0);
}

TEST_CASE("gradient of linear field is exact") {
    Grid g = Grid::interval(0, 1, 16);
    ScalarField f = ScalarField::sample(g, Bc::Neumann0, [](double x, double) { return x; });
    VectorField v = gradient(f);
    for (int i = 0; i < g.faces(0); ++i)
        CHECK(v.at(0, i) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gradient of cosine matches the analytic derivative at O(h^2)") {
    const double L = 2.0;
    auto err_for = [&](int n) {
        Grid g = Grid::interval(0, L, n);
        ScalarField f = ScalarField::sample(
            g, Bc::Neumann0, [&](double x, double) { return std::cos(kPi * x / L); });
        VectorField v = gradient(f);
        double e = 0.0;
        for (int i = 0; i < g.faces(0); ++i) {
            const double x = g.face_coord(0, i);
            const double exact = -(kPi / L) * std::sin(kPi * x / L);
            e = std::max(e, std::abs(v.at(0, i) - exact));
        }
        return e;
    };
    const double e1 = err_for(32), e2 = err_for(64);
    CHECK(e1 < 2e-3);
    CHECK(e1 / e2 > 3.5); // second order
}

TEST_CASE("divergence of a constant vector field vanishes on the interior") {
    Grid g = Grid::rectangle(0, 1, 8, 0, 1, 8);
    VectorField v = VectorField::sample(g, Bc::None, [](double, double, int) { return 1.0; });
    ScalarField d = divergence(v);
    for (int j = 1; j < g.nodes(1) - 1; ++j)
        for (int i = 1; i < g.nodes(0) - 1; ++i) CHECK(d(i, j) == 0.0);
}

TEST_CASE("divergence of the rotational field (y,-x) vanishes on the interior") {
    Grid g = Grid::rectangle(-1, 1, 12, -1, 1, 12);
    VectorField v = VectorField::sample(
        g, Bc::None, [](double x, double y, int k) { return k == 0 ? y : -x; });
    ScalarField d = divergence(v);
    for (int j = 1; j < g.nodes(1) - 1; ++j)
        for (int i = 1; i < g.nodes(0) - 1; ++i)
            CHECK(std::abs(d(i, j)) < 1e-14);
}

TEST_CASE("div(grad f) equals laplacian(f) as an operator identity") {
    Grid g = Grid::rectangle(0, 1.5, 10, 0, 1, 8);
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        ScalarField f(g, Bc::Neumann0);
        for (double& x : f.data()) x = rng.uniform(-1, 1);
        ScalarField a = divergence(gradient(f));
        ScalarField b = laplacian(f);
        double e = 0.0;
        for (std::size_t m = 0; m < a.size(); ++m)
            e = std::max(e, std::abs(a.data()[m] - b.data()[m]));
        CHECK(e < 1e-12);
    }
}

TEST_CASE("laplacian eigenfunction cos(pi x/L)") {
    const double L = 1.0;
    auto err_for = [&](int n) {
        Grid g = Grid::interval(0, L, n);
        ScalarField f = ScalarField::sample(
            g, Bc::Neumann0, [&](double x, double) { return std::cos(kPi * x / L); });
        ScalarField lf = laplacian(f);
        double e = 0.0;
        for (int i = 0; i < g.nodes(0); ++i)
            e = std::max(e, std::abs(lf(i) + (kPi / L) * (kPi / L) * f(i)));
        return e;
    };
    CHECK(err_for(32) < 1e-2);
    CHECK(err_for(32) / err_for(64) > 3.5);
}

TEST_CASE("laplacian of constants vanishes; quadratic form is nonpositive") {
    Grid g = Grid::rectangle(0, 1, 8, 0, 1, 8);
    ScalarField c(g, Bc::Neumann0, 2.5);
    CHECK(max_abs(laplacian(c)) == 0.0);

    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        ScalarField f(g, Bc::Neumann0);
        for (double& x : f.data()) x = rng.uniform(-1, 1);
        CHECK(dot(laplacian(f), f) <= 1e-12);
    }
}

TEST_CASE("adjointness: <grad f, v> = -<f, div v> exactly") {
    Grid g = Grid::rectangle(0, 1.3, 9, -0.5, 0.5, 7);
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        ScalarField f(g, Bc::Neumann0);
        for (double& x : f.data()) x = rng.uniform(-1, 1);
        VectorField v = random_face_field(g, rng);
        const double a = dot(gradient(f), v);
        const double b = dot(f, divergence(v));
        CHECK(std::abs(a + b) <= 1e-12 * std::max(1.0, norm2(f) * norm2(v)));
    }
}

TEST_CASE("neumann poisson: zero rhs gives zero") {
    Grid g = Grid::rectangle(0, 1, 8, 0, 1, 8);
    ScalarField rhs(g, Bc::None, 0.0);
    PoissonResult r = solve_neumann_poisson(rhs);
    CHECK(max_abs(r.q) == 0.0);
    CHECK(r.iterations == 0);
}

TEST_CASE("neumann poisson: manufactured solution is recovered") {
    Grid g = Grid::rectangle(0, 1, 24, 0, 1, 24);
    ScalarField qs = ScalarField::sample(g, Bc::Neumann0, [](double x, double y) {
        return std::cos(kPi * x) * std::cos(2 * kPi * y);
    });
    {
        const double m = mean(qs);
        for (double& v : qs.data()) v -= m;
    }
    ScalarField rhs = laplacian(qs);
    PoissonResult r = solve_neumann_poisson(rhs);
    ScalarField d = r.q;
    axpy(-1.0, qs, d);
    CHECK(norm2(d) < 1e-8);
    CHECK(r.residual_rel <= 1e-10);
}

TEST_CASE("neumann poisson: random mean-zero rhs reaches the residual contract") {
    Grid g = Grid::rectangle(0, 1, 20, 0, 1, 20);
    Rng rng(3);
    ScalarField rhs(g, Bc::None);
    for (double& v : rhs.data()) v = rng.uniform(-1, 1);
    const double m = mean(rhs);
    for (double& v : rhs.data()) v -= m;
    PoissonResult r = solve_neumann_poisson(rhs);
    ScalarField check = laplacian(r.q);
    axpy(-1.0, rhs, check);
    CHECK(max_abs(check) <= 1e-10 * std::max(1.0, max_abs(rhs)) * 10);
    CHECK(std::abs(mean(r.q)) < 1e-13);
}

TEST_CASE("leray: pure gradients are annihilated") {
    Grid g = Grid::rectangle(0, 1, 16, 0, 1, 16);
    ScalarField psi = ScalarField::sample(g, Bc::Neumann0, [](double x, double y) {
        return std::cos(kPi * x) + 0.3 * std::cos(kPi * y);
    });
    VectorField b = gradient(psi);
    LerayResult lr = leray_project(b);
    CHECK(norm2(lr.u) < 1e-9);
}

TEST_CASE("leray: projection is idempotent and annihilates divergence") {
    Grid g = Grid::rectangle(0, 1, 16, 0, 1, 16);
    Rng rng(19);
    VectorField b = random_face_field(g, rng);
    // tighter than the default contract so the second projection sees a
    // divergence well below the 1e-10 idempotence budget
    PoissonOptions opt{1e-12, 0, 1e-10, false};
    LerayResult lr1 = leray_project(b, opt);
    CHECK(max_abs(divergence(lr1.u)) < 1e-9);
    LerayResult lr2 = leray_project(lr1.u, opt);
    VectorField d = lr2.u;
    axpy(-1.0, lr1.u, d);
    CHECK(max_abs(d) < 1e-10);
}

TEST_CASE("leray: constant field on the square") {
    Grid g = Grid::rectangle(0, 1, 16, 0, 1, 16);
    VectorField b = VectorField::sample(
        g, Bc::None, [](double, double, int k) { return k == 0 ? 1.0 : 0.0; });
    LerayResult lr = leray_project(b);
    CHECK(max_abs(divergence(lr.u)) <= 1e-9);
    // (1,0) is the discrete gradient of x: the projection removes it entirely
    CHECK(norm2(lr.u) < 1e-9);
}

TEST_CASE("poincare-wirtinger constant is grid stable") {
    auto measure = [&](int n) {
        Grid g = Grid::rectangle(0, 1, n, 0, 1, n);
        Rng rng(5);
        double c = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            ScalarField f = random_neumann_field(g, rng);
            const double m = mean(f);
            for (double& v : f.data()) v -= m;
            VectorField gf = gradient(f);
            c = std::max(c, norm2(f) / norm2(gf));
        }
        return c;
    };
    const double c1 = measure(24), c2 = measure(48);
    CHECK(std::abs(c1 - c2) <= 0.05 * c1);
}

TEST_CASE("mean and field sampling") {
    Grid g = Grid::interval(0, 2, 32);
    ScalarField c(g, Bc::Neumann0, 1.7);
    CHECK(mean(c) == doctest::Approx(1.7).epsilon(1e-14));
    ScalarField f = ScalarField::sample(
        g, Bc::Neumann0, [](double x, double) { return std::cos(2 * kPi * x / 2.0); });
    CHECK(std::abs(mean(f)) < 1e-14); // full-period cosine: trapezoid is exact
}
