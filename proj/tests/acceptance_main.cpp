// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "hsch/cahn_hilliard.hpp"
#include "hsch/convolution.hpp"
#include "hsch/diagnostics.hpp"
#include "hsch/hsch2d.hpp"
#include "hsch/io.hpp"
#include "hsch/kernel.hpp"
#include "hsch/ledger.hpp"
#include "hsch/ops.hpp"
#include "hsch/rng.hpp"
#include "hsch/scenario.hpp"
#include "hsch/strip.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------- criterion 1
void criterion_kernel_correctness() {
    const auto t0 = std::chrono::steady_clock::now();
    const double alpha = 1.0;
    const hsch::MemoryKernel series = hsch::kernel_series(alpha, 64, 1);
    hsch::Grid grid = hsch::Grid::interval(-1, 1, 200);
    const hsch::KernelFdResult fd = hsch::kernel_fd(alpha, grid, 1e-4, 5.0);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < fd.times.size(); ++i) {
        const double t = fd.times[i];
        if (t < 0.05) continue;
        max_diff = std::max(max_diff, std::abs(series.evaluate_scalar(t) - fd.g[i]));
    }

    const double g0_gap = std::abs(series.evaluate_scalar(0.0) - 1.0);
    const bool g0_ok = g0_gap <= series.truncation_error_bound() + 1e-13;

    std::vector<double> ts, lg;
    for (double t = 1.0; t <= 3.0 + 1e-12; t += 0.05) {
        ts.push_back(t);
        lg.push_back(std::log(series.evaluate_scalar(t)));
    }
    const double rate = -fit_slope(ts, lg);
    const double rate_target = alpha * kPi * kPi / 4.0;
    const double rate_err = std::abs(rate - rate_target) / rate_target;

    const double elapsed = seconds_since(t0);
    const bool pass = max_diff <= 1e-4 && g0_ok && rate_err <= 0.02 && elapsed < 10.0;
    std::ostringstream os;
    os << "kernel series vs fd max|diff| = " << max_diff << " (<= 1e-4), |g(0)-1| = "
       << g0_gap << " <= bound " << series.truncation_error_bound()
       << ", decay rate err = " << rate_err << " (<= 0.02), runtime " << elapsed << " s";
    report(1, pass, os.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion_kernel_structure() {
    const hsch::MemoryKernel k = hsch::kernel_series(1.0, 64, 2);
    bool symmetric = true, posdef = true, monotone = true;
    double min_eig = 1e300;
    double prev00 = 1e300, prev11 = 1e300;
    for (int s = 0; s <= 100; ++s) {
        const double t = 0.1 * s;
        const hsch::KernelValue v = k.evaluate(t);
        symmetric = symmetric && (v(0, 1) == v(1, 0)) && (v(0, 0) == v(0, 0));
        const double eig = v.eigenvalues()[0];
        min_eig = std::min(min_eig, eig);
        posdef = posdef && eig > 0.0;
        if (!(v(0, 0) < prev00) || !(v(1, 1) < prev11)) monotone = false;
        prev00 = v(0, 0);
        prev11 = v(1, 1);
    }
    std::ostringstream os;
    os << "G(t) exactly symmetric = " << (symmetric ? "yes" : "no")
       << ", min eigenvalue over [0,10] = " << min_eig
       << " (> 0), entries monotone decreasing = " << (monotone ? "yes" : "no");
    report(2, symmetric && posdef && monotone, os.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion_convolution_engines() {
    // (a) engine agreement: rates <= 2, dt = 1e-5, 1000 steps, 20 signals
    hsch::Rng rng(314159);
    std::vector<hsch::KernelMode> modes{{0.5, 0.4}, {0.3, 1.1}, {0.2, 2.0}};
    const double dt = 1e-5;
    const int steps = 1000;
    double max_rel = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double a1 = rng.uniform(-1, 1), a2 = rng.uniform(-1, 1);
        const double w1 = rng.uniform(0.5, 4.0), w2 = rng.uniform(0.5, 4.0);
        auto f = [&](double t) { return a1 * std::cos(w1 * t) + a2 * std::sin(w2 * t + 0.3); };
        std::vector<double> times, samples;
        hsch::ConvolutionState st(modes, 1, dt);
        st.seed({f(0.0)});
        times.push_back(0.0);
        samples.push_back(f(0.0));
        double fast = 0.0, fmax = 0.0;
        for (int s = 1; s <= steps; ++s) {
            times.push_back(s * dt);
            samples.push_back(f(s * dt));
            fast = st.step({samples.back()})[0];
            fmax = std::max(fmax, std::abs(samples.back()));
        }
        const double direct = hsch::conv_direct_scalar(modes, times, samples, steps * dt);
        max_rel = std::max(max_rel, std::abs(fast - direct) / std::max(fmax, 1e-30));
    }

    // (b) closed-form case g = e^{-t}, f ≡ 1 under dt halving (direct engine)
    auto direct_err = [&](double ddt) {
        const int n = static_cast<int>(std::llround(1.0 / ddt));
        std::vector<double> times(static_cast<std::size_t>(n) + 1),
            ones(static_cast<std::size_t>(n) + 1, 1.0);
        for (int s = 0; s <= n; ++s) times[static_cast<std::size_t>(s)] = s * ddt;
        const double v = hsch::conv_direct_scalar({{1.0, 1.0}}, times, ones, 1.0);
        return std::abs(v - (1.0 - std::exp(-1.0)));
    };
    const double e1 = direct_err(2e-2), e2 = direct_err(1e-2);
    const double order = std::log2(e1 / e2);

    std::ostringstream os;
    os << "fast vs direct max rel diff = " << max_rel
       << " (<= 1e-10 over 1000 steps x 20 signals), closed-form observed order = "
       << order << " (>= 1.9)";
    report(3, max_rel <= 1e-10 && order >= 1.9, os.str());
}

// ---------------------------------------------------------------- criterion 4
void criterion_ch_invariants() {
    const auto t0 = std::chrono::steady_clock::now();
    hsch::Grid g = hsch::Grid::interval(0, 1, 256);
    hsch::ChParams p;
    p.beta = 0.01;
    p.lambda = 1.0;
    hsch::CahnHilliardSolver solver(g, p);
    hsch::Rng rng(2718);
    hsch::ScalarField phi0(g, hsch::Bc::Neumann0);
    for (double& x : phi0.data()) x = rng.uniform(-1, 1);
    hsch::ChState s = solver.make_state(phi0);
    const double m0 = hsch::mean(s.phi);
    double drift = 0.0, max_energy_rise = 0.0;
    double e_prev = hsch::ch_energy(s, nullptr, p);
    for (int k = 0; k < 1000; ++k) {
        solver.step(s, nullptr, 1e-4);
        drift = std::max(drift, std::abs(hsch::mean(s.phi) - m0));
        const double e = hsch::ch_energy(s, nullptr, p);
        max_energy_rise = std::max(max_energy_rise, e - e_prev);
        e_prev = e;
    }
    const double elapsed = seconds_since(t0);

    // well states are stationary
    double well_dev = 0.0;
    for (double well : {1.0, -1.0}) {
        hsch::ChState ws = solver.make_state(hsch::ScalarField(g, hsch::Bc::Neumann0, well));
        for (int k = 0; k < 50; ++k) solver.step(ws, nullptr, 1e-3);
        for (double x : ws.phi.data()) well_dev = std::max(well_dev, std::abs(x - well));
    }

    const bool pass = drift <= 1e-10 && max_energy_rise <= 1e-12 && well_dev <= 1e-11 &&
                      elapsed < 30.0;
    std::ostringstream os;
    os << "mass drift = " << drift << " (<= 1e-10 over 1000 steps), max per-step energy rise = "
       << max_energy_rise << " (<= 1e-12), well-state deviation = " << well_dev
       << ", 1D n=256 runtime " << elapsed << " s (< 30)";
    report(4, pass, os.str());
}

// ---------------------------------------------------------------- criterion 5
void criterion_coupled_hsch() {
    hsch::Grid g = hsch::Grid::rectangle(0, 1, 32, 0, 1, 32);
    const hsch::MemoryKernel k = hsch::kernel_series(1.0, 64, 2);
    hsch::HschParams p;
    p.ch.beta = 0.01;
    p.ch.lambda = 0.5;
    hsch::HschSolver solver(g, p, k);
    hsch::Forcing h1{[](double t, double x, double y, int comp) {
        if (comp == 0) return 0.4 * std::cos(kPi * y) * (1.0 + 0.3 * std::sin(2.0 * t));
        return 0.2 * std::cos(kPi * x);
    }};
    hsch::ScalarField phi0 = hsch::ScalarField::sample(
        g, hsch::Bc::Neumann0,
        [](double x, double y) { return 0.1 + 0.3 * std::cos(kPi * x) * std::cos(kPi * y); });
    hsch::HschState s = solver.initialize(phi0, nullptr, h1);
    double max_div_ratio = 0.0, max_resid = 0.0;
    for (int n = 0; n < 500; ++n) {
        const hsch::HschStepDiag d = solver.step(s, h1, 1e-3);
        max_div_ratio = std::max(max_div_ratio, d.div_inf / std::max(d.u_inf, 1e-300));
        max_resid = std::max(max_resid, d.darcy_residual);
    }
    const bool div_ok = max_div_ratio <= 1e-9;
    const bool resid_ok = max_resid <= 2e-9; // projection 1e-9 + convolution 1e-10

    // gradient forcing with constant phi
    const double hx = g.axis(0).h, hy = g.axis(1).h;
    auto psi = [](double x, double y) {
        return 0.8 * std::cos(kPi * x) * std::cos(kPi * y) + 0.2 * std::cos(2 * kPi * x);
    };
    hsch::Forcing hgrad{[psi, hx, hy](double, double x, double y, int comp) {
        if (comp == 0) return (psi(x + 0.5 * hx, y) - psi(x - 0.5 * hx, y)) / hx;
        return (psi(x, y + 0.5 * hy) - psi(x, y - 0.5 * hy)) / hy;
    }};
    hsch::HschSolver gsolver(g, p, k);
    hsch::HschState gs =
        gsolver.initialize(hsch::ScalarField(g, hsch::Bc::Neumann0, 0.3), nullptr, hgrad);
    double u_max = 0.0;
    for (int n = 0; n < 400; ++n) {
        gsolver.step(gs, hgrad, 1e-3);
        u_max = std::max(u_max, hsch::norm2(gs.u));
    }
    hsch::VectorField diff = hsch::sample_forcing(hgrad, g, gs.t);
    hsch::axpy(-1.0, hsch::gradient(gs.p), diff);
    const double gradp_err = hsch::norm2(diff);

    const bool pass = div_ok && resid_ok && u_max <= 1e-8 && gradp_err <= 1e-6;
    std::ostringstream os;
    os << "max |div u|/|u| = " << max_div_ratio << " (<= 1e-9), memory-Darcy residual = "
       << max_resid << " (<= 2e-9), gradient forcing |u| = " << u_max
       << " (<= 1e-8), |grad p - h1| = " << gradp_err << " (<= 1e-6)";
    report(5, pass, os.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion_continuous_dependence() {
    hsch::Grid g = hsch::Grid::rectangle(0, 1, 24, 0, 1, 24);
    const hsch::MemoryKernel k = hsch::kernel_series(1.0, 48, 2);
    hsch::HschParams p;
    p.ch.beta = 0.01;
    p.ch.lambda = 0.5;
    hsch::ScalarField phi0 = hsch::ScalarField::sample(
        g, hsch::Bc::Neumann0,
        [](double x, double y) { return 0.05 + 0.3 * std::cos(kPi * x) * std::cos(kPi * y); });
    // spinodally amplified shape: the supremum is reached by the grown
    // difference, not by the initial perturbation itself
    hsch::ScalarField shape = hsch::ScalarField::sample(
        g, hsch::Bc::Neumann0,
        [](double x, double y) { return std::cos(kPi * x) * std::cos(kPi * y); });
    const double dt = 1e-3, t_end = 0.25;
    const hsch::DependenceReport r0 = hsch::continuous_dependence_test(
        g, p, k, phi0, shape, 0.0, hsch::Forcing::zero(), dt, t_end);
    const hsch::DependenceReport r3 = hsch::continuous_dependence_test(
        g, p, k, phi0, shape, 1e-3, hsch::Forcing::zero(), dt, t_end);
    const hsch::DependenceReport r4 = hsch::continuous_dependence_test(
        g, p, k, phi0, shape, 1e-4, hsch::Forcing::zero(), dt, t_end);
    const double q = r3.sup_ratio / r4.sup_ratio;
    // the ratios must also reflect actual growth: sup above the t=0 value
    const double shape_l2 = hsch::norm2(shape);
    const bool grown = r3.sup_ratio > 1.5 * shape_l2 && r4.sup_ratio > 1.5 * shape_l2;
    const bool pass = r0.exact_match && q >= 0.5 && q <= 2.0 && grown;
    std::ostringstream os;
    os << "zero-delta bitwise match = " << (r0.exact_match ? "yes" : "no")
       << ", response ratios " << r3.sup_ratio << " / " << r4.sup_ratio << " = " << q
       << " (in [0.5, 2]; both amplified above the seed norm " << shape_l2 << ")";
    report(6, pass, os.str());
}

// ---------------------------------------------------------------- criterion 7
void criterion_thin_layer() {
    const auto t0 = std::chrono::steady_clock::now();

    auto band = [](const std::vector<hsch::StripStudyRow>& rows, auto get) {
        double lo = 1e300, hi = 0.0;
        for (const auto& row : rows) {
            lo = std::min(lo, get(row));
            hi = std::max(hi, get(row));
        }
        return hi / std::max(lo, 1e-300);
    };

    // Theorem-1.2 run: u⁰ = 0, h of form (1.2), vanishing admissible
    // ζ-perturbation of φ⁰ (amplitude ∝ ε). dt resolves the ζ-relaxation of
    // the smallest ε so the error ordering is genuine.
    hsch::StripStudyConfig cfg;
    cfg.a = 0;
    cfg.b = 1;
    cfg.nx = 128;
    cfg.n_zeta = 16;
    cfg.eps_list = {0.2, 0.1, 0.05};
    cfg.dt = 5e-5;
    cfg.t_end = 0.1;
    cfg.params.alpha = 1.0;
    cfg.params.ch.beta = 0.004;
    cfg.params.ch.lambda = 0.2;
    cfg.phi0 = [](double x) { return 0.1 + 0.2 * std::cos(kPi * x); };
    cfg.phi0_pert = [](double x, double zh) {
        return std::cos(kPi * x) *
               (std::cos(kPi * (zh + 1.0) / 2.0) + std::cos(kPi * (zh + 1.0)));
    };
    cfg.pert_amp = 0.3;
    cfg.h1 = hsch::Forcing{[](double t, double x, double, int comp) {
        return comp == 0 ? 0.1 * std::cos(kPi * x) * (1.0 + 0.2 * std::sin(4.0 * t)) : 0.0;
    }};
    const hsch::StripStudyReport conv = hsch::convergence_study(cfg);

    // Prop-2.1 band run: data saturating (1.4) (‖u⁰_ε‖ = C√ε); with u⁰ = 0
    // the paper itself gives u = o(√ε), so the two-sided velocity band is
    // checked where the a priori estimate is actually tight.
    hsch::StripStudyConfig bcfg = cfg;
    bcfg.pert_amp = 0.0;
    bcfg.phi0_pert = nullptr;
    bcfg.u0_scale = 0.3;
    bcfg.dt = 2.5e-4;
    bcfg.t_end = 0.3;
    bcfg.h1 = hsch::Forcing{[](double, double x, double, int comp) {
        return comp == 0 ? 0.5 * std::cos(kPi * x) : 0.0;
    }};
    const hsch::StripStudyReport ap = hsch::convergence_study(bcfg);

    const double elapsed = seconds_since(t0);

    const auto& r = conv.rows;
    const bool eu_dec = r[1].e_u < r[0].e_u && r[2].e_u < r[1].e_u;
    const bool eu_half = r[2].e_u < 0.5 * r[0].e_u;
    const bool ephi_dec = r[1].e_phi < r[0].e_phi && r[2].e_phi < r[1].e_phi;
    const bool rp_dec = r[2].r_p < r[1].r_p && r[1].r_p < r[0].r_p;

    const double b_phi = band(r, [](const hsch::StripStudyRow& x) { return x.sphi_linf_h1; });
    const double b_mu = band(r, [](const hsch::StripStudyRow& x) { return x.smu_l2_h1; });
    const double b_p = band(r, [](const hsch::StripStudyRow& x) { return x.sp_l2; });
    const double b_u = band(ap.rows, [](const hsch::StripStudyRow& x) { return x.su_linf_l2; });
    const bool bands_ok = b_phi <= 3.0 && b_mu <= 3.0 && b_p <= 3.0 && b_u <= 3.0;

    const bool pass =
        eu_dec && eu_half && ephi_dec && rp_dec && bands_ok && elapsed < 600.0;
    std::ostringstream os;
    os << "e_u = {" << r[0].e_u << ", " << r[1].e_u << ", " << r[2].e_u
       << "} (strictly decreasing, last < first/2), e_phi = {" << r[0].e_phi << ", "
       << r[1].e_phi << ", " << r[2].e_phi << "} (strictly decreasing), r_p = {" << r[0].r_p
       << ", " << r[1].r_p << ", " << r[2].r_p << "} (decreasing), scaled-norm bands phi/mu/p = {"
       << b_phi << ", " << b_mu << ", " << b_p << "} and u (saturating-data run) = " << b_u
       << " (<= 3), runtime " << elapsed << " s (< 600)";
    report(7, pass, os.str());
}

// ---------------------------------------------------------------- criterion 8
void criterion_inequalities() {
    const hsch::InequalityReport pr =
        hsch::inequality_check(hsch::InequalityKind::PoincareStrip, 50, 424242);
    const double eig_target = 2.0 / kPi;
    const bool poincare_ok =
        pr.max_ratio <= 2.0 &&
        std::abs(pr.eigenfunction_ratio - eig_target) <= 0.05 * eig_target;
    const hsch::InequalityReport ag =
        hsch::inequality_check(hsch::InequalityKind::Agmon, 100, 424243);
    const hsch::InequalityReport gn =
        hsch::inequality_check(hsch::InequalityKind::GagliardoNirenbergL4, 100, 424244);
    const bool pass = poincare_ok && ag.grid_stable && gn.grid_stable;
    std::ostringstream os;
    os << "strip-Poincare max ratio = " << pr.max_ratio << " (<= 2), eigenfunction ratio = "
       << pr.eigenfunction_ratio << " (2/pi +- 5%), Agmon ratios " << ag.max_ratio << " -> "
       << ag.max_ratio_refined << " (+-10%), GN-L4 ratios " << gn.max_ratio << " -> "
       << gn.max_ratio_refined << " (+-10%)";
    report(8, pass, os.str());
}

// ---------------------------------------------------------------- criterion 9
void criterion_determinism() {
    const char* cfg_text = R"({
      "scenario": "hsch2d", "alpha": 1.0, "beta": 0.01, "lambda": 0.5,
      "domain": {"x": [0,1], "y": [0,1]}, "grid": {"nx": 16, "ny": 16},
      "time": {"dt": 2e-3, "t_end": 0.05},
      "forcing": {"type": "cosine", "value": [0.3, 0.0], "kx": 0, "ky": 1},
      "initial_phi": {"type": "cosine_modes", "mean": 0.1,
                      "modes": [{"amplitude": 0.3, "kx": 1, "ky": 1}]},
      "kernel": {"n_modes": 32}, "seed": 99
    })";
    hsch::SimConfig cfg = hsch::parse_config(cfg_text);
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "hsch_acceptance_det";
    fs::remove_all(base);
    fs::create_directories(base);
    cfg.out_dir = (base / "a").string();
    hsch::run_scenario(cfg);
    const std::string led_a = hsch::read_text_file(cfg.out_dir + "/ledger.csv");
    cfg.out_dir = (base / "b").string();
    hsch::run_scenario(cfg);
    const std::string led_b = hsch::read_text_file(cfg.out_dir + "/ledger.csv");

    // suite scenario with explicit seed, twice
    hsch::SimConfig sc = hsch::parse_config(R"({"scenario":"suite","seed":123})");
    sc.out_dir = (base / "sa").string();
    hsch::run_scenario(sc);
    const std::string su_a = hsch::read_text_file(sc.out_dir + "/ledger.csv");
    sc.out_dir = (base / "sb").string();
    hsch::run_scenario(sc);
    const std::string su_b = hsch::read_text_file(sc.out_dir + "/ledger.csv");

    const bool pass = (led_a == led_b) && (su_a == su_b) && !led_a.empty();
    std::ostringstream os;
    os << "hsch2d ledgers byte-identical = " << (led_a == led_b ? "yes" : "no")
       << ", suite ledgers byte-identical = " << (su_a == su_b ? "yes" : "no");
    report(9, pass, os.str());
}

} // namespace

int main() {
    criterion_kernel_correctness();
    criterion_kernel_structure();
    criterion_convolution_engines();
    criterion_ch_invariants();
    criterion_coupled_hsch();
    criterion_continuous_dependence();
    criterion_thin_layer();
    criterion_inequalities();
    criterion_determinism();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", g_failures);
    return 1;
}
