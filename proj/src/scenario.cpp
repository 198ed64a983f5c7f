#include "hsch/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hsch/cahn_hilliard.hpp"
#include "hsch/convolution.hpp"
#include "hsch/diagnostics.hpp"
#include "hsch/hsch2d.hpp"
#include "hsch/errors.hpp"
#include "hsch/io.hpp"
#include "hsch/kernel.hpp"
#include "hsch/ledger.hpp"
#include "hsch/rng.hpp"
#include "hsch/strip.hpp"

namespace hsch {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void write_manifest(const SimConfig& cfg, const std::vector<std::string>& columns,
                    const std::string& extra_key = "", const std::string& extra = "") {
    nlohmann::json j;
    j["tool"] = "hsch";
    j["config"] = nlohmann::json::parse(cfg.canonical_json());
    j["config_hash"] = fnv1a_hex(cfg.canonical_json());
    j["output_dir"] = cfg.out_dir;
    j["ledger_columns"] = columns;
    if (!extra_key.empty()) j[extra_key] = nlohmann::json::parse(extra);
    write_text_file(cfg.out_dir + "/manifest.json", j.dump(2) + "\n");
}

void write_ledger_files(const SimConfig& cfg, const RunLedger& led,
                        const std::string& stem = "ledger") {
    std::ostringstream os;
    led.write_csv(os);
    write_text_file(cfg.out_dir + "/" + stem + ".csv", os.str());
    write_text_file(cfg.out_dir + "/" + stem + ".json", led.to_json() + "\n");
}

} // namespace

Potential build_potential(const PotentialSpec& spec) {
    if (spec.type == "landau") return landau();
    return quartic(spec.coeffs);
}

Forcing build_forcing(const SimConfig& cfg) {
    const ForcingSpec f = cfg.forcing;
    if (f.type == "zero") return Forcing::zero();
    if (f.type == "constant") return Forcing::constant(f.value[0], f.value[1]);

    const double xlo = cfg.x[0], lx = cfg.x[1] - cfg.x[0];
    const double ylo = cfg.y[0], ly = cfg.y[1] - cfg.y[0];
    if (f.type == "cosine") {
        return {[f, xlo, lx, ylo, ly](double, double x, double y, int k) {
            return f.value[static_cast<std::size_t>(k)] *
                   std::cos(f.kx * kPi * (x - xlo) / lx) *
                   std::cos(f.ky * kPi * (y - ylo) / ly);
        }};
    }
    // gradient: exact discrete gradient of the node-sampled stream function,
    // so the projected velocity vanishes to solver tolerance
    const double hx = lx / cfg.nx;
    const double hy = ly / cfg.ny;
    auto psi = [f, xlo, lx, ylo, ly](double x, double y) {
        return f.value[0] * std::cos(f.kx * kPi * (x - xlo) / lx) *
               std::cos(f.ky * kPi * (y - ylo) / ly);
    };
    return {[psi, hx, hy](double, double x, double y, int k) {
        if (k == 0) return (psi(x + 0.5 * hx, y) - psi(x - 0.5 * hx, y)) / hx;
        return (psi(x, y + 0.5 * hy) - psi(x, y - 0.5 * hy)) / hy;
    }};
}

ScalarField build_phi0(const SimConfig& cfg, const Grid& grid) {
    const PhiSpec& p = cfg.initial_phi;
    if (p.type == "file") return read_scalar_snapshot(p.path);
    if (p.type == "constant")
        return ScalarField(grid, Bc::Neumann0, p.value);
    const double xlo = grid.axis(0).lo, lx = grid.axis(0).hi - grid.axis(0).lo;
    const double ylo = (grid.dim() == 2) ? grid.axis(1).lo : 0.0;
    const double ly = (grid.dim() == 2) ? grid.axis(1).hi - grid.axis(1).lo : 1.0;
    return ScalarField::sample(grid, Bc::Neumann0, [&](double x, double y) {
        double s = p.value;
        for (const CosMode& m : p.modes)
            s += m.amplitude * std::cos(m.kx * kPi * (x - xlo) / lx) *
                 std::cos(m.ky * kPi * (y - ylo) / ly);
        return s;
    });
}

namespace {

RunOutcome run_kernel(const SimConfig& cfg) {
    const MemoryKernel kern = kernel_series(cfg.alpha, cfg.kernel_n_modes, 2);
    RunLedger led({"g", "bound"});
    led.set_metadata("scenario", "kernel");
    led.set_metadata("config_hash", fnv1a_hex(cfg.canonical_json()));
    const int steps = static_cast<int>(std::llround(cfg.kernel_t_end / cfg.kernel_fd_dt));
    const int stride = std::max(1, steps / 1000);
    // t = 0 row then strided samples
    led.append(0.0, {kern.evaluate_scalar(0.0), kern.truncation_error_bound()});
    for (int k = stride; k <= steps; k += stride) {
        const double t = k * cfg.kernel_fd_dt;
        led.append(t, {kern.evaluate_scalar(t), kern.truncation_error_bound()});
    }
    write_ledger_files(cfg, led);
    write_manifest(cfg, led.columns());
    return {};
}

RunOutcome run_ch1d(const SimConfig& cfg) {
    Grid grid = Grid::interval(cfg.x[0], cfg.x[1], cfg.nx);
    ChParams p;
    p.beta = cfg.beta;
    p.lambda = cfg.lambda;
    p.stabilization = cfg.stabilization;
    p.pot = build_potential(cfg.potential);
    CahnHilliardSolver solver(grid, p);
    ChState s = solver.make_state(build_phi0(cfg, grid));

    RunLedger led({"mass", "energy", "phi_linf"});
    led.set_metadata("scenario", "ch1d");
    led.set_metadata("config_hash", fnv1a_hex(cfg.canonical_json()));
    auto record = [&](double t) {
        led.append(t < 0 ? 0.0 : t, {mean(s.phi), ch_energy(s, nullptr, p), max_abs(s.phi)});
    };
    record(0.0);
    const int steps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
    for (int k = 1; k <= steps; ++k) {
        solver.step(s, nullptr, cfg.dt);
        record(k * cfg.dt);
        if (cfg.snapshot_every > 0 && k % cfg.snapshot_every == 0) {
            write_snapshot(cfg.out_dir + "/snap_phi_" + std::to_string(k), "phi", s.phi, s.t);
            write_snapshot(cfg.out_dir + "/snap_mu_" + std::to_string(k), "mu", s.mu, s.t);
        }
    }
    write_ledger_files(cfg, led);
    write_manifest(cfg, led.columns());
    return {};
}

RunOutcome run_hsch2d(const SimConfig& cfg) {
    Grid grid = Grid::rectangle(cfg.x[0], cfg.x[1], cfg.nx, cfg.y[0], cfg.y[1], cfg.ny);
    HschParams p;
    p.ch.beta = cfg.beta;
    p.ch.lambda = cfg.lambda;
    p.ch.stabilization = cfg.stabilization;
    p.ch.pot = build_potential(cfg.potential);
    const MemoryKernel kern = kernel_series(cfg.alpha, cfg.kernel_n_modes, 2);
    HschSolver solver(grid, p, kern);
    const Forcing h1 = build_forcing(cfg);
    HschState s = solver.initialize(build_phi0(cfg, grid), nullptr, h1);

    RunLedger led({"mass", "energy", "u_l2", "div_u_inf", "mean_p_residual"});
    led.set_metadata("scenario", "hsch2d");
    led.set_metadata("config_hash", fnv1a_hex(cfg.canonical_json()));
    led.append(0.0, {solver.mass(s), solver.energy(s), norm2(s.u), max_abs(divergence(s.u)),
                     mean(s.p)});
    const int steps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
    for (int k = 1; k <= steps; ++k) {
        const HschStepDiag d = solver.step(s, h1, cfg.dt);
        led.append(k * cfg.dt,
                   {solver.mass(s), solver.energy(s), norm2(s.u), d.div_inf, mean(s.p)});
        if (cfg.snapshot_every > 0 && k % cfg.snapshot_every == 0) {
            const std::string sfx = "_" + std::to_string(k);
            write_snapshot(cfg.out_dir + "/snap_phi" + sfx, "phi", s.ch.phi, s.t);
            write_snapshot(cfg.out_dir + "/snap_mu" + sfx, "mu", s.ch.mu, s.t);
            write_snapshot(cfg.out_dir + "/snap_u" + sfx, "u", s.u, s.t);
            write_snapshot(cfg.out_dir + "/snap_p" + sfx, "p", s.p, s.t);
        }
    }
    write_ledger_files(cfg, led);
    write_manifest(cfg, led.columns());
    return {};
}

RunOutcome run_thin_layer(const SimConfig& cfg) {
    StripStudyConfig sc;
    sc.a = cfg.x[0];
    sc.b = cfg.x[1];
    sc.nx = cfg.nx;
    sc.n_zeta = cfg.n_zeta;
    sc.eps_list = cfg.eps_list;
    sc.dt = cfg.dt;
    sc.t_end = cfg.t_end;
    sc.params.alpha = cfg.alpha;
    sc.params.ch.beta = cfg.beta;
    sc.params.ch.lambda = cfg.lambda;
    sc.params.ch.stabilization = cfg.stabilization;
    sc.params.ch.pot = build_potential(cfg.potential);
    const SimConfig phi_cfg = cfg;
    Grid line = Grid::interval(cfg.x[0], cfg.x[1], cfg.nx);
    ScalarField phi_line = build_phi0(phi_cfg, line);
    sc.phi0 = [phi_line, line](double x) {
        // nearest node lookup (phi0 is built on the same x grid)
        const double h = line.axis(0).h;
        int i = static_cast<int>(std::llround((x - line.axis(0).lo) / h));
        i = std::max(0, std::min(line.axis(0).n, i));
        return phi_line(i);
    };
    if (cfg.zeta_pert_amp > 0.0) {
        const double xlo = cfg.x[0], lx = cfg.x[1] - cfg.x[0];
        const int kx = cfg.zeta_pert_kx;
        sc.phi0_pert = [xlo, lx, kx](double x, double zh) {
            return std::cos(kx * kPi * (x - xlo) / lx) *
                   (std::cos(kPi * (zh + 1.0) / 2.0) + std::cos(kPi * (zh + 1.0)));
        };
        sc.pert_amp = cfg.zeta_pert_amp;
    }
    sc.u0_scale = cfg.u0_scale;
    sc.h1 = build_forcing(cfg);

    const StripStudyReport rep = convergence_study(sc);

    std::ostringstream os;
    os << "eps,e_phi,e_u,r_p,su_linf_l2,sphi_linf_h1,smu_l2_h1,sp_l2,mass_drift,max_energy_slack\n";
    for (const StripStudyRow& r : rep.rows) {
        os << format_double(r.eps) << "," << format_double(r.e_phi) << ","
           << format_double(r.e_u) << "," << format_double(r.r_p) << ","
           << format_double(r.su_linf_l2) << "," << format_double(r.sphi_linf_h1) << ","
           << format_double(r.smu_l2_h1) << "," << format_double(r.sp_l2) << ","
           << format_double(r.mass_drift) << "," << format_double(r.max_energy_slack) << "\n";
    }
    write_text_file(cfg.out_dir + "/ledger.csv", os.str());

    nlohmann::json jr;
    for (std::size_t i = 0; i < rep.rate_phi.size(); ++i) {
        jr["rate_phi"].push_back(rep.rate_phi[i]);
        jr["rate_u"].push_back(rep.rate_u[i]);
        jr["rate_p"].push_back(rep.rate_p[i]);
    }
    write_manifest(cfg, {"eps", "e_phi", "e_u", "r_p", "su_linf_l2", "sphi_linf_h1",
                         "smu_l2_h1", "sp_l2", "mass_drift", "max_energy_slack"},
                   "empirical_rates", jr.dump());
    return {};
}

RunOutcome run_suite(const SimConfig& cfg) {
    std::ostringstream os;
    os << "check,value,bound,pass\n";
    bool all_ok = true;
    auto row = [&](const std::string& name, double value, double bound, bool pass) {
        os << name << "," << format_double(value) << "," << format_double(bound) << ","
           << (pass ? 1 : 0) << "\n";
        all_ok = all_ok && pass;
    };

    // kernel structure
    {
        const MemoryKernel k = kernel_series(cfg.alpha, cfg.kernel_n_modes, 2);
        double min_eig = 1e300;
        bool symmetric = true;
        double prev = 1e300;
        bool monotone = true;
        for (int s = 0; s <= 100; ++s) {
            const double t = 0.1 * s;
            const KernelValue v = k.evaluate(t);
            symmetric = symmetric && (v(0, 1) == v(1, 0));
            min_eig = std::min(min_eig, v.eigenvalues()[0]);
            if (v(0, 0) >= prev) monotone = false;
            prev = v(0, 0);
        }
        row("kernel_symmetric", symmetric ? 1.0 : 0.0, 1.0, symmetric);
        row("kernel_min_eig", min_eig, 0.0, min_eig > 0.0);
        row("kernel_monotone", monotone ? 1.0 : 0.0, 1.0, monotone);
        row("kernel_weight_sum", k.weight_sum(),
            k.truncation_error_bound(), std::abs(k.weight_sum() - 1.0) <=
                                            k.truncation_error_bound() + 1e-12);
    }

    // convolution engines on random smooth signals
    {
        Rng rng(cfg.seed + 17);
        MemoryKernel k(1);
        k.set_entry(0, 0, {{0.6, 0.7}, {0.4, 1.9}});
        double max_rel = 0.0;
        const double dt = 1e-5;
        const int steps = 1000;
        for (int trial = 0; trial < 5; ++trial) {
            const double a1 = rng.uniform(-1.0, 1.0), a2 = rng.uniform(-1.0, 1.0);
            const double w1 = rng.uniform(0.5, 3.0), w2 = rng.uniform(0.5, 3.0);
            auto f = [&](double t) { return a1 * std::cos(w1 * t) + a2 * std::sin(w2 * t); };
            std::vector<double> times, samples;
            ConvolutionState st(k.entry(0, 0), 1, dt);
            st.seed({f(0.0)});
            times.push_back(0.0);
            samples.push_back(f(0.0));
            double fast_last = 0.0, scale_max = 0.0;
            for (int s = 1; s <= steps; ++s) {
                const double t = s * dt;
                times.push_back(t);
                samples.push_back(f(t));
                fast_last = st.step({f(t)})[0];
                scale_max = std::max(scale_max, std::abs(f(t)));
            }
            const double direct = conv_direct_scalar(k.entry(0, 0), times, samples,
                                                     steps * dt);
            max_rel = std::max(max_rel, std::abs(fast_last - direct) /
                                            std::max(scale_max, 1e-30));
        }
        row("conv_engines_rel_diff", max_rel, 1e-10, max_rel <= 1e-10);
    }

    // inequality spot checks
    {
        const InequalityReport pr =
            inequality_check(InequalityKind::PoincareStrip, 25, cfg.seed + 1);
        row("poincare_strip_ratio", pr.max_ratio, 2.0, pr.max_ratio <= 2.0);
        row("poincare_strip_eigen", pr.eigenfunction_ratio, 2.0 / kPi,
            std::abs(pr.eigenfunction_ratio - 2.0 / kPi) <= 0.05 * (2.0 / kPi));
        const InequalityReport ag = inequality_check(InequalityKind::Agmon, 25, cfg.seed + 2);
        row("agmon_grid_stable", ag.max_ratio_refined, 1.1 * ag.max_ratio, ag.grid_stable);
        const InequalityReport gn =
            inequality_check(InequalityKind::GagliardoNirenbergL4, 25, cfg.seed + 3);
        row("gn_l4_grid_stable", gn.max_ratio_refined, 1.1 * gn.max_ratio, gn.grid_stable);
    }

    write_text_file(cfg.out_dir + "/ledger.csv", os.str());
    write_manifest(cfg, {"check", "value", "bound", "pass"});
    RunOutcome out;
    out.ok = all_ok;
    if (!all_ok) out.message = "suite: one or more property checks failed";
    return out;
}

} // namespace

RunOutcome run_scenario(const SimConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.scenario == "kernel") return run_kernel(cfg);
    if (cfg.scenario == "ch1d") return run_ch1d(cfg);
    if (cfg.scenario == "hsch2d") return run_hsch2d(cfg);
    if (cfg.scenario == "thin-layer") return run_thin_layer(cfg);
    if (cfg.scenario == "suite") return run_suite(cfg);
    throw ConfigError("config.scenario: unknown scenario " + cfg.scenario);
}

} // namespace hsch
