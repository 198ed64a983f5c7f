#include "hsch/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hsch/errors.hpp"

namespace hsch {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ConfigError("config." + field + ": " + why);
}

double need_positive(const json& j, const std::string& field, double dflt,
                     bool required = false) {
    if (!j.contains(field)) {
        if (required) fail(field, "missing");
        return dflt;
    }
    if (!j[field].is_number()) fail(field, "must be a number");
    const double v = j[field].get<double>();
    if (!(v > 0.0)) fail(field, "must be > 0");
    return v;
}

} // namespace

SimConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    SimConfig c;
    if (!j.contains("scenario") || !j["scenario"].is_string()) fail("scenario", "missing");
    c.scenario = j["scenario"].get<std::string>();
    const bool known = c.scenario == "kernel" || c.scenario == "ch1d" ||
                       c.scenario == "hsch2d" || c.scenario == "thin-layer" ||
                       c.scenario == "suite";
    if (!known) fail("scenario", "unknown scenario '" + c.scenario + "'");

    c.alpha = need_positive(j, "alpha", c.alpha);
    c.beta = need_positive(j, "beta", c.beta);
    c.lambda = need_positive(j, "lambda", c.lambda);

    if (j.contains("domain")) {
        const json& d = j["domain"];
        auto axis = [&](const char* name, std::array<double, 2>& out) {
            if (!d.contains(name)) return;
            if (!d[name].is_array() || d[name].size() != 2) fail(std::string("domain.") + name, "needs [lo, hi]");
            out[0] = d[name][0].get<double>();
            out[1] = d[name][1].get<double>();
            if (!(out[1] > out[0])) fail(std::string("domain.") + name, "needs hi > lo");
        };
        axis("x", c.x);
        axis("y", c.y);
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (g.contains("nx")) c.nx = g["nx"].get<int>();
        if (g.contains("ny")) c.ny = g["ny"].get<int>();
        if (c.nx < 4) fail("grid.nx", "must be at least 4");
        if (c.ny < 4) fail("grid.ny", "must be at least 4");
    }
    if (j.contains("time")) {
        const json& t = j["time"];
        if (!t.contains("dt")) fail("time.dt", "missing");
        c.dt = t["dt"].get<double>();
        if (!(c.dt > 0.0)) fail("time.dt", "must be > 0");
        if (!t.contains("t_end")) fail("time.t_end", "missing");
        c.t_end = t["t_end"].get<double>();
        if (!(c.t_end >= c.dt)) fail("time.t_end", "must be at least dt");
    } else if (c.scenario == "ch1d" || c.scenario == "hsch2d" || c.scenario == "thin-layer") {
        fail("time", "missing (dt, t_end required)");
    }

    if (j.contains("potential")) {
        const json& p = j["potential"];
        c.potential.type = p.value("type", "landau");
        if (c.potential.type != "landau" && c.potential.type != "quartic")
            fail("potential.type", "must be landau or quartic");
        if (c.potential.type == "quartic") {
            if (!p.contains("coeffs") || !p["coeffs"].is_array() || p["coeffs"].size() != 5)
                fail("potential.coeffs", "needs 5 coefficients of F");
            for (std::size_t k = 0; k < 5; ++k) c.potential.coeffs[k] = p["coeffs"][k].get<double>();
            if (!(c.potential.coeffs[4] > 0.0))
                fail("potential.coeffs", "leading coefficient must be > 0");
        }
    }

    if (j.contains("forcing")) {
        const json& f = j["forcing"];
        c.forcing.type = f.value("type", "zero");
        if (c.forcing.type != "zero" && c.forcing.type != "constant" &&
            c.forcing.type != "cosine" && c.forcing.type != "gradient")
            fail("forcing.type", "must be zero, constant, cosine or gradient");
        if (f.contains("value")) {
            if (f["value"].is_number()) {
                c.forcing.value[0] = f["value"].get<double>();
            } else if (f["value"].is_array()) {
                for (std::size_t k = 0; k < f["value"].size() && k < 2; ++k)
                    c.forcing.value[k] = f["value"][k].get<double>();
            } else {
                fail("forcing.value", "must be a number or [fx, fy]");
            }
        }
        c.forcing.kx = f.value("kx", 1);
        c.forcing.ky = f.value("ky", 0);
    }

    if (j.contains("initial_phi")) {
        const json& p = j["initial_phi"];
        c.initial_phi.type = p.value("type", "constant");
        if (c.initial_phi.type == "constant") {
            c.initial_phi.value = p.value("value", 0.0);
        } else if (c.initial_phi.type == "cosine_modes") {
            c.initial_phi.value = p.value("mean", 0.0);
            if (!p.contains("modes") || !p["modes"].is_array() || p["modes"].empty())
                fail("initial_phi.modes", "needs at least one mode");
            for (const json& m : p["modes"]) {
                CosMode cm;
                cm.amplitude = m.value("amplitude", 0.0);
                cm.kx = m.value("kx", 1);
                cm.ky = m.value("ky", 0);
                c.initial_phi.modes.push_back(cm);
            }
        } else if (c.initial_phi.type == "file") {
            if (!p.contains("path")) fail("initial_phi.path", "missing");
            c.initial_phi.path = p["path"].get<std::string>();
        } else {
            fail("initial_phi.type", "must be constant, cosine_modes or file");
        }
    }

    if (j.contains("initial_u")) {
        c.initial_u = j["initial_u"].is_string() ? j["initial_u"].get<std::string>()
                                                 : j["initial_u"].value("type", "zero");
        if (c.initial_u != "zero") fail("initial_u", "only 'zero' is supported (u0 = 0)");
    }

    if (j.contains("kernel")) {
        const json& k = j["kernel"];
        c.kernel_n_modes = k.value("n_modes", 64);
        if (c.kernel_n_modes < 1) fail("kernel.n_modes", "must be at least 1");
        c.kernel_t_end = k.value("t_end", c.kernel_t_end);
        c.kernel_fd_dt = k.value("fd_dt", c.kernel_fd_dt);
        c.kernel_fd_grid = k.value("fd_grid", c.kernel_fd_grid);
        if (!(c.kernel_fd_dt > 0.0)) fail("kernel.fd_dt", "must be > 0");
        if (c.kernel_fd_grid < 4) fail("kernel.fd_grid", "must be at least 4");
    }

    if (j.contains("stabilization")) {
        c.stabilization = j["stabilization"].get<double>();
        if (!(c.stabilization >= 0.0)) fail("stabilization", "must be >= 0");
    }

    if (j.contains("thin_layer")) {
        const json& t = j["thin_layer"];
        if (t.contains("eps_list")) {
            c.eps_list.clear();
            for (const json& e : t["eps_list"]) c.eps_list.push_back(e.get<double>());
            if (c.eps_list.size() < 2) fail("thin_layer.eps_list", "needs at least two values");
            for (std::size_t i = 0; i < c.eps_list.size(); ++i) {
                if (!(c.eps_list[i] > 0.0)) fail("thin_layer.eps_list", "entries must be > 0");
                if (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1]))
                    fail("thin_layer.eps_list", "must be strictly decreasing");
            }
        }
        c.n_zeta = t.value("n_zeta", 16);
        if (c.n_zeta < 16) fail("thin_layer.n_zeta", "needs at least 16 cells across the gap");
        c.zeta_pert_amp = t.value("zeta_pert_amplitude", c.zeta_pert_amp);
        if (!(c.zeta_pert_amp >= 0.0)) fail("thin_layer.zeta_pert_amplitude", "must be >= 0");
        c.zeta_pert_kx = t.value("zeta_pert_kx", c.zeta_pert_kx);
        c.u0_scale = t.value("u0_scale", c.u0_scale);
        if (!(c.u0_scale >= 0.0)) fail("thin_layer.u0_scale", "must be >= 0");
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        c.out_dir = o.value("dir", c.out_dir);
        c.snapshot_every = o.value("snapshot_every", 0);
        if (c.snapshot_every < 0) fail("output.snapshot_every", "must be >= 0");
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();

    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string SimConfig::canonical_json() const {
    json j;
    j["scenario"] = scenario;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["lambda"] = lambda;
    j["domain"]["x"] = x;
    j["domain"]["y"] = y;
    j["grid"]["nx"] = nx;
    j["grid"]["ny"] = ny;
    j["time"]["dt"] = dt;
    j["time"]["t_end"] = t_end;
    j["potential"]["type"] = potential.type;
    j["potential"]["coeffs"] = potential.coeffs;
    j["forcing"]["type"] = forcing.type;
    j["forcing"]["value"] = forcing.value;
    j["forcing"]["kx"] = forcing.kx;
    j["forcing"]["ky"] = forcing.ky;
    j["initial_phi"]["type"] = initial_phi.type;
    j["initial_phi"]["value"] = initial_phi.value;
    for (const CosMode& m : initial_phi.modes) {
        json mm;
        mm["amplitude"] = m.amplitude;
        mm["kx"] = m.kx;
        mm["ky"] = m.ky;
        j["initial_phi"]["modes"].push_back(mm);
    }
    if (!initial_phi.path.empty()) j["initial_phi"]["path"] = initial_phi.path;
    j["initial_u"] = initial_u;
    j["kernel"]["n_modes"] = kernel_n_modes;
    j["kernel"]["t_end"] = kernel_t_end;
    j["kernel"]["fd_dt"] = kernel_fd_dt;
    j["kernel"]["fd_grid"] = kernel_fd_grid;
    j["stabilization"] = stabilization;
    j["thin_layer"]["eps_list"] = eps_list;
    j["thin_layer"]["n_zeta"] = n_zeta;
    j["thin_layer"]["zeta_pert_amplitude"] = zeta_pert_amp;
    j["thin_layer"]["zeta_pert_kx"] = zeta_pert_kx;
    j["thin_layer"]["u0_scale"] = u0_scale;
    // the output block is deliberately left out: ledgers and hashes must not
    // depend on where a run writes
    j["snapshot_every"] = snapshot_every;
    j["seed"] = seed;
    return j.dump(2);
}

std::string validate_config_text(const std::string& json_text) {
    const SimConfig c = parse_config(json_text); // throws on problems
    std::ostringstream os;
    os << "ok: scenario=" << c.scenario << " alpha=" << c.alpha << " beta=" << c.beta
       << " lambda=" << c.lambda << " grid=" << c.nx << "x" << c.ny << " dt=" << c.dt
       << " t_end=" << c.t_end << " n_modes=" << c.kernel_n_modes << " seed=" << c.seed
       << "\n";
    return os.str();
}

} // namespace hsch
