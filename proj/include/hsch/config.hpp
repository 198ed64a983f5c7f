#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hsch {

// One cosine mode of an initial-data or forcing expansion.
struct CosMode {
    double amplitude = 0.0;
    int kx = 0;
    int ky = 0;
};

struct PhiSpec {
    std::string type = "constant"; // constant | cosine_modes | file
    double value = 0.0;            // constant, or the mean for cosine_modes
    std::vector<CosMode> modes;
    std::string path; // file
};

struct ForcingSpec {
    std::string type = "zero"; // zero | constant | cosine | gradient
    std::array<double, 2> value{0.0, 0.0};
    // cosine: h1_k = value_k cos(kx π x̂) cos(ky π ŷ); gradient: h1 = ∇ψ with
    // ψ = value_0 cos(kx π x̂) cos(ky π ŷ)  (x̂, ŷ normalized to the domain)
    int kx = 1;
    int ky = 0;
};

struct PotentialSpec {
    std::string type = "landau"; // landau | quartic
    std::array<double, 5> coeffs{0.25, 0.0, -0.5, 0.0, 0.25};
};

struct SimConfig {
    std::string scenario; // kernel | ch1d | hsch2d | thin-layer | suite
    double alpha = 1.0, beta = 0.01, lambda = 1.0;
    std::array<double, 2> x{0.0, 1.0};
    std::array<double, 2> y{0.0, 1.0};
    int nx = 64, ny = 64;
    double dt = 1e-3, t_end = 0.1;
    PotentialSpec potential;
    ForcingSpec forcing;
    PhiSpec initial_phi;
    std::string initial_u = "zero"; // zero only (u⁰ = 0 per the 2D result)
    int kernel_n_modes = 64;
    double stabilization = -1.0;
    // thin layer study
    std::vector<double> eps_list{0.2, 0.1, 0.05};
    int n_zeta = 16;
    // ζ-asymmetric initial perturbation, amplitude zeta_pert_amp·ε (admissible
    // vanishing data); zero would make the study errors pure solver noise
    double zeta_pert_amp = 0.4;
    int zeta_pert_kx = 1;
    double u0_scale = 0.0; // (1.4)-saturating initial velocity when > 0
    // kernel scenario
    double kernel_t_end = 5.0;
    double kernel_fd_dt = 1e-4;
    int kernel_fd_grid = 200;
    // output
    std::string out_dir = "out";
    int snapshot_every = 0; // 0: none
    std::uint64_t seed = 0;

    std::string canonical_json() const; // stable key order, for hashing/echo
};

// Parses and validates; throws ConfigError with a field-level message.
SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& json_text);

// Validation only; returns a human-readable report of the checks performed.
std::string validate_config_text(const std::string& json_text);

} // namespace hsch
