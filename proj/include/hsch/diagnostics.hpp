#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsch/field.hpp"
#include "hsch/ops.hpp"

namespace hsch {

struct FieldNorms {
    double l2 = 0.0;
    double l4 = 0.0;
    double linf = 0.0;
    double h1_semi = 0.0; // ‖∇f‖ (face norm)
};

FieldNorms norms(const ScalarField& f);

enum class InequalityKind { PoincareStrip, Agmon, GagliardoNirenbergL4 };

struct InequalityReport {
    std::string name;
    double max_ratio = 0.0;          // base grid
    double max_ratio_refined = 0.0;  // one refinement (same continuum fields)
    double eigenfunction_ratio = 0.0; // PoincareStrip only
    bool grid_stable = false;        // ratios within ±10 %
    int samples = 0;
};

// Empirical constants of the strip Poincaré / Agmon / Gagliardo–Nirenberg
// inequalities over random smooth cosine/sine combinations with the relevant
// boundary behaviour; the same continuum fields are re-sampled on a refined
// grid for the stability check.
InequalityReport inequality_check(InequalityKind kind, int samples, std::uint64_t seed,
                                  int n_base = 48);

struct GronwallReport {
    bool hypothesis_ok = false;  // u(t) ≤ c1 + c2 ∫ (v u + ∫ h u) discretely
    bool bound_ok = false;       // u(t) ≤ c1 exp[c2 ∫ (v + ∫ h)]
    double max_violation = 0.0;  // of the conclusion, where hypothesis held
    double max_hypothesis_violation = 0.0;
};

// Discrete check of the Gronwall-type envelope. h is sampled as h[k][r] on
// the lower-triangular grid (s = t_k, r = t_r, r ≤ k); pass empty for h ≡ 0.
GronwallReport gronwall_envelope(const std::vector<double>& u, const std::vector<double>& v,
                                 const std::vector<std::vector<double>>& h, double c1,
                                 double c2, double dt, double slack = 1e-12);

} // namespace hsch
