#pragma once

#include <string>

#include "hsch/config.hpp"
#include "hsch/forcing.hpp"
#include "hsch/potential.hpp"

namespace hsch {

// Builders shared by the CLI and the test suites.
Potential build_potential(const PotentialSpec& spec);
Forcing build_forcing(const SimConfig& cfg);
ScalarField build_phi0(const SimConfig& cfg, const Grid& grid);

struct RunOutcome {
    bool ok = true;
    std::string message;
};

// Executes the configured scenario and writes ledger CSV/JSON, snapshots and
// the manifest under cfg.out_dir. Deterministic for a fixed config + seed.
RunOutcome run_scenario(const SimConfig& cfg);

} // namespace hsch
