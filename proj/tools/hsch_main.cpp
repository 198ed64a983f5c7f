// Command-line front end: kernel | ch1d | hsch2d | thin-layer | suite | validate
// Exit codes: 0 success, 2 config error, 3 solver failure.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hsch/config.hpp"
#include "hsch/errors.hpp"
#include "hsch/io.hpp"
#include "hsch/scenario.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int run_with(const CommonArgs& args, const std::string& expected_scenario) {
    try {
        hsch::SimConfig cfg = hsch::load_config(args.config_path);
        if (!expected_scenario.empty() && cfg.scenario != expected_scenario) {
            std::cerr << "config.scenario: expected '" << expected_scenario << "', got '"
                      << cfg.scenario << "'\n";
            return 2;
        }
        if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
        if (args.seed_set) cfg.seed = args.seed;
        const hsch::RunOutcome out = hsch::run_scenario(cfg);
        if (!out.ok) {
            std::cerr << out.message << "\n";
            return 3;
        }
        std::cout << "wrote " << cfg.out_dir << "/ledger.csv\n";
        return 0;
    } catch (const hsch::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const hsch::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << " (residual " << e.residual()
                  << " after " << e.iterations() << " iterations)\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal Hele-Shaw-Cahn-Hilliard solver"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON config path")->required();
        sub->add_option("--out", args.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", args.seed, "RNG seed (overrides config)")
            ->each([&](const std::string&) { args.seed_set = true; });
    };

    CLI::App* kernel = app.add_subcommand("kernel", "memory-kernel samples g(t)");
    CLI::App* ch1d = app.add_subcommand("ch1d", "1D Cahn-Hilliard limit run");
    CLI::App* hsch2d = app.add_subcommand("hsch2d", "coupled nonlocal Hele-Shaw-CH run");
    CLI::App* thin = app.add_subcommand("thin-layer", "thin-strip convergence study");
    CLI::App* suite = app.add_subcommand("suite", "property-check suite");
    CLI::App* validate = app.add_subcommand("validate", "check a config without running");
    for (CLI::App* sub : {kernel, ch1d, hsch2d, thin, suite, validate}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        try {
            const std::string text = hsch::read_text_file(args.config_path);
            std::cout << hsch::validate_config_text(text);
            return 0;
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    }
    if (kernel->parsed()) return run_with(args, "kernel");
    if (ch1d->parsed()) return run_with(args, "ch1d");
    if (hsch2d->parsed()) return run_with(args, "hsch2d");
    if (thin->parsed()) return run_with(args, "thin-layer");
    if (suite->parsed()) return run_with(args, "suite");
    return 2;
}
