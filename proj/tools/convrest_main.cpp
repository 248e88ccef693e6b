// Command-line runner: one verb per family of checks.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "convrest/experiment.hpp"

namespace {

int run(unsigned parts, const std::string& config_path, const std::string& out_dir,
        std::optional<std::uint64_t> seed_override) {
    using namespace convrest;
    try {
        ExperimentConfig config =
            config_path.empty() ? ExperimentConfig::defaults() : ExperimentConfig::load(config_path);
        if (seed_override) config.seed = *seed_override;
        RunOutcome outcome = run_experiment(config, out_dir, parts);
        for (const CriterionFlag& f : outcome.flags)
            std::cout << (f.pass ? "[PASS] " : "[FAIL] ") << f.id << " (value "
                      << format_double(f.value) << ")\n";
        for (const std::string& e : outcome.errors) std::cout << "[ERROR] " << e << "\n";
        std::cout << (outcome.all_pass ? "all checks passed" : "some checks failed") << "\n";
        return outcome.all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affine measures and Fourier restriction on convex plane curves"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --config/--out/--seed-override after the subcommand

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_override;
    app.add_option("--config", config_path, "JSON config (defaults built in)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed-override", seed_override, "replace the config seed");

    auto* measure = app.add_subcommand("measure", "comparability of mu and nu");
    auto* restrict_cmd = app.add_subcommand("restrict", "restriction norm ratios");
    auto* probe = app.add_subcommand("probe", "Lebesgue point probes");
    auto* all = app.add_subcommand("all", "everything");

    CLI11_PARSE(app, argc, argv);

    unsigned parts = 0;
    if (measure->parsed()) parts = convrest::kRunMeasure;
    if (restrict_cmd->parsed()) parts = convrest::kRunRestrict;
    if (probe->parsed()) parts = convrest::kRunProbe;
    if (all->parsed()) parts = convrest::kRunAll;
    return run(parts, config_path, out_dir, seed_override);
}
