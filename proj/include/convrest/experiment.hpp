// Config-driven experiment runner with deterministic CSV/JSON emitters.
#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "convrest/families.hpp"
#include "convrest/gaussian.hpp"

namespace convrest {

struct DeltaSchedule {
    int k_min = 2;
    int k_max = 8;
    // delta_k = diam * 2^{-k}. Keep delta well above the node spacing: a
    // piece must capture several chart nodes for its rectangle height to be
    // meaningful on the sampled curve.
    std::vector<double> resolve(double diam) const;
};

struct ProbeConfig {
    int points = 8;       // smooth probe points on the first curve
    int k_min = 0;
    int k_max = 6;        // scales 2^{-k}
    int gaussians = 5;    // how many bank entries to probe
};

struct FieldConfig {
    bool enabled = true;
    double xi_max = 4.0;
    int grid = 33;        // per axis
};

struct ExperimentConfig {
    std::uint64_t seed = 12345;
    int partition_pieces = 8;
    DeltaSchedule deltas;
    std::vector<double> exponents{1.2};
    double shear = 0.5;   // unimodular shear used by the stability check
    std::vector<CurveFamilySpec> curves;
    std::vector<GaussianWave> gaussians;
    ProbeConfig probe;
    FieldConfig fields;

    static ExperimentConfig defaults();
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    void validate() const;
};

struct CriterionFlag {
    std::string id;
    bool pass = false;
    double value = 0.0;
};

struct RunOutcome {
    bool all_pass = false;
    std::vector<CriterionFlag> flags;
    std::vector<std::string> errors;
    std::vector<std::string> files_written;
};

enum RunParts : unsigned {
    kRunMeasure = 1u,
    kRunRestrict = 2u,
    kRunProbe = 4u,
    kRunAll = 7u,
};

RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                          unsigned parts = kRunAll);

// Deterministic double formatting shared by every emitter.
std::string format_double(double v);

}  // namespace convrest
