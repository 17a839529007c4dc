#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steinpp/bounds.hpp"

namespace steinpp {

// Experiment description read from JSON:
// {experiment, params, metrics, replicates, seed, output_dir}.
// Seeds are always explicit; there is no wall-clock fallback.
struct ExperimentConfig {
    std::string experiment; // bernoulli | uniform_points | thinning | renewal | custom_palm
    std::string params_json;
    std::vector<Metric> metrics;
    long replicates = 1;
    std::uint64_t seed = 0;
    std::string output_dir;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig load_file(const std::string& path);
};

struct VerificationRow {
    std::string label;       // e.g. "dtv" or "p=0.5/dTV"
    std::string metric;
    double distance = 0.0;
    double halfwidth = 0.0;  // 0 for exact distances
    double bound = 0.0;
    double bound_stderr = 0.0;
    bool exact = false;
    bool bound_vacuous = false;
    bool skipped = false;
    bool satisfied = false;  // distance <= bound + halfwidth (+ exact tolerance)
    bool inconclusive = false;
    double margin = 0.0;     // bound + halfwidth - distance
    std::string note;
};

struct VerificationReport {
    std::string experiment;
    std::vector<VerificationRow> rows;
    std::vector<std::string> notes;

    bool all_satisfied() const;
    // Unsatisfied beyond Monte Carlo noise (margin worse than 2 halfwidths).
    bool deterministic_failure() const;
    std::string to_json() const;
    std::string to_csv() const; // plot-ready table, one row per (param, metric)
};

VerificationReport verify_bernoulli(const ExperimentConfig& cfg);
VerificationReport verify_uniform(const ExperimentConfig& cfg);
VerificationReport verify_renewal(const ExperimentConfig& cfg);
VerificationReport verify_thinning(const ExperimentConfig& cfg);
VerificationReport verify_custom_palm(const ExperimentConfig& cfg);
VerificationReport run_experiment(const ExperimentConfig& cfg);

// Subcommands: bound, simulate, verify, renewal, metrics.
// Exit 0 on success, 1 on configuration errors, 2 on a deterministic
// verification failure.
int run_cli(int argc, const char* const* argv);

} // namespace steinpp
