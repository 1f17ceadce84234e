#ifndef CENTRIC_CLI_EXPERIMENT_HPP
#define CENTRIC_CLI_EXPERIMENT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "centric/datagen.hpp"
#include "centric/kmeans.hpp"
#include "centric/transforms.hpp"

namespace centric::cli {

/// Contract a random subset of one cluster; size uniform in [1, floor(max_fraction * |cluster|)].
struct PlusPlusArm {
    double lambda = 0.5;
    double max_fraction = 1.0 / 3.0;
    int cluster = 0;
};

/**
 * Gamma vs Gamma++ stability comparison on two-squares data.
 *
 * Each repetition draws a dataset, spreads it with `pre_transform`, then
 * clusters two perturbed copies with Lloyd: one after `gamma_arm` (a
 * Kleinberg Gamma-transformation, checked per run) and one after a Gamma++
 * contraction. Errors are counted against the generating labels.
 *
 * With `require_fixed_point`, draws whose generating labels are not what
 * Lloyd returns on the pre-transformed data are discarded and redrawn (up to
 * `max_draws`), so every arm starts from a dataset whose labels are its
 * k-means clustering.
 */
struct ExperimentConfig {
    GenSpec generator;
    TransformSpec pre_transform;
    TransformSpec gamma_arm;
    PlusPlusArm gamma_plus_plus_arm;
    LloydConfig lloyd;
    std::size_t repetitions = 200;
    std::uint64_t seed = 1;
    bool require_fixed_point = true;
    std::size_t max_draws = 100;
};

/// n = 2000 (10000 with full_scale), angular 1.9 spread, angular 0.05 Gamma arm, lambda = 0.5 Gamma++ arm, 20 restarts.
ExperimentConfig default_experiment_config(bool full_scale = false);

nlohmann::json to_json(const ExperimentConfig& config);
/// Missing fields keep the default_experiment_config() values.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

inline constexpr const char* kGammaArm = "gamma";
inline constexpr const char* kPlusPlusArm = "gamma_plus_plus";

struct RunRecord {
    std::size_t repetition = 0;
    std::string arm;
    std::size_t n = 0;
    std::size_t errors = 0;
    double error_rate = 0.0;
    std::size_t subset_size = 0;
    /// Only recorded for the Gamma arm.
    std::optional<bool> kleinberg_valid;
    std::size_t dataset_draws = 1;
    double cost = 0.0;
};

struct ArmSummary {
    std::string arm;
    std::size_t runs = 0;
    double mean_error_rate = 0.0;
    /// Sample standard deviation (n - 1); 0 for a single run.
    double std_error_rate = 0.0;
    std::size_t max_errors = 0;
    double max_error_rate = 0.0;
    /// (error count, number of runs), ascending by error count.
    std::vector<std::pair<std::size_t, std::size_t>> histogram;
    bool all_kleinberg_valid = true;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<RunRecord> runs;
    std::vector<ArmSummary> arms;
    double wall_seconds = 0.0;
};

/// `threads` = 0 uses worker_count(). Output is identical for every thread count.
ExperimentReport run_experiment(const ExperimentConfig& config, std::size_t threads = 0);

/// Aggregates the records of one arm.
ArmSummary summarize_arm(const std::string& arm, const std::vector<RunRecord>& runs);

/// Wall time is left out unless `include_timing`, so reruns are byte-identical.
nlohmann::json to_json(const ExperimentReport& report, bool include_timing = false);

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs);
std::vector<RunRecord> read_runs_csv(std::istream& in);

} // namespace centric::cli

#endif
