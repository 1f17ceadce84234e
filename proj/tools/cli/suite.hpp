#ifndef CENTRIC_CLI_SUITE_HPP
#define CENTRIC_CLI_SUITE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "centric/analysis.hpp"
#include "centric/datagen.hpp"
#include "centric/transforms.hpp"

namespace centric::cli {

enum class SuiteTransform { gamma_plus_plus, gamma_star, both };

std::string to_string(SuiteTransform t);
SuiteTransform suite_transform_from_string(const std::string& name);

/**
 * Randomized preservation checks against the exact oracle.
 *
 * Instance i cycles through `ks` (fastest) then `dims`. Its data are Gaussian
 * blobs of n / k points each with a random separation in [1, 4], so some
 * instances are well separated and some are close to a tie.
 */
struct SuiteConfig {
    std::size_t instances = 200;
    std::size_t n = 12;
    std::vector<int> ks{2};
    std::vector<std::size_t> dims{2};
    std::vector<double> lambdas{0.5};
    std::size_t subset_min = 2;
    std::size_t subset_max = 5;
    SuiteTransform transform = SuiteTransform::gamma_plus_plus;
    std::uint64_t seed = 0;
    IdealOptions oracle;
};

struct SuiteInstance {
    LabeledDataset data;
    int k = 2;
    std::size_t dim = 2;
};

SuiteInstance suite_instance(const SuiteConfig& config, std::size_t index);

struct SuiteRecord {
    std::size_t instance = 0;
    int k = 0;
    std::size_t dim = 0;
    SuiteTransform transform = SuiteTransform::gamma_plus_plus;
    int cluster = 0;
    /// The contracted points (the whole cluster for Gamma*).
    IndexSet subset;
    PreservationVerdict verdict;
};

struct SuiteSummary {
    std::size_t preserved = 0;
    std::size_t tie_skipped = 0;
    std::size_t violated = 0;
    std::vector<SuiteRecord> records;

    std::size_t total() const { return preserved + tie_skipped + violated; }
};

/// One record per (instance, lambda, transform). `threads` = 0 uses worker_count().
SuiteSummary run_random_suite(const SuiteConfig& config, std::size_t threads = 0);

/// Counts always; per-record verdicts when `include_records`.
nlohmann::json to_json(const SuiteSummary& summary, bool include_records = false);

/**
 * A Gamma++ instance that is not a Kleinberg Gamma-transformation: some
 * within-cluster distance grows and some cross-cluster distance shrinks,
 * while the oracle still reports the optimum preserved.
 */
struct MixedDirectionWitness {
    Dataset before;
    Dataset after;
    Partition optimum;
    IndexSet subset;
    double lambda = 0.5;
    GammaCheck check;
    DistanceViolation within_increase;
    DistanceViolation cross_decrease;
    PreservationVerdict verdict;
};

/// Seeded search over small random instances; nullopt if `attempts` draws find none.
std::optional<MixedDirectionWitness> find_mixed_direction_witness(std::uint64_t seed, std::size_t attempts = 200);

} // namespace centric::cli

#endif
