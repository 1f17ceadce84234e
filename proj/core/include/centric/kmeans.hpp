#ifndef CENTRIC_KMEANS_HPP
#define CENTRIC_KMEANS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "centric/dataset.hpp"

/**
 * @file kmeans.hpp
 *
 * @brief The k-means cost Q, Lloyd's algorithm with seeded restarts, the
 * exhaustive optimum ("k-means-ideal") and label-matching error.
 */

namespace centric {

/// Q as the sum over points of the squared distance to their cluster centroid.
double cost(const Dataset& dataset, const Partition& partition);

/// Q as sum_j (1/n_j) sum over unordered pairs {x_i, x_l} in C_j of ||x_i - x_l||^2.
double cost_pairwise_unordered(const Dataset& dataset, const Partition& partition);

/// Q as sum_j 1/(2 n_j) sum over ordered pairs (x_i, x_l) in C_j x C_j of ||x_i - x_l||^2.
double cost_pairwise_ordered(const Dataset& dataset, const Partition& partition);

/**
 * Q through the pairwise forms. Both pairwise sums are evaluated and must
 * agree to 1e-9 * max(1, Q); a mismatch throws std::logic_error. Returns the
 * unordered-pair value.
 */
double cost_pairwise(const Dataset& dataset, const Partition& partition);

/**
 * Centroid-form Q over raw labels in [0, k) where clusters may be empty
 * (empty clusters contribute nothing). Used where a rearranged partition can
 * lose a cluster.
 */
double cost_of_labels(const Dataset& dataset, std::span<const int> labels, int k);

enum class InitMethod {
    uniform_random_assignment,
    kmeans_plus_plus,
};

struct LloydConfig {
    int k = 2;
    int restarts = 20;
    int max_iters = 300;
    /// Stop once the relative cost improvement of an iteration drops to tol or below.
    double tol = 1e-9;
    std::uint64_t seed = 0;
    InitMethod init = InitMethod::kmeans_plus_plus;
    /// 0 picks worker_count(); the result does not depend on this value.
    std::size_t threads = 1;
};

struct ClusteringResult {
    Partition partition;
    double cost = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> restart_costs;
    /// Only set by kmeans_ideal: second-best distinct partition cost minus the optimum.
    std::optional<double> optimality_gap;
};

/// A single Lloyd restart, with the cost after every iteration.
struct LloydRun {
    Partition partition;
    double cost = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> cost_trace;
};

/// Restart number `restart` of lloyd(); seeded by derive_seed(config.seed, restart).
LloydRun lloyd_run(const Dataset& dataset, const LloydConfig& config, int restart);

/**
 * Best of `config.restarts` Lloyd runs. The lowest cost wins, ties go to the
 * lowest restart index, so the result is the same for any thread count.
 * The returned partition is canonical (labels in order of first occurrence).
 */
ClusteringResult lloyd(const Dataset& dataset, const LloydConfig& config);

struct IdealOptions {
    /// Largest number of set partitions the oracle will enumerate.
    double max_partitions = 1e6;
};

/// Number of partitions of n items into k non-empty blocks, as a double.
double stirling2(std::size_t n, std::size_t k);

/// Thrown by kmeans_ideal when S(n, k) exceeds the budget.
class OracleBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Global minimizer of Q over all partitions into exactly k non-empty
 * clusters, by exhaustive enumeration of restricted-growth label strings.
 * Exact ties resolve to the lexicographically smallest canonical label
 * vector. `optimality_gap` is +inf when only one partition exists.
 */
ClusteringResult kmeans_ideal(const Dataset& dataset, int k, const IdealOptions& options = {});

/**
 * Minimum number of points whose labels disagree over all bijective
 * relabelings of the candidate's clusters (Hungarian assignment on the
 * confusion matrix; the smaller k is padded with empty labels).
 */
std::size_t clustering_error(const Partition& reference, const Partition& candidate);

} // namespace centric

#endif
