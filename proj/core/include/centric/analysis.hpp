#ifndef CENTRIC_ANALYSIS_HPP
#define CENTRIC_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "centric/dataset.hpp"
#include "centric/kmeans.hpp"

/**
 * @file analysis.hpp
 *
 * @brief Numerical certification that contracting a subset P of one optimal
 * cluster T cannot make any alternative partition cheaper.
 *
 * Notation follows the usual argument. The reference partition is
 * {T, Z_2, ..., Z_k} with P a subset of T and Y = T \ P. An alternative
 * partition {K_1, ..., K_k} splits P, Y and each Z_j into pieces A_i, B_i and
 * C_{i,j}. After contracting P by lambda,
 *
 *     h(lambda) = Q(reference) - Q(alternative)
 *
 * is a quadratic in lambda whose leading coefficient is
 *
 *     sum_i (|A_i| - |A_i| (|B_i| + sum_j |C_ij|) / |K_i|) ||mu(A_i) - mu(P)||^2 >= 0.
 *
 * h_lambda() evaluates h from transformed coordinates; h_decompose() builds
 * the same polynomial from the closed-form algebra on the original data. The
 * two share no code beyond centroids, which is what makes their agreement a
 * useful check.
 */

namespace centric {

/**
 * @brief An alternative partition expressed relative to (P, Y, Z_2..Z_k).
 *
 * `A[i]`, `B[i]` and `C[i][j]` are the pieces of P, Y and Z_{j} that land in
 * alternative cluster i. Index j runs over the reference clusters other than
 * T in ascending label order, so `C[i]` has k - 1 entries.
 */
struct AlternativeSplit {
    std::vector<IndexSet> A;
    std::vector<IndexSet> B;
    std::vector<std::vector<IndexSet>> C;

    std::size_t k() const { return A.size(); }

    /// Builds the split for alternative labels `alternative` (values in [0, k)).
    static AlternativeSplit from_labels(const Partition& reference, std::span<const Index> P,
                                        const Partition& alternative);

    /// Alternative cluster label of every point.
    std::vector<int> labels(std::size_t n) const;
};

/// The reference clusters seen from P: which cluster is T, Y = T \ P, and Z_j.
struct ReferenceLayout {
    int t_cluster = 0;
    IndexSet P;
    IndexSet Y;
    std::vector<int> z_clusters;
    std::vector<IndexSet> Z;
};

/// Throws std::invalid_argument unless P is a non-empty subset of a single cluster.
ReferenceLayout reference_layout(const Dataset& dataset, const Partition& reference, std::span<const Index> P);

/// Lists every way the split fails to match the layout (pieces not partitioning P, Y, Z_j, empty K_i).
std::vector<std::string> validate_split(const ReferenceLayout& layout, const AlternativeSplit& split, std::size_t n);

/// ||mu_a - mu_b||^2 / (1/|a| + 1/|b|); the between-group part of the SSE of a two-group union.
double between_term(std::size_t size_a, std::span<const double> mu_a, std::size_t size_b,
                    std::span<const double> mu_b);

/// Sum of squared distances to the subset's own centroid (0 for an empty subset).
double subset_ss(const Dataset& dataset, std::span<const Index> subset);

/// lambda in [0, 1]; lambda = 0 places every P point at mu(P).
double h_lambda(const Dataset& dataset, const Partition& reference, const AlternativeSplit& split,
                std::span<const Index> P, double lambda);

/// The lambda-linear and constant pieces attached to one alternative cluster.
struct CrossConstants {
    /// 2 v_{A_i} . (mu(P) - mu(B_i)); 0 when A_i or B_i is empty.
    double c_abp = 0.0;
    /// ||mu(P) - mu(B_i)||^2; 0 when B_i is empty.
    double c_bp = 0.0;
    /// Per Z_j: 2 v_{A_i} . (mu(P) - mu(C_ij)) and ||mu(P) - mu(C_ij)||^2.
    std::vector<double> c_acp;
    std::vector<double> c_cp;
};

struct HLambdaAnalysis {
    double quad_coeff = 0.0;
    double lin_coeff = 0.0;
    double const_coeff = 0.0;
    /// The lambda-independent cost bookkeeping (part of const_coeff).
    double c_h = 0.0;
    /// mu(A_i) - mu(P) per alternative cluster; empty vector when A_i is empty.
    std::vector<Vector> v_A;
    std::vector<CrossConstants> cross;
    /// Some A_i is non-empty with v_{A_i} != 0, so quad_coeff > 0 in exact arithmetic.
    bool strictly_convex = false;

    double h_at(double lambda) const { return (quad_coeff * lambda + lin_coeff) * lambda + const_coeff; }
};

HLambdaAnalysis h_decompose(const Dataset& dataset, const Partition& reference, const AlternativeSplit& split,
                            std::span<const Index> P);

enum class Verdict {
    preserved,
    tie_skipped,
    violated,
};

std::string to_string(Verdict verdict);

/// Optimality gaps below this make the oracle comparison meaningless.
inline constexpr double kTieGap = 1e-9;

struct PreservationVerdict {
    Verdict verdict = Verdict::preserved;
    double pre_cost = 0.0;
    double post_cost = 0.0;
    double gap_pre = 0.0;
    double gap_post = 0.0;
    double lambda = 1.0;
    std::size_t subset_size = 0;
    Partition before;
    Partition after;
};

/**
 * Ideal optimum before, Gamma++ on P, ideal optimum after. `preserved` when
 * both optima agree up to relabeling; `tie_skipped` when either gap is below
 * kTieGap; otherwise `violated`.
 */
PreservationVerdict verify_theorem3(const Dataset& dataset, int k, std::span<const Index> P, double lambda,
                                    const IdealOptions& options = {});

/// As above with the pre-transform optimum already computed.
PreservationVerdict verify_theorem3(const Dataset& dataset, const ClusteringResult& ideal_before,
                                    std::span<const Index> P, double lambda, const IdealOptions& options = {});

/// The whole-cluster (Gamma*) counterpart: contract cluster `cluster` of the optimum.
PreservationVerdict verify_gamma_star(const Dataset& dataset, const ClusteringResult& ideal_before, int cluster,
                                      double lambda, const IdealOptions& options = {});

struct CollapseVerdict {
    bool passed = false;
    double h0 = 0.0;
    /// Q of the alternative K'(0).
    double q_alternative = 0.0;
    /// Q of K''(0): the collapsed P point moved wholesale to cluster `target`.
    double q_rearranged = 0.0;
    int target = 0;
    /// |(Q(ref, 0) - Q(K'', 0)) - (Q(ref, 1) - Q(K'', 1))|; zero in exact arithmetic.
    double identity_residual = 0.0;
};

/**
 * At lambda = 0 all of P sits at mu(P). Moving it wholesale into the
 * alternative cluster whose centroid is nearest gives K'' with
 * Q(K'') <= Q(K'), and since K'' keeps P together its gap to the reference is
 * the same at lambda = 0 and 1. Checks Q(K''(0)) <= Q(K'(0)) and h(0) <= tol.
 */
CollapseVerdict verify_lambda0_collapse(const Dataset& dataset, const Partition& reference,
                                        const AlternativeSplit& split, std::span<const Index> P, double tol = 1e-9);

/// Every alternative partition into `k` non-empty clusters (canonical labels), n <= 10 and k <= 3.
void for_each_alternative_split(const Partition& reference, std::span<const Index> P, int k,
                                const std::function<void(const AlternativeSplit&)>& visit);

/// `count` uniformly random alternative partitions into `k` non-empty clusters.
std::vector<AlternativeSplit> sample_alternative_splits(const Partition& reference, std::span<const Index> P, int k,
                                                        std::size_t count, std::uint64_t seed);

} // namespace centric

#endif
