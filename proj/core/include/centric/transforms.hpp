#ifndef CENTRIC_TRANSFORMS_HPP
#define CENTRIC_TRANSFORMS_HPP

#include <optional>
#include <vector>

#include "centric/dataset.hpp"

/**
 * @file transforms.hpp
 *
 * @brief Cluster-preserving transformations of embedded datasets.
 *
 * - centric_set_transform(): contract an arbitrary point set P toward its
 *   own centroid, x' = mu(P) + lambda (x - mu(P)).
 * - gamma_star(): the same map applied to an entire cluster.
 * - gamma_plus_plus(): the map applied to a subset of one cluster. Under
 *   k-means the globally optimal partition survives it, even though
 *   within-cluster distances may grow and cross-cluster distances shrink.
 * - angular_transform(): rescales each point's angle to a line, used to
 *   build Kleinberg Gamma-transformations of the two-squares data.
 *
 * Every function returns a new Dataset; point order and all untouched points
 * are preserved bit-for-bit.
 */

namespace centric {

/// Throws unless 0 < lambda <= 1.
void require_contraction_factor(double lambda);

Dataset centric_set_transform(const Dataset& dataset, std::span<const Index> subset, double lambda);

Dataset gamma_star(const Dataset& dataset, const Partition& partition, int cluster, double lambda);

struct GammaPlusPlusResult {
    Dataset dataset;
    /// The partition is unchanged by construction; echoed for convenience.
    Partition expected_partition;
};

GammaPlusPlusResult gamma_plus_plus(const Dataset& dataset, const Partition& partition, int cluster,
                                    std::span<const Index> subset, double lambda);

/// Symmetric n x n matrix with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double operator()(Index i, Index j) const { return values_[i * n_ + j]; }

    /// Sets both (i, j) and (j, i).
    void set(Index i, Index j, double value) {
        values_[i * n_ + j] = value;
        values_[j * n_ + i] = value;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

DistanceMatrix distance_matrix(const Dataset& dataset);

struct DistanceViolation {
    Index i = 0;
    Index j = 0;
    bool same_cluster = false;
    double before = 0.0;
    double after = 0.0;
};

struct GammaCheck {
    bool valid = true;
    /// Total offending pairs; `violations` holds at most the first `max_reported`.
    std::size_t violation_count = 0;
    std::vector<DistanceViolation> violations;
};

/**
 * Kleinberg's condition for d' to be a Gamma-transformation of d under the
 * partition: no same-cluster distance grows and no cross-cluster distance
 * shrinks, each up to `tol`.
 */
GammaCheck is_kleinberg_gamma_transform(const DistanceMatrix& d, const DistanceMatrix& d_prime,
                                        const Partition& partition, double tol = 1e-12,
                                        std::size_t max_reported = 1000);

/// Same check on two embeddings of the same points, without materializing matrices.
GammaCheck is_kleinberg_gamma_transform(const Dataset& before, const Dataset& after, const Partition& partition,
                                        double tol = 1e-12, std::size_t max_reported = 1000);

/// Scaled angles are capped at pi - kAngleClampEpsilon.
inline constexpr double kAngleClampEpsilon = 1e-9;

struct AngularResult {
    Dataset dataset;
    /// Points whose scaled angle hit the clamp.
    std::size_t clamped = 0;
};

/**
 * For each selected point, v = x - center is split into its component along
 * the line through `center` with direction `axis` and the perpendicular
 * remainder. The angle theta between v and the nearer ray of that line is
 * replaced by min(factor * theta, pi - eps), keeping ||v||, the azimuth about
 * the line and the side of the line's normal plane the ray points to.
 * Points on the line are left alone. `subset` empty means all points.
 */
AngularResult angular_transform(const Dataset& dataset, std::span<const double> axis, double factor,
                                std::span<const double> center, std::span<const Index> subset = {});

enum class TransformKind {
    gamma_star,
    gamma_plus_plus,
    centric_set,
    angular,
};

/// One step of a transform pipeline. Which fields matter depends on `kind`.
struct TransformSpec {
    TransformKind kind = TransformKind::centric_set;
    std::optional<int> cluster;
    IndexSet subset;
    double lambda = 1.0;
    double factor = 1.0;
    Vector axis;
    Vector center;
};

struct AppliedTransform {
    Dataset dataset;
    std::size_t clamped = 0;
};

/**
 * Dispatches a spec. `labels` is required for the cluster-based kinds. For
 * `angular` the points moved are `subset` if given, else the members of
 * `cluster` if given, else every point; a missing center is the origin.
 */
AppliedTransform apply_transform(const Dataset& dataset, const Partition* labels, const TransformSpec& spec);

} // namespace centric

#endif
