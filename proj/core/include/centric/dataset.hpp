#ifndef CENTRIC_DATASET_HPP
#define CENTRIC_DATASET_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

/**
 * @file dataset.hpp
 *
 * @brief Point matrices, partitions and per-cluster statistics.
 */

namespace centric {

using Index = std::size_t;

/// Sorted or unsorted list of point indices. Operations that treat it as a
/// set reject duplicates.
using IndexSet = std::vector<Index>;

using Vector = std::vector<double>;

/**
 * @brief Immutable n x d point matrix stored row-major.
 *
 * Every coordinate is finite and n, d are both at least one. Point `i` keeps
 * its index across every transform in the library.
 */
class Dataset {
public:
    Dataset() = default;

    /// @param coords row-major, `coords.size()` must be a positive multiple of `dim`.
    Dataset(std::size_t dim, std::vector<double> coords);

    static Dataset from_rows(const std::vector<Vector>& rows);

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }

    std::span<const double> point(Index i) const {
        return {coords_.data() + i * dim_, dim_};
    }

    std::span<const double> coords() const { return coords_; }

    /// Copy of the coordinates for building a modified dataset.
    std::vector<double> coords_copy() const { return coords_; }

    bool operator==(const Dataset&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/**
 * @brief Assignment of points to clusters `0..k-1`.
 *
 * A Partition is a plain holder and may be invalid (empty clusters, labels out
 * of range). Use validate_partition() to list problems; operations that need a
 * valid partition call require_valid_partition() and throw.
 */
class Partition {
public:
    Partition() = default;
    Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {}

    /// k is taken as max(label) + 1.
    static Partition from_labels(std::vector<int> labels);

    const std::vector<int>& labels() const { return labels_; }
    int label(Index i) const { return labels_[i]; }
    int k() const { return k_; }
    std::size_t size() const { return labels_.size(); }

    /// Indices of the members of `cluster`, ascending.
    IndexSet members(int cluster) const;

    /// Relabel so clusters are numbered in order of first occurrence.
    Partition canonical() const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<int> labels_;
    int k_ = 0;
};

struct ClusterStats {
    Vector centroid;
    std::size_t size = 0;
    /// Sum of squared distances of the members to the centroid.
    double within_ss = 0.0;
};

/// Coordinate-wise mean of the selected points.
Vector centroid(const Dataset& dataset, std::span<const Index> subset);

/// One entry per cluster in label order.
std::vector<ClusterStats> cluster_stats(const Dataset& dataset, const Partition& partition);

/// Every violated invariant as a readable message; empty when the partition is valid.
std::vector<std::string> validate_partition(const Dataset& dataset, const Partition& partition);

/// Same checks without a dataset (length is not compared).
std::vector<std::string> validate_partition(const Partition& partition);

/// Throws std::invalid_argument listing the violations, if any.
void require_valid_partition(const Dataset& dataset, const Partition& partition);

/// Squared Euclidean distance.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        total += diff * diff;
    }
    return total;
}

/// Throws if an index is out of range or repeated.
void require_index_set(const Dataset& dataset, std::span<const Index> subset);

} // namespace centric

#endif
