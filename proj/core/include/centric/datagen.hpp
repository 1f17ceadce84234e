#ifndef CENTRIC_DATAGEN_HPP
#define CENTRIC_DATAGEN_HPP

#include <cstdint>

#include "centric/dataset.hpp"

/**
 * @file datagen.hpp
 *
 * @brief Seeded synthetic labeled datasets and subset samplers.
 *
 * Two-squares geometry: square 0 is [-edge, 0]^2 in the z = 0 plane. Square 1
 * is [0, edge]^2 in the z = 0 plane rotated by 90 degrees about the line
 * through the origin with direction (1, 1, 0)/sqrt(2). The squares meet only
 * at the origin and both diagonals lie on that line.
 */

namespace centric {

struct LabeledDataset {
    Dataset dataset;
    Partition labels;
};

enum class GenKind {
    two_squares_3d,
    gaussian_blobs,
};

struct GenSpec {
    GenKind kind = GenKind::two_squares_3d;
    /// Total point count for two_squares_3d.
    std::size_t n = 2000;
    double edge = 1.0;
    int k = 2;
    std::size_t n_per = 10;
    std::size_t dim = 2;
    double spread = 1.0;
    double separation = 10.0;
    std::uint64_t seed = 0;
};

/// ceil(n/2) points uniform on square 0 followed by floor(n/2) on square 1.
LabeledDataset two_squares_3d(std::size_t n, double edge, std::uint64_t seed);

/// The diagonal both squares share, (1, 1, 0)/sqrt(2).
Vector two_squares_diagonal();

/// Closed-square membership of a 3D point, up to `tol`.
bool in_square(int square, std::span<const double> point, double edge, double tol = 1e-12);

/**
 * k isotropic Gaussian blobs of n_per points each, standard deviation
 * `spread`. Centers are drawn in a cube and rejected until every pair is at
 * least `separation` apart. Points are ordered blob by blob.
 */
LabeledDataset gaussian_blobs(int k, std::size_t n_per, std::size_t dim, double spread, double separation,
                              std::uint64_t seed);

LabeledDataset generate(const GenSpec& spec);

enum class SubsetMode {
    uniform,
    ball,
};

/// `count` members of `cluster` sampled without replacement, ascending.
IndexSet sample_subset_count(const Dataset& dataset, const Partition& partition, int cluster, std::size_t count,
                             SubsetMode mode, std::uint64_t seed);

/**
 * ceil(fraction * |cluster|) members of `cluster`. Uniform mode samples
 * without replacement; ball mode picks a random member and takes its nearest
 * cluster-mates (itself included, ties by index).
 */
IndexSet sample_subset(const Dataset& dataset, const Partition& partition, int cluster, double fraction,
                       SubsetMode mode, std::uint64_t seed);

/// The `count` members of `cluster` nearest to point `seed_point` (itself included), ascending.
IndexSet ball_subset(const Dataset& dataset, const Partition& partition, int cluster, Index seed_point,
                     std::size_t count);

} // namespace centric

#endif
