#include "centric/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "centric/random.hpp"

namespace centric {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_cluster_members(const Partition& partition, int cluster) {
    if (cluster < 0 || cluster >= partition.k()) {
        throw std::invalid_argument("cluster index " + std::to_string(cluster) + " out of range");
    }
}

/// Square 1 parametrization: (u, v) in [0, edge]^2 rotated a quarter turn about the diagonal.
void square_one_point(double u, double v, double* out) {
    out[0] = 0.5 * (u + v);
    out[1] = 0.5 * (u + v);
    out[2] = (v - u) * kInvSqrt2;
}

} // namespace

Vector two_squares_diagonal() { return {kInvSqrt2, kInvSqrt2, 0.0}; }

LabeledDataset two_squares_3d(std::size_t n, double edge, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("two_squares_3d needs n >= 2");
    }
    if (!(edge > 0.0)) {
        throw std::invalid_argument("edge must be positive");
    }
    Rng rng(seed);
    const std::size_t first = (n + 1) / 2;
    std::vector<double> coords(n * 3, 0.0);
    std::vector<int> labels(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform() * edge;
        const double v = rng.uniform() * edge;
        double* p = coords.data() + i * 3;
        if (i < first) {
            p[0] = -u;
            p[1] = -v;
            p[2] = 0.0;
        } else {
            square_one_point(u, v, p);
            labels[i] = 1;
        }
    }
    return {Dataset(3, std::move(coords)), Partition(std::move(labels), 2)};
}

bool in_square(int square, std::span<const double> p, double edge, double tol) {
    if (p.size() != 3) {
        return false;
    }
    if (square == 0) {
        return std::abs(p[2]) <= tol && p[0] >= -edge - tol && p[0] <= tol && p[1] >= -edge - tol && p[1] <= tol;
    }
    if (square == 1) {
        // invert the parametrization: u + v = x + y, v - u = sqrt(2) z, and the plane x = y
        if (std::abs(p[0] - p[1]) > tol) {
            return false;
        }
        const double sum = p[0] + p[1];
        const double diff = p[2] / kInvSqrt2;
        const double u = 0.5 * (sum - diff);
        const double v = 0.5 * (sum + diff);
        return u >= -tol && u <= edge + tol && v >= -tol && v <= edge + tol;
    }
    return false;
}

LabeledDataset gaussian_blobs(int k, std::size_t n_per, std::size_t dim, double spread, double separation,
                              std::uint64_t seed) {
    if (k <= 0 || n_per == 0 || dim == 0) {
        throw std::invalid_argument("gaussian_blobs needs k, n_per and dim positive");
    }
    if (!(spread > 0.0) || !(separation > 0.0)) {
        throw std::invalid_argument("spread and separation must be positive");
    }
    Rng rng(seed);
    const auto kk = static_cast<std::size_t>(k);
    std::vector<Vector> centers;
    double side = separation * std::max(1.0, std::pow(static_cast<double>(kk), 1.0 / static_cast<double>(dim))) * 2.0;
    std::size_t attempts = 0;
    while (centers.size() < kk) {
        Vector c(dim);
        for (double& x : c) {
            x = rng.uniform(0.0, side);
        }
        const bool far = std::all_of(centers.begin(), centers.end(),
                                     [&](const Vector& o) { return squared_distance(c, o) >= separation * separation; });
        if (far) {
            centers.push_back(std::move(c));
        }
        if (++attempts % 10000 == 0) {
            side *= 1.5;
        }
    }
    std::vector<double> coords;
    coords.reserve(kk * n_per * dim);
    std::vector<int> labels;
    labels.reserve(kk * n_per);
    for (std::size_t c = 0; c < kk; ++c) {
        for (std::size_t i = 0; i < n_per; ++i) {
            for (std::size_t d = 0; d < dim; ++d) {
                coords.push_back(centers[c][d] + spread * rng.normal());
            }
            labels.push_back(static_cast<int>(c));
        }
    }
    return {Dataset(dim, std::move(coords)), Partition(std::move(labels), k)};
}

LabeledDataset generate(const GenSpec& spec) {
    switch (spec.kind) {
    case GenKind::two_squares_3d:
        return two_squares_3d(spec.n, spec.edge, spec.seed);
    case GenKind::gaussian_blobs:
        return gaussian_blobs(spec.k, spec.n_per, spec.dim, spec.spread, spec.separation, spec.seed);
    }
    throw std::invalid_argument("unknown generator kind");
}

IndexSet ball_subset(const Dataset& dataset, const Partition& partition, int cluster, Index seed_point,
                     std::size_t count) {
    require_cluster_members(partition, cluster);
    IndexSet members = partition.members(cluster);
    if (seed_point >= partition.size() || partition.label(seed_point) != cluster) {
        throw std::invalid_argument("ball seed point must belong to the cluster");
    }
    if (count == 0 || count > members.size()) {
        throw std::invalid_argument("subset size must lie in [1, |cluster|]");
    }
    const auto origin = dataset.point(seed_point);
    std::vector<std::pair<double, Index>> ranked;
    ranked.reserve(members.size());
    for (Index i : members) {
        ranked.emplace_back(squared_distance(dataset.point(i), origin), i);
    }
    std::sort(ranked.begin(), ranked.end());
    IndexSet out;
    out.reserve(count);
    for (std::size_t r = 0; r < count; ++r) {
        out.push_back(ranked[r].second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

IndexSet sample_subset_count(const Dataset& dataset, const Partition& partition, int cluster, std::size_t count,
                             SubsetMode mode, std::uint64_t seed) {
    require_cluster_members(partition, cluster);
    if (partition.size() != dataset.size()) {
        throw std::invalid_argument("partition length does not match dataset size");
    }
    IndexSet members = partition.members(cluster);
    if (members.empty()) {
        throw std::invalid_argument("cluster " + std::to_string(cluster) + " is empty");
    }
    if (count == 0 || count > members.size()) {
        throw std::invalid_argument("subset size must lie in [1, |cluster|]");
    }
    Rng rng(seed);
    if (mode == SubsetMode::ball) {
        const Index center = members[rng.below(members.size())];
        return ball_subset(dataset, partition, cluster, center, count);
    }
    // partial Fisher-Yates
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.below(members.size() - i);
        std::swap(members[i], members[j]);
    }
    members.resize(count);
    std::sort(members.begin(), members.end());
    return members;
}

IndexSet sample_subset(const Dataset& dataset, const Partition& partition, int cluster, double fraction,
                       SubsetMode mode, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("fraction must lie in (0, 1]");
    }
    require_cluster_members(partition, cluster);
    const double size = static_cast<double>(partition.members(cluster).size());
    // guard ceil against 1/|C| * |C| landing a hair above 1
    const auto count = static_cast<std::size_t>(std::ceil(fraction * size - 1e-9));
    return sample_subset_count(dataset, partition, cluster, std::max<std::size_t>(count, 1), mode, seed);
}

} // namespace centric
