#include "centric/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace centric {

namespace {

IndexSet sorted_subset(const Dataset& dataset, std::span<const Index> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("subset must not be empty");
    }
    require_index_set(dataset, subset);
    IndexSet sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

void require_cluster(const Dataset& dataset, const Partition& partition, int cluster) {
    require_valid_partition(dataset, partition);
    if (cluster < 0 || cluster >= partition.k()) {
        throw std::invalid_argument("cluster index " + std::to_string(cluster) + " out of range");
    }
}

template <class Violates>
GammaCheck check_pairs(std::size_t n, const Partition& partition, std::size_t max_reported, Violates&& distances) {
    if (partition.size() != n) {
        throw std::invalid_argument("partition length does not match the number of points");
    }
    GammaCheck check;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const bool same = partition.label(i) == partition.label(j);
            const auto [before, after, bad] = distances(i, j, same);
            if (bad) {
                ++check.violation_count;
                if (check.violations.size() < max_reported) {
                    check.violations.push_back({i, j, same, before, after});
                }
            }
        }
    }
    check.valid = check.violation_count == 0;
    return check;
}

struct PairVerdict {
    double before;
    double after;
    bool bad;
};

PairVerdict judge(double before, double after, bool same, double tol) {
    const bool bad = same ? after > before + tol : after < before - tol;
    return {before, after, bad};
}

} // namespace

void require_contraction_factor(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in (0, 1], got " + std::to_string(lambda));
    }
}

Dataset centric_set_transform(const Dataset& dataset, std::span<const Index> subset, double lambda) {
    require_contraction_factor(lambda);
    const IndexSet members = sorted_subset(dataset, subset);
    if (lambda == 1.0) {
        return dataset;
    }
    const Vector mu = centroid(dataset, members);
    std::vector<double> coords = dataset.coords_copy();
    const std::size_t dim = dataset.dim();
    for (Index i : members) {
        for (std::size_t d = 0; d < dim; ++d) {
            double& x = coords[i * dim + d];
            x = mu[d] + lambda * (x - mu[d]);
        }
    }
    return Dataset(dim, std::move(coords));
}

Dataset gamma_star(const Dataset& dataset, const Partition& partition, int cluster, double lambda) {
    require_cluster(dataset, partition, cluster);
    return centric_set_transform(dataset, partition.members(cluster), lambda);
}

GammaPlusPlusResult gamma_plus_plus(const Dataset& dataset, const Partition& partition, int cluster,
                                    std::span<const Index> subset, double lambda) {
    require_cluster(dataset, partition, cluster);
    require_contraction_factor(lambda);
    const IndexSet members = sorted_subset(dataset, subset);
    for (Index i : members) {
        if (partition.label(i) != cluster) {
            throw std::invalid_argument("Γ⁺⁺ subset must lie within one cluster");
        }
    }
    return {centric_set_transform(dataset, members, lambda), partition};
}

DistanceMatrix distance_matrix(const Dataset& dataset) {
    DistanceMatrix d(dataset.size());
    for (Index i = 0; i < dataset.size(); ++i) {
        for (Index j = i + 1; j < dataset.size(); ++j) {
            d.set(i, j, std::sqrt(squared_distance(dataset.point(i), dataset.point(j))));
        }
    }
    return d;
}

GammaCheck is_kleinberg_gamma_transform(const DistanceMatrix& d, const DistanceMatrix& d_prime,
                                        const Partition& partition, double tol, std::size_t max_reported) {
    if (d.size() != d_prime.size()) {
        throw std::invalid_argument("distance matrices differ in size");
    }
    return check_pairs(d.size(), partition, max_reported,
                       [&](Index i, Index j, bool same) { return judge(d(i, j), d_prime(i, j), same, tol); });
}

GammaCheck is_kleinberg_gamma_transform(const Dataset& before, const Dataset& after, const Partition& partition,
                                        double tol, std::size_t max_reported) {
    if (before.size() != after.size() || before.dim() != after.dim()) {
        throw std::invalid_argument("datasets differ in shape");
    }
    return check_pairs(before.size(), partition, max_reported, [&](Index i, Index j, bool same) {
        const double b = std::sqrt(squared_distance(before.point(i), before.point(j)));
        const double a = std::sqrt(squared_distance(after.point(i), after.point(j)));
        return judge(b, a, same, tol);
    });
}

AngularResult angular_transform(const Dataset& dataset, std::span<const double> axis, double factor,
                                std::span<const double> center, std::span<const Index> subset) {
    const std::size_t dim = dataset.dim();
    if (axis.size() != dim || center.size() != dim) {
        throw std::invalid_argument("axis and center must match the dataset dimension");
    }
    double axis_norm = 0.0;
    for (double a : axis) {
        axis_norm += a * a;
    }
    axis_norm = std::sqrt(axis_norm);
    if (axis_norm == 0.0) {
        throw std::invalid_argument("angular transform axis must be non-zero");
    }
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw std::invalid_argument("angular factor must be positive");
    }

    IndexSet targets;
    if (subset.empty()) {
        targets.resize(dataset.size());
        for (Index i = 0; i < targets.size(); ++i) {
            targets[i] = i;
        }
    } else {
        targets = sorted_subset(dataset, subset);
    }

    AngularResult result{dataset, 0};
    if (factor == 1.0) {
        return result;
    }

    Vector unit(axis.begin(), axis.end());
    for (double& a : unit) {
        a /= axis_norm;
    }
    const double cap = std::numbers::pi - kAngleClampEpsilon;
    std::vector<double> coords = dataset.coords_copy();
    Vector v(dim), perp(dim);
    for (Index i : targets) {
        double along = 0.0;
        double norm2 = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            v[d] = coords[i * dim + d] - center[d];
            along += v[d] * unit[d];
            norm2 += v[d] * v[d];
        }
        double perp_norm = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            perp[d] = v[d] - along * unit[d];
            perp_norm += perp[d] * perp[d];
        }
        perp_norm = std::sqrt(perp_norm);
        // Rounding leaves a residue of order 1e-16 * |v| for points on the axis.
        if (perp_norm <= 1e-14 * std::sqrt(norm2)) {
            continue;
        }
        const double side = along < 0.0 ? -1.0 : 1.0;
        const double theta = std::atan2(perp_norm, side * along);
        double scaled = factor * theta;
        if (scaled > cap) {
            scaled = cap;
            ++result.clamped;
        }
        const double radius = std::sqrt(norm2);
        const double c = radius * std::cos(scaled) * side;
        const double s = radius * std::sin(scaled) / perp_norm;
        for (std::size_t d = 0; d < dim; ++d) {
            coords[i * dim + d] = center[d] + c * unit[d] + s * perp[d];
        }
    }
    result.dataset = Dataset(dim, std::move(coords));
    return result;
}

AppliedTransform apply_transform(const Dataset& dataset, const Partition* labels, const TransformSpec& spec) {
    const auto need_labels = [&]() -> const Partition& {
        if (labels == nullptr) {
            throw std::invalid_argument("this transform needs cluster labels");
        }
        return *labels;
    };
    const auto need_cluster = [&]() {
        if (!spec.cluster) {
            throw std::invalid_argument("this transform needs a cluster index");
        }
        return *spec.cluster;
    };

    switch (spec.kind) {
    case TransformKind::centric_set:
        return {centric_set_transform(dataset, spec.subset, spec.lambda), 0};
    case TransformKind::gamma_star:
        return {gamma_star(dataset, need_labels(), need_cluster(), spec.lambda), 0};
    case TransformKind::gamma_plus_plus:
        return {gamma_plus_plus(dataset, need_labels(), need_cluster(), spec.subset, spec.lambda).dataset, 0};
    case TransformKind::angular: {
        Vector center = spec.center.empty() ? Vector(dataset.dim(), 0.0) : spec.center;
        IndexSet targets = spec.subset;
        if (targets.empty() && spec.cluster) {
            const Partition& p = need_labels();
            require_cluster(dataset, p, *spec.cluster);
            targets = p.members(*spec.cluster);
        }
        auto out = angular_transform(dataset, spec.axis, spec.factor, center, targets);
        return {std::move(out.dataset), out.clamped};
    }
    }
    throw std::invalid_argument("unknown transform kind");
}

} // namespace centric
