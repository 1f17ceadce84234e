#include "centric/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace centric {

Dataset::Dataset(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) {
        throw std::invalid_argument("dataset dimension must be positive");
    }
    if (coords_.empty() || coords_.size() % dim_ != 0) {
        throw std::invalid_argument("dataset needs at least one point and a whole number of rows");
    }
    for (double c : coords_) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("dataset coordinates must be finite");
        }
    }
}

Dataset Dataset::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("dataset needs at least one point");
    }
    const std::size_t dim = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (const auto& row : rows) {
        if (row.size() != dim) {
            throw std::invalid_argument("all points must have the same dimension");
        }
        coords.insert(coords.end(), row.begin(), row.end());
    }
    return Dataset(dim, std::move(coords));
}

Partition Partition::from_labels(std::vector<int> labels) {
    int k = 0;
    for (int l : labels) {
        k = std::max(k, l + 1);
    }
    return Partition(std::move(labels), k);
}

IndexSet Partition::members(int cluster) const {
    IndexSet out;
    for (Index i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == cluster) {
            out.push_back(i);
        }
    }
    return out;
}

Partition Partition::canonical() const {
    std::vector<int> remap(static_cast<std::size_t>(std::max(k_, 0)), -1);
    std::vector<int> out(labels_.size());
    int next = 0;
    for (Index i = 0; i < labels_.size(); ++i) {
        int& slot = remap.at(static_cast<std::size_t>(labels_[i]));
        if (slot < 0) {
            slot = next++;
        }
        out[i] = slot;
    }
    return Partition(std::move(out), k_);
}

Vector centroid(const Dataset& dataset, std::span<const Index> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("empty point set has no centroid");
    }
    Vector mean(dataset.dim(), 0.0);
    for (Index i : subset) {
        if (i >= dataset.size()) {
            throw std::out_of_range("point index " + std::to_string(i) + " out of range");
        }
        const auto p = dataset.point(i);
        for (std::size_t c = 0; c < mean.size(); ++c) {
            mean[c] += p[c];
        }
    }
    const double inv = static_cast<double>(subset.size());
    for (double& m : mean) {
        m /= inv;
    }
    return mean;
}

std::vector<ClusterStats> cluster_stats(const Dataset& dataset, const Partition& partition) {
    require_valid_partition(dataset, partition);
    std::vector<ClusterStats> stats;
    stats.reserve(static_cast<std::size_t>(partition.k()));
    for (int c = 0; c < partition.k(); ++c) {
        const IndexSet members = partition.members(c);
        ClusterStats s;
        s.centroid = centroid(dataset, members);
        s.size = members.size();
        for (Index i : members) {
            s.within_ss += squared_distance(dataset.point(i), s.centroid);
        }
        stats.push_back(std::move(s));
    }
    return stats;
}

std::vector<std::string> validate_partition(const Partition& partition) {
    std::vector<std::string> violations;
    if (partition.k() <= 0) {
        violations.emplace_back("k must be positive");
        return violations;
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(partition.k()), 0);
    for (Index i = 0; i < partition.size(); ++i) {
        const int l = partition.label(i);
        if (l < 0 || l >= partition.k()) {
            violations.push_back("label out of range at point " + std::to_string(i) + ": " + std::to_string(l));
        } else {
            ++counts[static_cast<std::size_t>(l)];
        }
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) {
            violations.push_back("cluster " + std::to_string(c) + " empty");
        }
    }
    return violations;
}

std::vector<std::string> validate_partition(const Dataset& dataset, const Partition& partition) {
    std::vector<std::string> violations;
    if (partition.size() != dataset.size()) {
        violations.push_back("label count " + std::to_string(partition.size()) + " does not match dataset size " +
                             std::to_string(dataset.size()));
    }
    auto rest = validate_partition(partition);
    violations.insert(violations.end(), rest.begin(), rest.end());
    return violations;
}

void require_valid_partition(const Dataset& dataset, const Partition& partition) {
    const auto violations = validate_partition(dataset, partition);
    if (violations.empty()) {
        return;
    }
    std::string message = "invalid partition:";
    for (const auto& v : violations) {
        message += " " + v + ";";
    }
    throw std::invalid_argument(message);
}

void require_index_set(const Dataset& dataset, std::span<const Index> subset) {
    std::vector<Index> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= dataset.size()) {
            throw std::out_of_range("point index " + std::to_string(sorted[i]) + " out of range");
        }
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw std::invalid_argument("duplicate index " + std::to_string(sorted[i]) + " in subset");
        }
    }
}

} // namespace centric
