#include "centric/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "centric/parallel.hpp"
#include "centric/random.hpp"

namespace centric {

namespace {

/// Per-cluster member lists for a partition already known to be valid.
std::vector<IndexSet> group_members(const Partition& partition) {
    std::vector<IndexSet> groups(static_cast<std::size_t>(partition.k()));
    for (Index i = 0; i < partition.size(); ++i) {
        groups[static_cast<std::size_t>(partition.label(i))].push_back(i);
    }
    return groups;
}

struct PairSums {
    double unordered = 0.0;
    double ordered = 0.0;
};

PairSums pairwise_sums(const Dataset& dataset, const Partition& partition) {
    require_valid_partition(dataset, partition);
    PairSums total;
    for (const auto& members : group_members(partition)) {
        double unordered = 0.0;
        double ordered = 0.0;
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = 0; b < members.size(); ++b) {
                const double d2 = squared_distance(dataset.point(members[a]), dataset.point(members[b]));
                ordered += d2;
                if (a < b) {
                    unordered += d2;
                }
            }
        }
        const double nj = static_cast<double>(members.size());
        total.unordered += unordered / nj;
        total.ordered += ordered / (2.0 * nj);
    }
    return total;
}

void check_k(const Dataset& dataset, int k) {
    if (k <= 0) {
        throw std::invalid_argument("k must be positive");
    }
    if (static_cast<std::size_t>(k) > dataset.size()) {
        throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the number of points " +
                                    std::to_string(dataset.size()));
    }
}

class LloydState {
public:
    LloydState(const Dataset& dataset, int k)
        : data_(dataset), k_(static_cast<std::size_t>(k)), dim_(dataset.dim()),
          centers_(k_ * dim_, 0.0), labels_(dataset.size(), 0), counts_(k_, 0) {}

    std::span<const double> center(std::size_t c) const { return {centers_.data() + c * dim_, dim_}; }

    void set_center(std::size_t c, std::span<const double> p) {
        std::copy(p.begin(), p.end(), centers_.begin() + static_cast<std::ptrdiff_t>(c * dim_));
    }

    void init_kmeanspp(Rng& rng) {
        const std::size_t n = data_.size();
        std::vector<double> mindist(n, std::numeric_limits<double>::infinity());
        std::vector<char> chosen(n, 0);
        std::size_t first = rng.below(n);
        set_center(0, data_.point(first));
        chosen[first] = 1;
        for (std::size_t c = 1; c < k_; ++c) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                mindist[i] = std::min(mindist[i], squared_distance(data_.point(i), center(c - 1)));
                total += mindist[i];
            }
            std::size_t pick = n;
            if (total > 0.0) {
                const double target = rng.uniform() * total;
                double running = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    running += mindist[i];
                    if (mindist[i] > 0.0 && running > target) {
                        pick = i;
                        break;
                    }
                }
                if (pick == n) {
                    // target landed in the rounding slack at the end
                    for (std::size_t i = n; i-- > 0;) {
                        if (mindist[i] > 0.0) {
                            pick = i;
                            break;
                        }
                    }
                }
            } else {
                // every point coincides with a chosen center
                std::vector<std::size_t> free;
                for (std::size_t i = 0; i < n; ++i) {
                    if (!chosen[i]) {
                        free.push_back(i);
                    }
                }
                pick = free[rng.below(free.size())];
            }
            chosen[pick] = 1;
            set_center(c, data_.point(pick));
        }
        assign();
    }

    void init_uniform_assignment(Rng& rng) {
        for (auto& l : labels_) {
            l = static_cast<int>(rng.below(k_));
        }
        recount();
        recenter();
    }

    /// Nearest-center assignment, lowest center index on ties. Returns true if any label changed.
    bool assign() {
        bool changed = false;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            const auto p = data_.point(i);
            int best = 0;
            double best_d = squared_distance(p, center(0));
            for (std::size_t c = 1; c < k_; ++c) {
                const double d = squared_distance(p, center(c));
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            if (labels_[i] != best) {
                labels_[i] = best;
                changed = true;
            }
        }
        recount();
        return changed;
    }

    /// Moves the point farthest from its centroid (among clusters with more
    /// than one member) into each empty cluster, then recomputes centers.
    /// Returns true if a repair happened.
    bool repair_empty() {
        bool repaired = false;
        for (std::size_t c = 0; c < k_; ++c) {
            if (counts_[c] != 0) {
                continue;
            }
            recenter();
            std::size_t far = data_.size();
            double far_d = -1.0;
            for (std::size_t i = 0; i < data_.size(); ++i) {
                const auto owner = static_cast<std::size_t>(labels_[i]);
                if (counts_[owner] <= 1) {
                    continue;
                }
                const double d = squared_distance(data_.point(i), center(owner));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --counts_[static_cast<std::size_t>(labels_[far])];
            labels_[far] = static_cast<int>(c);
            ++counts_[c];
            repaired = true;
        }
        return repaired;
    }

    void recenter() {
        std::fill(centers_.begin(), centers_.end(), 0.0);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            const auto p = data_.point(i);
            double* dst = centers_.data() + static_cast<std::size_t>(labels_[i]) * dim_;
            for (std::size_t d = 0; d < dim_; ++d) {
                dst[d] += p[d];
            }
        }
        for (std::size_t c = 0; c < k_; ++c) {
            if (counts_[c] == 0) {
                continue;
            }
            const double inv = static_cast<double>(counts_[c]);
            for (std::size_t d = 0; d < dim_; ++d) {
                centers_[c * dim_ + d] /= inv;
            }
        }
    }

    double current_cost() const {
        double total = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            total += squared_distance(data_.point(i), center(static_cast<std::size_t>(labels_[i])));
        }
        return total;
    }

    int k() const { return static_cast<int>(k_); }
    const std::vector<int>& labels() const { return labels_; }

private:
    void recount() {
        std::fill(counts_.begin(), counts_.end(), 0);
        for (int l : labels_) {
            ++counts_[static_cast<std::size_t>(l)];
        }
    }

    const Dataset& data_;
    std::size_t k_;
    std::size_t dim_;
    std::vector<double> centers_;
    std::vector<int> labels_;
    std::vector<std::size_t> counts_;
};

/// Hungarian algorithm (shortest augmenting path form) on a square cost matrix.
/// Returns the column assigned to each row.
std::vector<std::size_t> hungarian_min(const std::vector<std::vector<double>>& cost) {
    const std::size_t m = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
    for (std::size_t row = 1; row <= m; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[col0] = 1;
            const std::size_t r = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t col = 1; col <= m; ++col) {
                if (used[col]) {
                    continue;
                }
                const double cur = cost[r - 1][col - 1] - u[r] - v[col];
                if (cur < minv[col]) {
                    minv[col] = cur;
                    way[col] = col0;
                }
                if (minv[col] < delta) {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for (std::size_t col = 0; col <= m; ++col) {
                if (used[col]) {
                    u[match[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::size_t> assignment(m, 0);
    for (std::size_t col = 1; col <= m; ++col) {
        assignment[match[col] - 1] = col - 1;
    }
    return assignment;
}

} // namespace

double cost(const Dataset& dataset, const Partition& partition) {
    require_valid_partition(dataset, partition);
    return cost_of_labels(dataset, partition.labels(), partition.k());
}

double cost_of_labels(const Dataset& dataset, std::span<const int> labels, int k) {
    if (labels.size() != dataset.size()) {
        throw std::invalid_argument("label count does not match dataset size");
    }
    const std::size_t dim = dataset.dim();
    const auto kk = static_cast<std::size_t>(k);
    std::vector<double> sums(kk * dim, 0.0);
    std::vector<std::size_t> counts(kk, 0);
    for (Index i = 0; i < dataset.size(); ++i) {
        const int l = labels[i];
        if (l < 0 || l >= k) {
            throw std::invalid_argument("label out of range");
        }
        const auto p = dataset.point(i);
        for (std::size_t d = 0; d < dim; ++d) {
            sums[static_cast<std::size_t>(l) * dim + d] += p[d];
        }
        ++counts[static_cast<std::size_t>(l)];
    }
    for (std::size_t c = 0; c < kk; ++c) {
        if (counts[c] == 0) {
            continue;
        }
        for (std::size_t d = 0; d < dim; ++d) {
            sums[c * dim + d] /= static_cast<double>(counts[c]);
        }
    }
    double total = 0.0;
    for (Index i = 0; i < dataset.size(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        total += squared_distance(dataset.point(i), std::span<const double>(sums.data() + c * dim, dim));
    }
    return total;
}

double cost_pairwise_unordered(const Dataset& dataset, const Partition& partition) {
    return pairwise_sums(dataset, partition).unordered;
}

double cost_pairwise_ordered(const Dataset& dataset, const Partition& partition) {
    return pairwise_sums(dataset, partition).ordered;
}

double cost_pairwise(const Dataset& dataset, const Partition& partition) {
    const PairSums sums = pairwise_sums(dataset, partition);
    const double scale = std::max({1.0, std::abs(sums.unordered), std::abs(sums.ordered)});
    if (std::abs(sums.unordered - sums.ordered) > 1e-9 * scale) {
        throw std::logic_error("pairwise cost forms disagree");
    }
    return sums.unordered;
}

LloydRun lloyd_run(const Dataset& dataset, const LloydConfig& config, int restart) {
    check_k(dataset, config.k);
    if (config.max_iters <= 0) {
        throw std::invalid_argument("max_iters must be positive");
    }
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(restart)));
    LloydState state(dataset, config.k);
    if (config.init == InitMethod::kmeans_plus_plus) {
        state.init_kmeanspp(rng);
    } else {
        state.init_uniform_assignment(rng);
    }
    state.repair_empty();
    state.recenter();

    LloydRun run;
    double previous = state.current_cost();
    run.cost_trace.push_back(previous);
    for (int iter = 1; iter <= config.max_iters; ++iter) {
        const bool changed = state.assign();
        const bool repaired = state.repair_empty();
        state.recenter();
        const double current = state.current_cost();
        run.cost_trace.push_back(current);
        run.iterations = iter;
        if (!changed && !repaired) {
            run.converged = true;
            break;
        }
        if (previous - current <= config.tol * previous) {
            run.converged = true;
            break;
        }
        previous = current;
    }
    run.partition = Partition(state.labels(), state.k()).canonical();
    run.cost = cost(dataset, run.partition);
    return run;
}

ClusteringResult lloyd(const Dataset& dataset, const LloydConfig& config) {
    check_k(dataset, config.k);
    if (config.restarts <= 0) {
        throw std::invalid_argument("restarts must be positive");
    }
    std::vector<LloydRun> runs(static_cast<std::size_t>(config.restarts));
    parallel_for(runs.size(), worker_count(config.threads),
                 [&](std::size_t r) { runs[r] = lloyd_run(dataset, config, static_cast<int>(r)); });

    std::size_t best = 0;
    ClusteringResult result;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        result.restart_costs.push_back(runs[r].cost);
        if (runs[r].cost < runs[best].cost) {
            best = r;
        }
    }
    result.partition = std::move(runs[best].partition);
    result.cost = runs[best].cost;
    result.iterations = runs[best].iterations;
    result.converged = runs[best].converged;
    return result;
}

double stirling2(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0.0;
    }
    // row-by-row recurrence S(i, j) = j S(i-1, j) + S(i-1, j-1)
    std::vector<double> row(k + 1, 0.0);
    row[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) {
            row[j] = static_cast<double>(j) * row[j] + row[j - 1];
        }
        row[0] = 0.0;
    }
    return row[k];
}

namespace {

class IdealSearch {
public:
    IdealSearch(const Dataset& dataset, int k)
        : n_(dataset.size()), dim_(dataset.dim()), k_(static_cast<std::size_t>(k)),
          points_(dataset.coords_copy()), sums_(k_ * dim_, 0.0), sumsq_(k_, 0.0), counts_(k_, 0),
          labels_(n_, 0) {
        // Centering keeps the uncentered sum-of-squares formula well conditioned.
        const Vector mean = centroid(dataset, all_indices());
        norms_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            double sq = 0.0;
            for (std::size_t d = 0; d < dim_; ++d) {
                double& x = points_[i * dim_ + d];
                x -= mean[d];
                sq += x * x;
            }
            norms_[i] = sq;
        }
    }

    void run() { descend(0, 0); }

    double best_cost = std::numeric_limits<double>::infinity();
    double second_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_labels;

private:
    IndexSet all_indices() const {
        IndexSet all(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            all[i] = i;
        }
        return all;
    }

    void add(std::size_t i, std::size_t c, double sign) {
        for (std::size_t d = 0; d < dim_; ++d) {
            sums_[c * dim_ + d] += sign * points_[i * dim_ + d];
        }
        sumsq_[c] += sign * norms_[i];
        counts_[c] = sign > 0 ? counts_[c] + 1 : counts_[c] - 1;
    }

    void evaluate() {
        double total = 0.0;
        for (std::size_t c = 0; c < k_; ++c) {
            double s2 = 0.0;
            for (std::size_t d = 0; d < dim_; ++d) {
                s2 += sums_[c * dim_ + d] * sums_[c * dim_ + d];
            }
            total += sumsq_[c] - s2 / static_cast<double>(counts_[c]);
        }
        if (total < best_cost) {
            second_cost = best_cost;
            best_cost = total;
            best_labels = labels_;
        } else if (total < second_cost) {
            second_cost = total;
        }
    }

    // Restricted growth strings: labels_[i] <= max(labels_[0..i)) + 1, so every
    // set partition is visited once, in lexicographic order of its labels.
    void descend(std::size_t i, std::size_t used) {
        if (i == n_) {
            if (used == k_) {
                evaluate();
            }
            return;
        }
        if (used + (n_ - i) < k_) {
            return;
        }
        const std::size_t top = std::min(used, k_ - 1);
        for (std::size_t c = 0; c <= top; ++c) {
            labels_[i] = static_cast<int>(c);
            add(i, c, 1.0);
            descend(i + 1, c == used ? used + 1 : used);
            add(i, c, -1.0);
        }
    }

    std::size_t n_, dim_, k_;
    std::vector<double> points_;
    std::vector<double> norms_;
    std::vector<double> sums_;
    std::vector<double> sumsq_;
    std::vector<std::size_t> counts_;
    std::vector<int> labels_;
};

} // namespace

ClusteringResult kmeans_ideal(const Dataset& dataset, int k, const IdealOptions& options) {
    check_k(dataset, k);
    const double count = stirling2(dataset.size(), static_cast<std::size_t>(k));
    if (count > options.max_partitions) {
        throw OracleBudgetError("instance too large for ideal oracle (" + std::to_string(dataset.size()) +
                                " points, k = " + std::to_string(k) + ")");
    }
    IdealSearch search(dataset, k);
    search.run();

    ClusteringResult result;
    result.partition = Partition(search.best_labels, k);
    result.cost = cost(dataset, result.partition);
    result.iterations = 0;
    result.converged = true;
    result.restart_costs = {result.cost};
    result.optimality_gap = std::isinf(search.second_cost)
                                ? std::numeric_limits<double>::infinity()
                                : std::max(0.0, search.second_cost - search.best_cost);
    return result;
}

std::size_t clustering_error(const Partition& reference, const Partition& candidate) {
    if (reference.size() != candidate.size()) {
        throw std::invalid_argument("partitions have different lengths");
    }
    const auto check_labels = [](const Partition& p) {
        for (int l : p.labels()) {
            if (l < 0 || l >= p.k()) {
                throw std::invalid_argument("label out of range");
            }
        }
    };
    check_labels(reference);
    check_labels(candidate);
    const auto m = static_cast<std::size_t>(std::max({reference.k(), candidate.k(), 1}));
    std::vector<std::vector<double>> agreement(m, std::vector<double>(m, 0.0));
    for (Index i = 0; i < reference.size(); ++i) {
        agreement[static_cast<std::size_t>(reference.label(i))][static_cast<std::size_t>(candidate.label(i))] += 1.0;
    }
    std::vector<std::vector<double>> loss(m, std::vector<double>(m, 0.0));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            loss[r][c] = -agreement[r][c];
        }
    }
    const auto assignment = hungarian_min(loss);
    std::size_t matched = 0;
    for (std::size_t r = 0; r < m; ++r) {
        matched += static_cast<std::size_t>(agreement[r][assignment[r]]);
    }
    return reference.size() - matched;
}

} // namespace centric
