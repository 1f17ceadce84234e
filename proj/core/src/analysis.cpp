#include "centric/analysis.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "centric/random.hpp"
#include "centric/transforms.hpp"

namespace centric {

namespace {

ReferenceLayout layout_of(const Partition& reference, std::span<const Index> P) {
    if (const auto problems = validate_partition(reference); !problems.empty()) {
        throw std::invalid_argument("invalid reference partition: " + problems.front());
    }
    if (P.empty()) {
        throw std::invalid_argument("P must not be empty");
    }
    ReferenceLayout layout;
    layout.P.assign(P.begin(), P.end());
    std::sort(layout.P.begin(), layout.P.end());
    for (std::size_t i = 0; i < layout.P.size(); ++i) {
        if (layout.P[i] >= reference.size()) {
            throw std::out_of_range("P index out of range");
        }
        if (i > 0 && layout.P[i] == layout.P[i - 1]) {
            throw std::invalid_argument("duplicate index in P");
        }
    }
    layout.t_cluster = reference.label(layout.P.front());
    for (Index i : layout.P) {
        if (reference.label(i) != layout.t_cluster) {
            throw std::invalid_argument("P spans more than one cluster of the reference partition");
        }
    }
    std::vector<char> in_p(reference.size(), 0);
    for (Index i : layout.P) {
        in_p[i] = 1;
    }
    for (Index i = 0; i < reference.size(); ++i) {
        if (reference.label(i) == layout.t_cluster && !in_p[i]) {
            layout.Y.push_back(i);
        }
    }
    for (int c = 0; c < reference.k(); ++c) {
        if (c != layout.t_cluster) {
            layout.z_clusters.push_back(c);
            layout.Z.push_back(reference.members(c));
        }
    }
    return layout;
}

void require_split(const ReferenceLayout& layout, const AlternativeSplit& split, std::size_t n) {
    const auto problems = validate_split(layout, split, n);
    if (!problems.empty()) {
        throw std::invalid_argument("inconsistent split: " + problems.front());
    }
}

/// Every point of P moved to mu(P) + lambda (x - mu(P)); lambda = 0 allowed.
Dataset contract_p(const Dataset& dataset, const IndexSet& P, double lambda) {
    const Vector mu = centroid(dataset, P);
    std::vector<double> coords = dataset.coords_copy();
    const std::size_t dim = dataset.dim();
    for (Index i : P) {
        for (std::size_t d = 0; d < dim; ++d) {
            double& x = coords[i * dim + d];
            x = mu[d] + lambda * (x - mu[d]);
        }
    }
    return Dataset(dim, std::move(coords));
}

double dot_diff(std::span<const double> v, std::span<const double> a, std::span<const double> b) {
    double total = 0.0;
    for (std::size_t d = 0; d < v.size(); ++d) {
        total += v[d] * (a[d] - b[d]);
    }
    return total;
}

struct Piece {
    std::size_t size = 0;
    Vector mu;
    double ss = 0.0;
};

Piece piece(const Dataset& dataset, const IndexSet& members) {
    Piece p;
    p.size = members.size();
    if (!members.empty()) {
        p.mu = centroid(dataset, members);
        p.ss = subset_ss(dataset, members);
    }
    return p;
}

using TransformStep = std::function<Dataset(const Dataset&, const Partition&)>;

PreservationVerdict check_preservation(const Dataset& dataset, const ClusteringResult& ideal_before,
                                       std::size_t subset_size, double lambda, const TransformStep& step,
                                       const IdealOptions& options) {
    if (!ideal_before.optimality_gap) {
        throw std::invalid_argument("pre-transform result must come from kmeans_ideal");
    }
    PreservationVerdict verdict;
    verdict.lambda = lambda;
    verdict.subset_size = subset_size;
    verdict.before = ideal_before.partition;
    verdict.pre_cost = ideal_before.cost;
    verdict.gap_pre = *ideal_before.optimality_gap;

    const Dataset moved = step(dataset, ideal_before.partition);
    const ClusteringResult after = kmeans_ideal(moved, ideal_before.partition.k(), options);
    verdict.after = after.partition;
    verdict.post_cost = after.cost;
    verdict.gap_post = *after.optimality_gap;

    if (verdict.gap_pre < kTieGap || verdict.gap_post < kTieGap) {
        verdict.verdict = Verdict::tie_skipped;
    } else if (clustering_error(verdict.before, verdict.after) == 0) {
        verdict.verdict = Verdict::preserved;
    } else {
        verdict.verdict = Verdict::violated;
    }
    return verdict;
}

} // namespace

AlternativeSplit AlternativeSplit::from_labels(const Partition& reference, std::span<const Index> P,
                                               const Partition& alternative) {
    const ReferenceLayout layout = layout_of(reference, P);
    if (alternative.size() != reference.size()) {
        throw std::invalid_argument("alternative partition length differs from reference");
    }
    const auto k = static_cast<std::size_t>(alternative.k());
    AlternativeSplit split;
    split.A.assign(k, {});
    split.B.assign(k, {});
    split.C.assign(k, std::vector<IndexSet>(layout.Z.size()));
    const auto slot = [&](Index i) {
        const int l = alternative.label(i);
        if (l < 0 || static_cast<std::size_t>(l) >= k) {
            throw std::invalid_argument("alternative label out of range");
        }
        return static_cast<std::size_t>(l);
    };
    for (Index i : layout.P) {
        split.A[slot(i)].push_back(i);
    }
    for (Index i : layout.Y) {
        split.B[slot(i)].push_back(i);
    }
    for (std::size_t j = 0; j < layout.Z.size(); ++j) {
        for (Index i : layout.Z[j]) {
            split.C[slot(i)][j].push_back(i);
        }
    }
    return split;
}

std::vector<int> AlternativeSplit::labels(std::size_t n) const {
    std::vector<int> out(n, -1);
    const auto put = [&](const IndexSet& members, std::size_t cluster) {
        for (Index i : members) {
            if (i >= n) {
                throw std::out_of_range("split index out of range");
            }
            out[i] = static_cast<int>(cluster);
        }
    };
    for (std::size_t c = 0; c < k(); ++c) {
        put(A[c], c);
        put(B[c], c);
        for (const auto& piece : C[c]) {
            put(piece, c);
        }
    }
    return out;
}

ReferenceLayout reference_layout(const Dataset& dataset, const Partition& reference, std::span<const Index> P) {
    require_valid_partition(dataset, reference);
    return layout_of(reference, P);
}

std::vector<std::string> validate_split(const ReferenceLayout& layout, const AlternativeSplit& split, std::size_t n) {
    std::vector<std::string> problems;
    const std::size_t k = split.k();
    if (k == 0 || split.B.size() != k || split.C.size() != k) {
        problems.emplace_back("A, B and C must each have one entry per alternative cluster");
        return problems;
    }
    const auto covers = [&](const std::string& name, const IndexSet& target, auto&& pieces_of) {
        std::vector<int> seen(n, 0);
        for (std::size_t c = 0; c < k; ++c) {
            for (Index i : pieces_of(c)) {
                if (i >= n) {
                    problems.push_back(name + " piece has index out of range");
                    return;
                }
                ++seen[i];
            }
        }
        std::vector<char> wanted(n, 0);
        for (Index i : target) {
            wanted[i] = 1;
        }
        for (Index i = 0; i < n; ++i) {
            if (seen[i] != (wanted[i] ? 1 : 0)) {
                problems.push_back("pieces do not partition " + name + " (point " + std::to_string(i) + ")");
                return;
            }
        }
    };
    covers("P", layout.P, [&](std::size_t c) -> const IndexSet& { return split.A[c]; });
    covers("Y", layout.Y, [&](std::size_t c) -> const IndexSet& { return split.B[c]; });
    for (std::size_t c = 0; c < k; ++c) {
        if (split.C[c].size() != layout.Z.size()) {
            problems.push_back("C[" + std::to_string(c) + "] must have one piece per other reference cluster");
            return problems;
        }
    }
    for (std::size_t j = 0; j < layout.Z.size(); ++j) {
        covers("Z_" + std::to_string(layout.z_clusters[j]), layout.Z[j],
               [&](std::size_t c) -> const IndexSet& { return split.C[c][j]; });
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t size = split.A[c].size() + split.B[c].size();
        for (const auto& piece : split.C[c]) {
            size += piece.size();
        }
        if (size == 0) {
            problems.push_back("alternative cluster " + std::to_string(c) + " is empty");
        }
    }
    return problems;
}

double between_term(std::size_t size_a, std::span<const double> mu_a, std::size_t size_b,
                    std::span<const double> mu_b) {
    if (size_a == 0 || size_b == 0) {
        return 0.0;
    }
    const double na = static_cast<double>(size_a);
    const double nb = static_cast<double>(size_b);
    return squared_distance(mu_a, mu_b) / (1.0 / na + 1.0 / nb);
}

double subset_ss(const Dataset& dataset, std::span<const Index> subset) {
    if (subset.empty()) {
        return 0.0;
    }
    const Vector mu = centroid(dataset, subset);
    double total = 0.0;
    for (Index i : subset) {
        total += squared_distance(dataset.point(i), mu);
    }
    return total;
}

double h_lambda(const Dataset& dataset, const Partition& reference, const AlternativeSplit& split,
                std::span<const Index> P, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("h(lambda) is defined for lambda in [0, 1]");
    }
    const ReferenceLayout layout = reference_layout(dataset, reference, P);
    require_split(layout, split, dataset.size());
    const Dataset moved = contract_p(dataset, layout.P, lambda);
    const Partition alternative(split.labels(dataset.size()), static_cast<int>(split.k()));
    return cost(moved, reference) - cost(moved, alternative);
}

HLambdaAnalysis h_decompose(const Dataset& dataset, const Partition& reference, const AlternativeSplit& split,
                            std::span<const Index> P) {
    const ReferenceLayout layout = reference_layout(dataset, reference, P);
    require_split(layout, split, dataset.size());
    const std::size_t k = split.k();
    const std::size_t nz = layout.Z.size();

    const Vector mu_p = centroid(dataset, layout.P);
    const Piece y = piece(dataset, layout.Y);

    HLambdaAnalysis out;
    out.v_A.resize(k);
    out.cross.resize(k);

    // c_h: everything in Q(reference) - Q(alternative) that involves neither P' nor A'_i.
    double c_h = y.ss + (y.size > 0 ? between_term(layout.P.size(), mu_p, y.size, y.mu) : 0.0);
    for (const auto& z : layout.Z) {
        c_h += subset_ss(dataset, z);
    }

    double quad = 0.0;
    double lin = 0.0;
    double constant = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const Piece a = piece(dataset, split.A[i]);
        const Piece b = piece(dataset, split.B[i]);
        std::vector<Piece> cs;
        cs.reserve(nz);
        std::size_t c_total = 0;
        for (std::size_t j = 0; j < nz; ++j) {
            cs.push_back(piece(dataset, split.C[i][j]));
            c_total += cs.back().size;
        }
        const double na = static_cast<double>(a.size);
        const double nb = static_cast<double>(b.size);
        const double n_i = na + nb + static_cast<double>(c_total);

        c_h -= b.ss;
        for (const auto& c : cs) {
            c_h -= c.ss;
        }
        double rest_pairs = 0.0;
        for (std::size_t j = 0; j < nz; ++j) {
            if (b.size > 0 && cs[j].size > 0) {
                rest_pairs += nb * static_cast<double>(cs[j].size) * squared_distance(b.mu, cs[j].mu);
            }
            for (std::size_t jj = j + 1; jj < nz; ++jj) {
                if (cs[j].size > 0 && cs[jj].size > 0) {
                    rest_pairs += static_cast<double>(cs[j].size) * static_cast<double>(cs[jj].size) *
                                  squared_distance(cs[j].mu, cs[jj].mu);
                }
            }
        }
        c_h -= rest_pairs / n_i;

        CrossConstants& cross = out.cross[i];
        cross.c_acp.assign(nz, 0.0);
        cross.c_cp.assign(nz, 0.0);
        if (a.size == 0) {
            continue;
        }
        Vector v(dataset.dim());
        for (std::size_t d = 0; d < v.size(); ++d) {
            v[d] = a.mu[d] - mu_p[d];
        }
        double vv = 0.0;
        for (double x : v) {
            vv += x * x;
        }
        if (vv > 0.0) {
            out.strictly_convex = true;
        }

        quad += (na - na * (nb + static_cast<double>(c_total)) / n_i) * vv;
        if (b.size > 0) {
            cross.c_abp = 2.0 * dot_diff(v, mu_p, b.mu);
            cross.c_bp = squared_distance(mu_p, b.mu);
            lin -= na * nb * cross.c_abp / n_i;
            constant -= na * nb * cross.c_bp / n_i;
        }
        for (std::size_t j = 0; j < nz; ++j) {
            if (cs[j].size == 0) {
                continue;
            }
            const double nc = static_cast<double>(cs[j].size);
            cross.c_acp[j] = 2.0 * dot_diff(v, mu_p, cs[j].mu);
            cross.c_cp[j] = squared_distance(mu_p, cs[j].mu);
            lin -= na * nc * cross.c_acp[j] / n_i;
            constant -= na * nc * cross.c_cp[j] / n_i;
        }
        out.v_A[i] = std::move(v);
    }

    out.quad_coeff = quad;
    out.lin_coeff = lin;
    out.c_h = c_h;
    out.const_coeff = constant + c_h;
    return out;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::preserved:
        return "preserved";
    case Verdict::tie_skipped:
        return "tie_skipped";
    case Verdict::violated:
        return "violated";
    }
    return "unknown";
}

PreservationVerdict verify_theorem3(const Dataset& dataset, int k, std::span<const Index> P, double lambda,
                                    const IdealOptions& options) {
    const ClusteringResult before = kmeans_ideal(dataset, k, options);
    return verify_theorem3(dataset, before, P, lambda, options);
}

PreservationVerdict verify_theorem3(const Dataset& dataset, const ClusteringResult& ideal_before,
                                    std::span<const Index> P, double lambda, const IdealOptions& options) {
    require_contraction_factor(lambda);
    const ReferenceLayout layout = reference_layout(dataset, ideal_before.partition, P);
    return check_preservation(
        dataset, ideal_before, layout.P.size(), lambda,
        [&](const Dataset& data, const Partition& partition) {
            return gamma_plus_plus(data, partition, layout.t_cluster, layout.P, lambda).dataset;
        },
        options);
}

PreservationVerdict verify_gamma_star(const Dataset& dataset, const ClusteringResult& ideal_before, int cluster,
                                      double lambda, const IdealOptions& options) {
    require_contraction_factor(lambda);
    const IndexSet members = ideal_before.partition.members(cluster);
    if (members.empty()) {
        throw std::invalid_argument("cluster " + std::to_string(cluster) + " is empty");
    }
    return check_preservation(
        dataset, ideal_before, members.size(), lambda,
        [&](const Dataset& data, const Partition& partition) { return gamma_star(data, partition, cluster, lambda); },
        options);
}

CollapseVerdict verify_lambda0_collapse(const Dataset& dataset, const Partition& reference,
                                        const AlternativeSplit& split, std::span<const Index> P, double tol) {
    const ReferenceLayout layout = reference_layout(dataset, reference, P);
    require_split(layout, split, dataset.size());
    const int k = static_cast<int>(split.k());
    const Dataset collapsed = contract_p(dataset, layout.P, 0.0);
    const std::vector<int> alt = split.labels(dataset.size());

    // Centroids of K'_i(0); every K_i is non-empty.
    std::vector<IndexSet> groups(static_cast<std::size_t>(k));
    for (Index i = 0; i < alt.size(); ++i) {
        groups[static_cast<std::size_t>(alt[i])].push_back(i);
    }
    const Vector mu_p = centroid(dataset, layout.P);
    CollapseVerdict verdict;
    double nearest = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
        const double d = squared_distance(mu_p, centroid(collapsed, groups[static_cast<std::size_t>(c)]));
        if (d < nearest) {
            nearest = d;
            verdict.target = c;
        }
    }
    std::vector<int> rearranged = alt;
    for (Index i : layout.P) {
        rearranged[i] = verdict.target;
    }

    const double q_ref0 = cost(collapsed, reference);
    verdict.q_alternative = cost_of_labels(collapsed, alt, k);
    verdict.q_rearranged = cost_of_labels(collapsed, rearranged, k);
    verdict.h0 = q_ref0 - verdict.q_alternative;

    const double gap0 = q_ref0 - verdict.q_rearranged;
    const double gap1 = cost(dataset, reference) - cost_of_labels(dataset, rearranged, k);
    verdict.identity_residual = std::abs(gap0 - gap1);

    verdict.passed = verdict.q_rearranged <= verdict.q_alternative + tol && verdict.h0 <= tol;
    return verdict;
}

void for_each_alternative_split(const Partition& reference, std::span<const Index> P, int k,
                                const std::function<void(const AlternativeSplit&)>& visit) {
    const std::size_t n = reference.size();
    if (n > 10 || k > 3) {
        throw std::invalid_argument("exhaustive split enumeration is limited to n <= 10 and k <= 3");
    }
    if (k <= 0 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("k must lie in [1, n]");
    }
    layout_of(reference, P);
    std::vector<int> labels(n, 0);
    // restricted growth strings with exactly k blocks
    std::function<void(std::size_t, int)> descend = [&](std::size_t i, int used) {
        if (i == n) {
            if (used == k) {
                visit(AlternativeSplit::from_labels(reference, P, Partition(labels, k)));
            }
            return;
        }
        if (used + static_cast<int>(n - i) < k) {
            return;
        }
        const int top = std::min(used, k - 1);
        for (int c = 0; c <= top; ++c) {
            labels[i] = c;
            descend(i + 1, c == used ? used + 1 : used);
        }
    };
    descend(0, 0);
}

std::vector<AlternativeSplit> sample_alternative_splits(const Partition& reference, std::span<const Index> P, int k,
                                                        std::size_t count, std::uint64_t seed) {
    const std::size_t n = reference.size();
    if (k <= 0 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("k must lie in [1, n]");
    }
    Rng rng(seed);
    std::vector<AlternativeSplit> out;
    out.reserve(count);
    std::vector<int> labels(n);
    while (out.size() < count) {
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (auto& l : labels) {
            l = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
            ++counts[static_cast<std::size_t>(l)];
        }
        if (std::find(counts.begin(), counts.end(), 0) != counts.end()) {
            continue;
        }
        out.push_back(AlternativeSplit::from_labels(reference, P, Partition(labels, k)));
    }
    return out;
}

} // namespace centric
