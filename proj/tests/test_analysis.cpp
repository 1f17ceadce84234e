#include <doctest.h>

#include <random>

#include "centric/analysis.hpp"
#include "centric/datagen.hpp"
#include "centric/random.hpp"
#include "oracles.hpp"

using namespace centric;

namespace {

// h(lambda) from scratch: move P by the contraction formula, then difference of naive costs.
double h_oracle(const Dataset& ds, const Partition& reference, const std::vector<int>& alternative, int k_alt,
                const IndexSet& P, double lambda) {
    oracle::Rows x = oracle::rows_of(ds);
    std::vector<double> mu(ds.dim(), 0.0);
    for (Index i : P) {
        for (std::size_t d = 0; d < ds.dim(); ++d) {
            mu[d] += x[i][d] / static_cast<double>(P.size());
        }
    }
    for (Index i : P) {
        for (std::size_t d = 0; d < ds.dim(); ++d) {
            x[i][d] = mu[d] + lambda * (x[i][d] - mu[d]);
        }
    }
    return oracle::naive_cost(x, reference.labels(), reference.k()) - oracle::naive_cost(x, alternative, k_alt);
}

struct Fixture {
    Dataset ds;
    Partition reference;
    IndexSet P;
};

// T = {0..4} with P = {0..3} centred at the origin, Z = {5..8}.
Fixture constructed() {
    return {Dataset::from_rows({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {0, 3}, {20, 0}, {21, 0}, {20, 1}, {22, 3}}),
            Partition({0, 0, 0, 0, 0, 1, 1, 1, 1}, 2),
            {0, 1, 2, 3}};
}

Fixture random_ideal_instance(std::uint64_t seed, std::size_t n_per, int k, std::size_t dim) {
    Rng rng(seed);
    const LabeledDataset blobs = gaussian_blobs(k, n_per, dim, 1.0, rng.uniform(1.0, 4.0), rng.next());
    const ClusteringResult ideal = kmeans_ideal(blobs.dataset, k);
    int cluster = 0;
    for (int c = 1; c < k; ++c) {
        if (ideal.partition.members(c).size() > ideal.partition.members(cluster).size()) {
            cluster = c;
        }
    }
    const IndexSet members = ideal.partition.members(cluster);
    const std::size_t count = 1 + rng.below(members.size());
    return {blobs.dataset, ideal.partition,
            sample_subset_count(blobs.dataset, ideal.partition, cluster, count, SubsetMode::uniform, rng.next())};
}

} // namespace

TEST_CASE("between_term matches the two-group decomposition") {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 100; ++trial) {
        const Dataset ds = oracle::random_dataset(gen, 10, 3);
        IndexSet a, b, all;
        for (Index i = 0; i < ds.size(); ++i) {
            (i < 1 + static_cast<Index>(trial % 8) ? a : b).push_back(i);
            all.push_back(i);
        }
        const Vector mu_a = centroid(ds, a), mu_b = centroid(ds, b);
        const double expected = subset_ss(ds, all) - subset_ss(ds, a) - subset_ss(ds, b);
        CHECK(between_term(a.size(), mu_a, b.size(), mu_b) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(subset_ss(ds, all) ==
              doctest::Approx(oracle::naive_cost(oracle::rows_of(ds), std::vector<int>(10, 0), 1)).epsilon(1e-12));
    }
    CHECK(subset_ss(Dataset::from_rows({{1.0}}), IndexSet{}) == 0.0);
}

TEST_CASE("reference_layout") {
    const Fixture f = constructed();
    const ReferenceLayout layout = reference_layout(f.ds, f.reference, f.P);
    CHECK(layout.t_cluster == 0);
    CHECK(layout.Y == IndexSet{4});
    CHECK(layout.z_clusters == std::vector<int>{1});
    CHECK(layout.Z[0] == IndexSet{5, 6, 7, 8});
    CHECK_THROWS(reference_layout(f.ds, f.reference, IndexSet{0, 5}));
    CHECK_THROWS(reference_layout(f.ds, f.reference, IndexSet{}));
}

TEST_CASE("h_lambda is zero for the reference itself") {
    const Fixture f = constructed();
    const AlternativeSplit same = AlternativeSplit::from_labels(f.reference, f.P, f.reference);
    CHECK(validate_split(reference_layout(f.ds, f.reference, f.P), same, f.ds.size()).empty());
    for (double lambda : {0.0, 0.3, 1.0}) {
        CHECK(std::abs(h_lambda(f.ds, f.reference, same, f.P, lambda)) <= 1e-12);
    }
    CHECK(same.labels(f.ds.size()) == f.reference.labels());
}

TEST_CASE("quad_coeff on a constructed split") {
    const Fixture f = constructed();
    // K_1 = A_1 {0,1} + Y {4} + {5,6}; K_2 = A_2 {2,3} + {7,8}.
    const std::vector<int> alt{0, 0, 1, 1, 0, 0, 0, 1, 1};
    const AlternativeSplit split = AlternativeSplit::from_labels(f.reference, f.P, Partition(alt, 2));
    const HLambdaAnalysis h = h_decompose(f.ds, f.reference, split, f.P);
    // |A_1| = 2, |K_1| = 5, v = (1, 0): 2 - 2 * 3 / 5 = 0.8. A_2 adds 2 - 2 * 2 / 4 = 1.
    CHECK(h.quad_coeff == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(h.strictly_convex);
    REQUIRE(h.v_A.size() == 2);
    CHECK(h.v_A[0][0] == doctest::Approx(1.0));
    CHECK(h.v_A[0][1] == doctest::Approx(0.0));
    for (double lambda : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const double expected = h_oracle(f.ds, f.reference, alt, 2, f.P, lambda);
        CHECK(h_lambda(f.ds, f.reference, split, f.P, lambda) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(h.h_at(lambda) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("quad_coeff vanishes when P stays whole") {
    const Fixture f = constructed();
    const std::vector<int> alt{0, 0, 0, 0, 1, 1, 1, 0, 0};
    const AlternativeSplit split = AlternativeSplit::from_labels(f.reference, f.P, Partition(alt, 2));
    const HLambdaAnalysis h = h_decompose(f.ds, f.reference, split, f.P);
    CHECK(std::abs(h.quad_coeff) <= 1e-12);
    CHECK_FALSE(h.strictly_convex);
}

TEST_CASE("h_lambda matches a from-scratch evaluation on random splits") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Fixture f = random_ideal_instance(seed, 5, 2, 2);
        const auto splits = sample_alternative_splits(f.reference, f.P, 2, 5, seed);
        REQUIRE(splits.size() == 5);
        const ReferenceLayout layout = reference_layout(f.ds, f.reference, f.P);
        for (const auto& split : splits) {
            CHECK(validate_split(layout, split, f.ds.size()).empty());
            const auto alt = split.labels(f.ds.size());
            const HLambdaAnalysis h = h_decompose(f.ds, f.reference, split, f.P);
            CHECK(h.quad_coeff >= -1e-12);
            for (double lambda : {0.0, 0.3, 0.5, 1.0}) {
                const double expected = h_oracle(f.ds, f.reference, alt, 2, f.P, lambda);
                const double scale = std::max(1.0, std::abs(expected));
                CHECK(std::abs(h_lambda(f.ds, f.reference, split, f.P, lambda) - expected) <= 1e-9 * scale);
                CHECK(std::abs(h.h_at(lambda) - expected) <= 1e-9 * scale);
            }
        }
    }
}

TEST_CASE("three-point fit recovers quad_coeff") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const Fixture f = random_ideal_instance(seed, 4, 3, 3);
        for (const auto& split : sample_alternative_splits(f.reference, f.P, 3, 5, seed)) {
            const double h0 = h_lambda(f.ds, f.reference, split, f.P, 0.0);
            const double hh = h_lambda(f.ds, f.reference, split, f.P, 0.5);
            const double h1 = h_lambda(f.ds, f.reference, split, f.P, 1.0);
            const auto [a, b, c] = oracle::parabola_through(0.0, h0, 0.5, hh, 1.0, h1);
            const double h03 = h_lambda(f.ds, f.reference, split, f.P, 0.3);
            CHECK(oracle::rel_error(a * 0.09 + b * 0.3 + c, h03) <= 1e-8);
            const HLambdaAnalysis h = h_decompose(f.ds, f.reference, split, f.P);
            CHECK(oracle::rel_error(a, h.quad_coeff) <= 1e-8);
        }
    }
}

TEST_CASE("endpoint dominance over every split of small instances") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int k = seed % 2 ? 3 : 2;
        const Fixture f = random_ideal_instance(seed, k == 2 ? 4 : 3, k, 2);
        std::size_t visited = 0;
        for_each_alternative_split(f.reference, f.P, k, [&](const AlternativeSplit& split) {
            ++visited;
            CHECK(h_lambda(f.ds, f.reference, split, f.P, 0.0) <= 1e-9);
            CHECK(h_lambda(f.ds, f.reference, split, f.P, 1.0) <= 1e-9);
            const CollapseVerdict collapse = verify_lambda0_collapse(f.ds, f.reference, split, f.P);
            CHECK(collapse.passed);
            CHECK(collapse.q_rearranged <= collapse.q_alternative + 1e-9);
        });
        CHECK(visited == static_cast<std::size_t>(stirling2(f.ds.size(), static_cast<std::size_t>(k))));
    }
}

TEST_CASE("for_each_alternative_split rejects big inputs") {
    const Fixture f = random_ideal_instance(5, 6, 2, 2);
    CHECK_THROWS(for_each_alternative_split(f.reference, f.P, 2, [](const AlternativeSplit&) {}));
}

TEST_CASE("verify_lambda0_collapse on the reference") {
    const Fixture f = constructed();
    const AlternativeSplit same = AlternativeSplit::from_labels(f.reference, f.P, f.reference);
    const CollapseVerdict v = verify_lambda0_collapse(f.ds, f.reference, same, f.P);
    CHECK(v.passed);
    CHECK(std::abs(v.h0) <= 1e-12);
}

TEST_CASE("verify_theorem3 examples") {
    const LabeledDataset two = gaussian_blobs(2, 6, 2, 1.0, 5.0, 3);
    const IndexSet four(two.labels.members(0).begin(), two.labels.members(0).begin() + 4);
    const ClusteringResult ideal = kmeans_ideal(two.dataset, 2);
    REQUIRE(clustering_error(ideal.partition, two.labels) == 0);
    const IndexSet p = ideal.partition.members(ideal.partition.label(four[0]));
    const IndexSet subset(p.begin(), p.begin() + 4);

    CHECK(verify_theorem3(two.dataset, 2, subset, 1.0).verdict == Verdict::preserved);
    const PreservationVerdict half = verify_theorem3(two.dataset, 2, subset, 0.5);
    CHECK(half.verdict == Verdict::preserved);
    CHECK(half.subset_size == 4);
    CHECK(half.post_cost <= half.pre_cost);
    CHECK(half.before == half.after);

    const LabeledDataset three = gaussian_blobs(3, 4, 2, 1.0, 5.0, 8);
    const ClusteringResult ideal3 = kmeans_ideal(three.dataset, 3);
    const IndexSet m = ideal3.partition.members(1);
    const IndexSet sub3(m.begin(), m.begin() + 2);
    for (double lambda : {0.25, 0.75}) {
        CHECK(verify_theorem3(three.dataset, ideal3, sub3, lambda).verdict == Verdict::preserved);
        CHECK(verify_gamma_star(three.dataset, ideal3, 1, lambda).verdict == Verdict::preserved);
    }
    CHECK_THROWS(verify_theorem3(two.dataset, 2, IndexSet{two.labels.members(0)[0], two.labels.members(1)[0]}, 0.5));
    CHECK(to_string(Verdict::tie_skipped) == "tie_skipped");
}

TEST_CASE("verify_theorem3 skips ties") {
    // A square: both axis-aligned splits are optimal.
    const Dataset sq = Dataset::from_rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const ClusteringResult ideal = kmeans_ideal(sq, 2);
    CHECK(*ideal.optimality_gap < kTieGap);
    CHECK(verify_theorem3(sq, ideal, ideal.partition.members(0), 0.5).verdict == Verdict::tie_skipped);
}
