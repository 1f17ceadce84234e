#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "centric/kmeans.hpp"
#include "centric/transforms.hpp"
#include "oracles.hpp"

using namespace centric;

TEST_CASE("centric_set_transform on a line") {
    const Dataset ds = Dataset::from_rows({{0.0}, {4.0}, {9.0}});
    const Dataset out = centric_set_transform(ds, IndexSet{0, 1}, 0.5);
    CHECK(out.point(0)[0] == 1.0);
    CHECK(out.point(1)[0] == 3.0);
    CHECK(out.point(2)[0] == 9.0);
    CHECK(centric_set_transform(ds, IndexSet{0, 2}, 1.0) == ds);
}

TEST_CASE("centric_set_transform argument checks") {
    const Dataset ds = Dataset::from_rows({{0.0}, {4.0}});
    CHECK_THROWS(centric_set_transform(ds, IndexSet{}, 0.5));
    CHECK_THROWS(centric_set_transform(ds, IndexSet{0}, 0.0));
    CHECK_THROWS(centric_set_transform(ds, IndexSet{0}, 1.5));
    CHECK_THROWS(centric_set_transform(ds, IndexSet{0}, std::nan("")));
    CHECK_THROWS(centric_set_transform(ds, IndexSet{0, 5}, 0.5));
}

TEST_CASE("gamma_star contracts a cluster toward its centroid") {
    const Dataset ds = Dataset::from_rows({{0.0}, {2.0}, {4.0}, {50.0}});
    const Partition p({0, 0, 0, 1}, 2);
    const Dataset out = gamma_star(ds, p, 0, 0.5);
    CHECK(out.point(0)[0] == 1.0);
    CHECK(out.point(1)[0] == 2.0);
    CHECK(out.point(2)[0] == 3.0);
    CHECK(out.point(3)[0] == 50.0);
    CHECK(gamma_star(ds, p, 0, 1.0) == ds);
    CHECK_THROWS(gamma_star(ds, p, 2, 0.5));
}

TEST_CASE("gamma_plus_plus") {
    std::mt19937_64 gen(5);
    const Dataset ds = oracle::random_dataset(gen, 9, 3);
    const Partition p({0, 1, 0, 1, 0, 0, 1, 1, 0}, 2);
    const IndexSet whole = p.members(0);
    CHECK(gamma_plus_plus(ds, p, 0, whole, 0.37).dataset == gamma_star(ds, p, 0, 0.37));
    IndexSet shuffled(whole.rbegin(), whole.rend());
    CHECK(gamma_plus_plus(ds, p, 0, shuffled, 0.37).dataset == gamma_star(ds, p, 0, 0.37));
    CHECK(gamma_plus_plus(ds, p, 0, IndexSet{0, 2}, 1.0).dataset == ds);
    CHECK(gamma_plus_plus(ds, p, 0, IndexSet{0, 2}, 0.5).expected_partition == p);
    CHECK_THROWS_WITH(gamma_plus_plus(ds, p, 0, IndexSet{0, 1}, 0.5), "Γ⁺⁺ subset must lie within one cluster");
}

TEST_CASE("gamma_plus_plus keeps the optimum of a 12-point instance") {
    std::mt19937_64 gen(12);
    std::vector<Vector> rows;
    std::normal_distribution<double> z(0.0, 1.0);
    for (int i = 0; i < 12; ++i) {
        rows.push_back({z(gen) + (i < 6 ? 0.0 : 6.0), z(gen)});
    }
    const Dataset ds = Dataset::from_rows(rows);
    const ClusteringResult before = kmeans_ideal(ds, 2);
    const IndexSet members = before.partition.members(0);
    const IndexSet subset(members.begin(), members.begin() + 3);
    const Dataset after = gamma_plus_plus(ds, before.partition, 0, subset, 0.5).dataset;
    CHECK(kmeans_ideal(after, 2).partition == before.partition);
}

TEST_CASE("centroid invariance and composition") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> lam(0.01, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Dataset ds = oracle::random_dataset(gen, 15, 1 + trial % 4, 100.0);
        IndexSet subset;
        for (Index i = 0; i < ds.size(); ++i) {
            if (gen() % 2) {
                subset.push_back(i);
            }
        }
        if (subset.empty()) {
            subset.push_back(0);
        }
        const double l1 = lam(gen), l2 = lam(gen);
        const Dataset once = centric_set_transform(ds, subset, l1);
        const Vector mu = centroid(ds, subset);
        const Vector mu_after = centroid(once, subset);
        for (std::size_t d = 0; d < mu.size(); ++d) {
            CHECK(std::abs(mu[d] - mu_after[d]) <= 1e-12 * std::max(1.0, std::abs(mu[d])));
        }
        const Dataset twice = centric_set_transform(once, subset, l2);
        const Dataset direct = centric_set_transform(ds, subset, l1 * l2);
        for (std::size_t c = 0; c < ds.coords().size(); ++c) {
            CHECK(std::abs(twice.coords()[c] - direct.coords()[c]) <= 1e-12 * std::max(1.0, std::abs(direct.coords()[c])));
        }
    }
}

TEST_CASE("distance_matrix") {
    const Dataset line = Dataset::from_rows({{0.0}, {3.0}});
    CHECK(distance_matrix(line)(0, 1) == 3.0);

    const Dataset square = Dataset::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const DistanceMatrix d = distance_matrix(square);
    CHECK(d(0, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(d(1, 3) == doctest::Approx(std::sqrt(2.0)));
    for (Index i = 0; i < 4; ++i) {
        CHECK(d(i, i) == 0.0);
        for (Index j = 0; j < 4; ++j) {
            CHECK(d(i, j) == d(j, i));
        }
    }
}

TEST_CASE("Kleinberg checker") {
    const Dataset ds = Dataset::from_rows({{0, 0}, {1, 0}, {5, 0}, {6, 0}});
    const Partition p({0, 0, 1, 1}, 2);
    const DistanceMatrix d = distance_matrix(ds);
    CHECK(is_kleinberg_gamma_transform(d, d, p).valid);

    DistanceMatrix within = d;
    within.set(0, 1, 0.5);
    CHECK(is_kleinberg_gamma_transform(d, within, p).valid);

    DistanceMatrix cross = d;
    cross.set(1, 2, 3.0);
    const GammaCheck bad = is_kleinberg_gamma_transform(d, cross, p);
    CHECK_FALSE(bad.valid);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].i == 1);
    CHECK(bad.violations[0].j == 2);
    CHECK_FALSE(bad.violations[0].same_cluster);

    DistanceMatrix grown = d;
    grown.set(2, 3, 2.0);
    const GammaCheck stretched = is_kleinberg_gamma_transform(d, grown, p);
    CHECK_FALSE(stretched.valid);
    CHECK(stretched.violations[0].same_cluster);

    CHECK_THROWS(is_kleinberg_gamma_transform(d, distance_matrix(Dataset::from_rows({{0.0}})), p));

    // Contracting a cluster pulls its outer points toward the other cluster.
    const Dataset squeezed = gamma_star(ds, p, 0, 0.5);
    CHECK_FALSE(is_kleinberg_gamma_transform(ds, squeezed, p).valid);
}

TEST_CASE("angular_transform in the plane") {
    const double h = std::sqrt(0.5);
    const Dataset one = Dataset::from_rows({{1.0, 0.0}});
    const Vector axis{h, h}, origin{0.0, 0.0};
    const AngularResult r = angular_transform(one, axis, 2.0, origin);
    CHECK(r.dataset.point(0)[0] == doctest::Approx(h));
    CHECK(r.dataset.point(0)[1] == doctest::Approx(-h));
    CHECK(r.clamped == 0);

    const Dataset on_axis = Dataset::from_rows({{2.0, 2.0}});
    CHECK(angular_transform(on_axis, axis, 1.7, origin).dataset == on_axis);
    CHECK(angular_transform(one, axis, 1.0, origin).dataset == one);
    CHECK_THROWS(angular_transform(one, Vector{0.0, 0.0}, 2.0, origin));
    CHECK_THROWS(angular_transform(one, axis, 0.0, origin));
}

TEST_CASE("angular_transform preserves radius and clamps large angles") {
    std::mt19937_64 gen(17);
    const Dataset ds = oracle::random_dataset(gen, 300, 3);
    const Vector axis{1.0, 2.0, -0.5}, center{0.3, -0.2, 0.1};
    for (double factor : {0.05, 0.5, 1.9, 3.0}) {
        const AngularResult r = angular_transform(ds, axis, factor, center);
        for (Index i = 0; i < ds.size(); ++i) {
            double before = 0.0, after = 0.0;
            for (std::size_t d = 0; d < 3; ++d) {
                before += (ds.point(i)[d] - center[d]) * (ds.point(i)[d] - center[d]);
                after += (r.dataset.point(i)[d] - center[d]) * (r.dataset.point(i)[d] - center[d]);
            }
            CHECK(std::abs(std::sqrt(before) - std::sqrt(after)) <= 1e-10);
        }
        if (factor == 3.0) {
            CHECK(r.clamped > 0);
        }
    }
}

TEST_CASE("angular_transform on a subset leaves other points alone") {
    const Dataset ds = Dataset::from_rows({{1.0, 0.0}, {0.0, 1.0}});
    const Vector axis{1.0, 1.0}, origin{0.0, 0.0};
    const AngularResult r = angular_transform(ds, axis, 0.5, origin, IndexSet{0});
    CHECK(r.dataset.point(1)[0] == 0.0);
    CHECK(r.dataset.point(1)[1] == 1.0);
    CHECK(r.dataset.point(0)[0] != 1.0);
}

TEST_CASE("apply_transform dispatch") {
    const Dataset ds = Dataset::from_rows({{0.0, 0.0}, {2.0, 0.0}, {10.0, 0.0}, {12.0, 1.0}});
    const Partition p({0, 0, 1, 1}, 2);
    TransformSpec spec;
    spec.kind = TransformKind::gamma_star;
    spec.cluster = 1;
    spec.lambda = 0.5;
    CHECK(apply_transform(ds, &p, spec).dataset == gamma_star(ds, p, 1, 0.5));
    CHECK_THROWS(apply_transform(ds, nullptr, spec));
    spec.cluster.reset();
    CHECK_THROWS(apply_transform(ds, &p, spec));

    spec.kind = TransformKind::centric_set;
    spec.subset = {0, 2};
    CHECK(apply_transform(ds, nullptr, spec).dataset == centric_set_transform(ds, IndexSet{0, 2}, 0.5));

    spec.kind = TransformKind::gamma_plus_plus;
    spec.cluster = 0;
    CHECK_THROWS(apply_transform(ds, &p, spec));

    spec = {};
    spec.kind = TransformKind::angular;
    spec.axis = {1.0, 1.0};
    spec.factor = 0.5;
    spec.cluster = 1;
    const Dataset moved = apply_transform(ds, &p, spec).dataset;
    CHECK(moved.point(0)[0] == 0.0);
    CHECK(moved.point(1)[0] == 2.0);
    CHECK(moved.point(2)[0] != 10.0);
}
