// Reference computations for the tests. Each one is written out from the
// definition with no shared code path into the library under test.
#ifndef CENTRIC_TESTS_ORACLES_HPP
#define CENTRIC_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "centric/dataset.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline Rows rows_of(const centric::Dataset& ds) {
    Rows rows(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        rows[i].assign(ds.point(i).begin(), ds.point(i).end());
    }
    return rows;
}

/// Sum of squared distances to each cluster mean, long double accumulation.
inline double naive_cost(const Rows& x, const std::vector<int>& labels, int k) {
    const std::size_t d = x.empty() ? 0 : x[0].size();
    std::vector<std::vector<long double>> sum(k, std::vector<long double>(d, 0.0L));
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        ++count[labels[i]];
        for (std::size_t c = 0; c < d; ++c) {
            sum[labels[i]][c] += x[i][c];
        }
    }
    long double q = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int l = labels[i];
        for (std::size_t c = 0; c < d; ++c) {
            const long double diff = x[i][c] - sum[l][c] / count[l];
            q += diff * diff;
        }
    }
    return static_cast<double>(q);
}

/// Minimum label disagreement over every relabeling (k up to 8).
inline std::size_t brute_force_error(const std::vector<int>& a, const std::vector<int>& b) {
    const int ka = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
    const int kb = b.empty() ? 0 : *std::max_element(b.begin(), b.end()) + 1;
    const int k = std::max(ka, kb);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    do {
        std::size_t wrong = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            wrong += perm[b[i]] != a[i];
        }
        best = std::min(best, wrong);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct BruteOptimum {
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::vector<int> labels;
};

/// Optimum over all k^n label vectors with every cluster used; costs deduplicated by 1e-12.
inline BruteOptimum brute_force_optimum(const Rows& x, int k) {
    const std::size_t n = x.size();
    std::vector<int> labels(n, 0);
    BruteOptimum out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(k);
    }
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::vector<int> used(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = static_cast<int>(c % k);
            c /= k;
            used[labels[i]] = 1;
        }
        if (std::count(used.begin(), used.end(), 1) != k) {
            continue;
        }
        const double q = naive_cost(x, labels, k);
        if (q < out.best - 1e-12) {
            out.second = out.best;
            out.best = q;
            out.labels = labels;
        } else if (q > out.best + 1e-12 && q < out.second) {
            out.second = q;
        }
    }
    return out;
}

/// Coefficients (a, b, c) of the parabola a x^2 + b x + c through three points.
inline std::array<double, 3> parabola_through(double x0, double y0, double x1, double y1, double x2, double y2) {
    const long double d0 = (x0 - x1) * (x0 - x2);
    const long double d1 = (x1 - x0) * (x1 - x2);
    const long double d2 = (x2 - x0) * (x2 - x1);
    const long double a = y0 / d0 + y1 / d1 + y2 / d2;
    const long double b = -(y0 * (x1 + x2) / d0 + y1 * (x0 + x2) / d1 + y2 * (x0 + x1) / d2);
    const long double c = y0 * x1 * x2 / d0 + y1 * x0 * x2 / d1 + y2 * x0 * x1 / d2;
    return {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c)};
}

inline double rel_error(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Random matrix of points with coordinates uniform in [-scale, scale].
inline centric::Dataset random_dataset(std::mt19937_64& gen, std::size_t n, std::size_t d, double scale = 5.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> coords(n * d);
    for (double& v : coords) {
        v = u(gen);
    }
    return centric::Dataset(d, std::move(coords));
}

/// Random labels in [0, k) with every label used (requires n >= k).
inline std::vector<int> random_labels(std::mt19937_64& gen, std::size_t n, int k) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i) : static_cast<int>(gen() % k);
    }
    std::shuffle(labels.begin(), labels.end(), gen);
    return labels;
}

} // namespace oracle

#endif
