#include "cli/suite.hpp"

#include <algorithm>
#include <stdexcept>

#include "centric/parallel.hpp"
#include "centric/random.hpp"
#include "centric/serialization.hpp"

namespace centric::cli {

using nlohmann::json;

std::string to_string(SuiteTransform t) {
    switch (t) {
    case SuiteTransform::gamma_plus_plus:
        return "gamma_plus_plus";
    case SuiteTransform::gamma_star:
        return "gamma_star";
    case SuiteTransform::both:
        return "both";
    }
    return "unknown";
}

SuiteTransform suite_transform_from_string(const std::string& name) {
    std::string s = name;
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "gamma_plus_plus") {
        return SuiteTransform::gamma_plus_plus;
    }
    if (s == "gamma_star") {
        return SuiteTransform::gamma_star;
    }
    if (s == "both") {
        return SuiteTransform::both;
    }
    throw std::invalid_argument("unknown verify mode: " + name);
}

SuiteInstance suite_instance(const SuiteConfig& config, std::size_t index) {
    if (config.ks.empty() || config.dims.empty()) {
        throw std::invalid_argument("suite needs at least one k and one dimension");
    }
    SuiteInstance inst;
    inst.k = config.ks[index % config.ks.size()];
    inst.dim = config.dims[(index / config.ks.size()) % config.dims.size()];
    if (inst.k < 1 || config.n % static_cast<std::size_t>(inst.k) != 0) {
        throw std::invalid_argument("suite n must be a multiple of every k");
    }
    const std::uint64_t seed = derive_seed(config.seed, index);
    Rng rng(seed);
    const double separation = rng.uniform(1.0, 4.0);
    inst.data = gaussian_blobs(inst.k, config.n / static_cast<std::size_t>(inst.k), inst.dim, 1.0, separation,
                               derive_seed(seed, 1));
    return inst;
}

namespace {

std::vector<SuiteRecord> run_instance(const SuiteConfig& config, std::size_t index) {
    const SuiteInstance inst = suite_instance(config, index);
    const Dataset& data = inst.data.dataset;
    const ClusteringResult ideal = kmeans_ideal(data, inst.k, config.oracle);

    Rng rng(derive_seed(derive_seed(config.seed, index), 2));
    std::vector<int> eligible;
    int largest = 0;
    for (int c = 0; c < inst.k; ++c) {
        const std::size_t size = ideal.partition.members(c).size();
        if (size >= config.subset_min) {
            eligible.push_back(c);
        }
        if (size > ideal.partition.members(largest).size()) {
            largest = c;
        }
    }
    const int cluster = eligible.empty() ? largest : eligible[rng.below(eligible.size())];
    const std::size_t cluster_size = ideal.partition.members(cluster).size();
    const std::size_t hi = std::min(config.subset_max, cluster_size);
    const std::size_t lo = std::min(config.subset_min, hi);
    const std::size_t count = lo + rng.below(hi - lo + 1);
    const IndexSet subset =
        sample_subset_count(data, ideal.partition, cluster, count, SubsetMode::uniform, rng.next());

    std::vector<SuiteRecord> records;
    for (double lambda : config.lambdas) {
        SuiteRecord base;
        base.instance = index;
        base.k = inst.k;
        base.dim = inst.dim;
        base.cluster = cluster;
        if (config.transform != SuiteTransform::gamma_star) {
            SuiteRecord r = base;
            r.transform = SuiteTransform::gamma_plus_plus;
            r.subset = subset;
            r.verdict = verify_theorem3(data, ideal, subset, lambda, config.oracle);
            records.push_back(std::move(r));
        }
        if (config.transform != SuiteTransform::gamma_plus_plus) {
            SuiteRecord r = base;
            r.transform = SuiteTransform::gamma_star;
            r.subset = ideal.partition.members(cluster);
            r.verdict = verify_gamma_star(data, ideal, cluster, lambda, config.oracle);
            records.push_back(std::move(r));
        }
    }
    return records;
}

} // namespace

SuiteSummary run_random_suite(const SuiteConfig& config, std::size_t threads) {
    if (config.lambdas.empty()) {
        throw std::invalid_argument("suite needs at least one lambda");
    }
    for (double lambda : config.lambdas) {
        require_contraction_factor(lambda);
    }
    std::vector<std::vector<SuiteRecord>> per_instance(config.instances);
    parallel_for(config.instances, worker_count(threads),
                 [&](std::size_t i) { per_instance[i] = run_instance(config, i); });

    SuiteSummary summary;
    for (auto& records : per_instance) {
        for (auto& r : records) {
            switch (r.verdict.verdict) {
            case Verdict::preserved:
                ++summary.preserved;
                break;
            case Verdict::tie_skipped:
                ++summary.tie_skipped;
                break;
            case Verdict::violated:
                ++summary.violated;
                break;
            }
            summary.records.push_back(std::move(r));
        }
    }
    return summary;
}

json to_json(const SuiteSummary& summary, bool include_records) {
    json out = {{"schema", kSchemaVersion},
                {"total", summary.total()},
                {"preserved", summary.preserved},
                {"tie_skipped", summary.tie_skipped},
                {"violated", summary.violated}};
    if (include_records) {
        json records = json::array();
        for (const auto& r : summary.records) {
            json row = to_json(r.verdict);
            row["instance"] = r.instance;
            row["k"] = r.k;
            row["dim"] = r.dim;
            row["transform"] = to_string(r.transform);
            row["cluster"] = r.cluster;
            records.push_back(std::move(row));
        }
        out["records"] = std::move(records);
    }
    return out;
}

std::optional<MixedDirectionWitness> find_mixed_direction_witness(std::uint64_t seed, std::size_t attempts) {
    for (std::size_t a = 0; a < attempts; ++a) {
        Rng rng(derive_seed(seed, a));
        const LabeledDataset drawn = gaussian_blobs(2, 4, 2, 1.0, rng.uniform(3.0, 6.0), rng.next());
        const ClusteringResult ideal = kmeans_ideal(drawn.dataset, 2);
        const IndexSet members = ideal.partition.members(0);
        if (members.size() < 3) {
            continue;
        }
        // Leave part of the cluster out of P so some within-cluster pair can stretch.
        const std::size_t count = 2 + rng.below(members.size() - 2);
        const IndexSet subset =
            sample_subset_count(drawn.dataset, ideal.partition, 0, count, SubsetMode::uniform, rng.next());
        const double lambda = rng.uniform(0.2, 0.8);
        const Dataset after = gamma_plus_plus(drawn.dataset, ideal.partition, 0, subset, lambda).dataset;
        const GammaCheck check =
            is_kleinberg_gamma_transform(drawn.dataset, after, ideal.partition, 1e-12, 1000);

        const auto within = std::find_if(check.violations.begin(), check.violations.end(),
                                         [](const DistanceViolation& v) { return v.same_cluster; });
        const auto cross = std::find_if(check.violations.begin(), check.violations.end(),
                                        [](const DistanceViolation& v) { return !v.same_cluster; });
        if (within == check.violations.end() || cross == check.violations.end()) {
            continue;
        }
        PreservationVerdict verdict = verify_theorem3(drawn.dataset, ideal, subset, lambda);
        if (verdict.verdict != Verdict::preserved) {
            continue;
        }
        return MixedDirectionWitness{drawn.dataset, after,   ideal.partition, subset, lambda,
                                     check,         *within, *cross,          std::move(verdict)};
    }
    return std::nullopt;
}

} // namespace centric::cli
