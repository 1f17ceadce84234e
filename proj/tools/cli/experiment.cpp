#include "cli/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "centric/csv.hpp"
#include "centric/parallel.hpp"
#include "centric/random.hpp"
#include "centric/serialization.hpp"

namespace centric::cli {

using nlohmann::json;

namespace {

// Seed streams per repetition. Draw attempts use streams [0, 2 * max_draws).
constexpr std::uint64_t kGammaLloydStream = 1ULL << 40;
constexpr std::uint64_t kPlusPlusLloydStream = (1ULL << 40) + 1;
constexpr std::uint64_t kPlusPlusSizeStream = (1ULL << 40) + 2;
constexpr std::uint64_t kPlusPlusSubsetStream = (1ULL << 40) + 3;

struct RepetitionResult {
    RunRecord gamma;
    RunRecord plus_plus;
};

RunRecord score(const std::string& arm, const Dataset& data, const Partition& truth, const LloydConfig& base,
                std::uint64_t seed) {
    LloydConfig config = base;
    config.seed = seed;
    config.threads = 1;
    const ClusteringResult fit = lloyd(data, config);
    RunRecord record;
    record.arm = arm;
    record.n = data.size();
    record.errors = clustering_error(truth, fit.partition);
    record.error_rate = static_cast<double>(record.errors) / static_cast<double>(record.n);
    record.cost = fit.cost;
    return record;
}

RepetitionResult run_repetition(const ExperimentConfig& config, std::size_t repetition) {
    const std::uint64_t rep_seed = derive_seed(config.seed, repetition);

    std::optional<LabeledDataset> accepted;
    std::size_t draws = 0;
    while (!accepted) {
        if (draws >= std::max<std::size_t>(config.max_draws, 1)) {
            throw std::runtime_error("repetition " + std::to_string(repetition) + ": no draw in " +
                                     std::to_string(draws) + " had Lloyd-stable generating labels");
        }
        GenSpec gen = config.generator;
        gen.seed = derive_seed(rep_seed, 2 * draws);
        LabeledDataset drawn = generate(gen);
        drawn.dataset = apply_transform(drawn.dataset, &drawn.labels, config.pre_transform).dataset;
        ++draws;
        if (config.require_fixed_point) {
            LloydConfig baseline = config.lloyd;
            baseline.seed = derive_seed(rep_seed, 2 * draws - 1);
            baseline.threads = 1;
            if (clustering_error(drawn.labels, lloyd(drawn.dataset, baseline).partition) != 0) {
                continue;
            }
        }
        accepted = std::move(drawn);
    }
    const Dataset& data = accepted->dataset;
    const Partition& truth = accepted->labels;

    RepetitionResult out;

    const Dataset squeezed = apply_transform(data, &truth, config.gamma_arm).dataset;
    const GammaCheck check = is_kleinberg_gamma_transform(data, squeezed, truth, 1e-12, 1);
    out.gamma = score(kGammaArm, squeezed, truth, config.lloyd, derive_seed(rep_seed, kGammaLloydStream));
    out.gamma.kleinberg_valid = check.valid;

    const PlusPlusArm& arm = config.gamma_plus_plus_arm;
    const std::size_t cluster_size = truth.members(arm.cluster).size();
    const auto bound = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(arm.max_fraction * static_cast<double>(cluster_size) + 1e-9)));
    Rng size_rng(derive_seed(rep_seed, kPlusPlusSizeStream));
    const std::size_t count = 1 + size_rng.below(bound);
    const IndexSet subset = sample_subset_count(data, truth, arm.cluster, count, SubsetMode::uniform,
                                                derive_seed(rep_seed, kPlusPlusSubsetStream));
    const Dataset contracted = gamma_plus_plus(data, truth, arm.cluster, subset, arm.lambda).dataset;
    out.plus_plus = score(kPlusPlusArm, contracted, truth, config.lloyd, derive_seed(rep_seed, kPlusPlusLloydStream));
    out.plus_plus.subset_size = subset.size();

    for (RunRecord* r : {&out.gamma, &out.plus_plus}) {
        r->repetition = repetition;
        r->dataset_draws = draws;
    }
    return out;
}

json spec_or_null(const TransformSpec& spec) {
    json j = to_json(spec);
    j.erase("schema");
    return j;
}

} // namespace

ExperimentConfig default_experiment_config(bool full_scale) {
    ExperimentConfig config;
    config.generator.kind = GenKind::two_squares_3d;
    config.generator.n = full_scale ? 10000 : 2000;
    config.generator.edge = 1.0;

    config.pre_transform.kind = TransformKind::angular;
    config.pre_transform.factor = 1.9;
    config.pre_transform.axis = two_squares_diagonal();
    config.pre_transform.center = {0.0, 0.0, 0.0};

    config.gamma_arm = config.pre_transform;
    config.gamma_arm.factor = 0.05;
    config.gamma_arm.cluster = 0;

    config.lloyd.k = 2;
    config.lloyd.restarts = 20;
    return config;
}

json to_json(const ExperimentConfig& config) {
    json generator = centric::to_json(config.generator);
    generator.erase("schema");
    return {{"schema", kSchemaVersion},
            {"generator", generator},
            {"pre_transform", spec_or_null(config.pre_transform)},
            {"gamma_arm", spec_or_null(config.gamma_arm)},
            {"gamma_plus_plus_arm",
             {{"lambda", config.gamma_plus_plus_arm.lambda},
              {"max_fraction", config.gamma_plus_plus_arm.max_fraction},
              {"cluster", config.gamma_plus_plus_arm.cluster}}},
            {"lloyd", centric::to_json(config.lloyd)},
            {"repetitions", config.repetitions},
            {"seed", config.seed},
            {"require_fixed_point", config.require_fixed_point},
            {"max_draws", config.max_draws}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
    check_schema(j);
    ExperimentConfig config = default_experiment_config(false);
    if (j.contains("generator")) {
        config.generator = gen_spec_from_json(j.at("generator"));
    }
    if (j.contains("pre_transform")) {
        config.pre_transform = transform_spec_from_json(j.at("pre_transform"));
    }
    if (j.contains("gamma_arm")) {
        config.gamma_arm = transform_spec_from_json(j.at("gamma_arm"));
    }
    if (j.contains("gamma_plus_plus_arm")) {
        const json& arm = j.at("gamma_plus_plus_arm");
        config.gamma_plus_plus_arm.lambda = arm.value("lambda", config.gamma_plus_plus_arm.lambda);
        config.gamma_plus_plus_arm.max_fraction = arm.value("max_fraction", config.gamma_plus_plus_arm.max_fraction);
        config.gamma_plus_plus_arm.cluster = arm.value("cluster", config.gamma_plus_plus_arm.cluster);
    }
    if (j.contains("lloyd")) {
        config.lloyd = lloyd_config_from_json(j.at("lloyd"));
    }
    config.repetitions = j.value("repetitions", config.repetitions);
    config.seed = j.value("seed", config.seed);
    config.require_fixed_point = j.value("require_fixed_point", config.require_fixed_point);
    config.max_draws = j.value("max_draws", config.max_draws);
    return config;
}

ExperimentReport run_experiment(const ExperimentConfig& config, std::size_t threads) {
    if (config.repetitions == 0) {
        throw std::invalid_argument("repetitions must be positive");
    }
    require_contraction_factor(config.gamma_plus_plus_arm.lambda);
    if (!(config.gamma_plus_plus_arm.max_fraction > 0.0 && config.gamma_plus_plus_arm.max_fraction <= 1.0)) {
        throw std::invalid_argument("max_fraction must lie in (0, 1]");
    }
    const auto start = std::chrono::steady_clock::now();
    std::vector<RepetitionResult> results(config.repetitions);
    parallel_for(results.size(), worker_count(threads),
                 [&](std::size_t r) { results[r] = run_repetition(config, r); });

    ExperimentReport report;
    report.config = config;
    std::vector<RunRecord> gamma_runs, plus_plus_runs;
    for (const auto& r : results) {
        report.runs.push_back(r.gamma);
        report.runs.push_back(r.plus_plus);
        gamma_runs.push_back(r.gamma);
        plus_plus_runs.push_back(r.plus_plus);
    }
    report.arms.push_back(summarize_arm(kGammaArm, gamma_runs));
    report.arms.push_back(summarize_arm(kPlusPlusArm, plus_plus_runs));
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ArmSummary summarize_arm(const std::string& arm, const std::vector<RunRecord>& runs) {
    ArmSummary summary;
    summary.arm = arm;
    std::map<std::size_t, std::size_t> histogram;
    double total = 0.0;
    for (const auto& r : runs) {
        if (r.arm != arm) {
            continue;
        }
        ++summary.runs;
        total += r.error_rate;
        summary.max_errors = std::max(summary.max_errors, r.errors);
        summary.max_error_rate = std::max(summary.max_error_rate, r.error_rate);
        ++histogram[r.errors];
        if (r.kleinberg_valid && !*r.kleinberg_valid) {
            summary.all_kleinberg_valid = false;
        }
    }
    if (summary.runs == 0) {
        return summary;
    }
    summary.mean_error_rate = total / static_cast<double>(summary.runs);
    if (summary.runs > 1) {
        double ss = 0.0;
        for (const auto& r : runs) {
            if (r.arm == arm) {
                ss += (r.error_rate - summary.mean_error_rate) * (r.error_rate - summary.mean_error_rate);
            }
        }
        summary.std_error_rate = std::sqrt(ss / static_cast<double>(summary.runs - 1));
    }
    summary.histogram.assign(histogram.begin(), histogram.end());
    return summary;
}

json to_json(const ExperimentReport& report, bool include_timing) {
    json runs = json::array();
    for (const auto& r : report.runs) {
        json row = {{"repetition", r.repetition}, {"arm", r.arm},       {"n", r.n},
                    {"errors", r.errors},         {"error_rate", r.error_rate},
                    {"subset_size", r.subset_size}, {"dataset_draws", r.dataset_draws},
                    {"cost", r.cost}};
        row["kleinberg_valid"] = r.kleinberg_valid ? json(*r.kleinberg_valid) : json(nullptr);
        runs.push_back(std::move(row));
    }
    json summary = json::object();
    for (const auto& arm : report.arms) {
        json histogram = json::array();
        for (const auto& [errors, count] : arm.histogram) {
            histogram.push_back({errors, count});
        }
        summary[arm.arm] = {{"runs", arm.runs},
                            {"mean_error_rate", arm.mean_error_rate},
                            {"std_error_rate", arm.std_error_rate},
                            {"max_errors", arm.max_errors},
                            {"max_error_rate", arm.max_error_rate},
                            {"histogram", histogram},
                            {"all_kleinberg_valid", arm.all_kleinberg_valid}};
    }
    json out = {{"schema", kSchemaVersion}, {"config", to_json(report.config)}, {"summary", summary}, {"runs", runs}};
    if (include_timing) {
        out["wall_seconds"] = report.wall_seconds;
    }
    return out;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
    out << "repetition,arm,n,errors,error_rate,subset_size,kleinberg_valid,dataset_draws,cost\n";
    for (const auto& r : runs) {
        out << r.repetition << ',' << r.arm << ',' << r.n << ',' << r.errors << ',' << format_double(r.error_rate)
            << ',' << r.subset_size << ',' << (r.kleinberg_valid ? (*r.kleinberg_valid ? "1" : "0") : "") << ','
            << r.dataset_draws << ',' << format_double(r.cost) << '\n';
    }
}

std::vector<RunRecord> read_runs_csv(std::istream& in) {
    std::string line;
    std::getline(in, line);
    std::vector<RunRecord> runs;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            f.push_back(field);
        }
        if (line.back() == ',') {
            f.emplace_back();
        }
        if (f.size() != 9) {
            throw std::invalid_argument("malformed runs CSV row: " + line);
        }
        RunRecord r;
        r.repetition = std::stoull(f[0]);
        r.arm = f[1];
        r.n = std::stoull(f[2]);
        r.errors = std::stoull(f[3]);
        r.error_rate = std::stod(f[4]);
        r.subset_size = std::stoull(f[5]);
        if (!f[6].empty()) {
            r.kleinberg_valid = f[6] == "1";
        }
        r.dataset_draws = std::stoull(f[7]);
        r.cost = std::stod(f[8]);
        runs.push_back(std::move(r));
    }
    return runs;
}

} // namespace centric::cli
