// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: centric_acceptance [experiment-config.json]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "centric/analysis.hpp"
#include "centric/kmeans.hpp"
#include "centric/random.hpp"
#include "centric/transforms.hpp"
#include "cli/commands.hpp"
#include "cli/experiment.hpp"
#include "cli/suite.hpp"
#include "oracles.hpp"

using namespace centric;
using namespace centric::cli;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body, double budget_s = 0.0) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_s > 0.0 && secs > budget_s) {
        o.pass = false;
        o.detail += "; over the " + std::to_string(static_cast<int>(budget_s)) + " s budget";
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %d. %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Reference partition family shared by criteria 4 and 5: blobs, exact optimum, a subset of its largest cluster.
struct Instance {
    Dataset ds;
    Partition reference;
    IndexSet P;
    int k;
};

Instance ideal_instance(std::uint64_t seed, int k, std::size_t n_per, std::size_t dim) {
    Rng rng(seed);
    const LabeledDataset blobs = gaussian_blobs(k, n_per, dim, 1.0, rng.uniform(1.0, 4.0), rng.next());
    const ClusteringResult ideal = kmeans_ideal(blobs.dataset, k);
    int target = 0;
    for (int c = 1; c < k; ++c) {
        if (ideal.partition.members(c).size() > ideal.partition.members(target).size()) {
            target = c;
        }
    }
    const std::size_t size = ideal.partition.members(target).size();
    const std::size_t count = 1 + rng.below(size);
    IndexSet P = sample_subset_count(blobs.dataset, ideal.partition, target, count, SubsetMode::uniform, rng.next());
    return {blobs.dataset, ideal.partition, std::move(P), k};
}

Outcome cost_forms() {
    std::mt19937_64 gen(20240601);
    double worst = 0.0, worst_oracle = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const int k = 1 + static_cast<int>(gen() % 4);
        const std::size_t n = static_cast<std::size_t>(k) + gen() % (31 - k);
        const std::size_t d = 1 + gen() % 5;
        const Dataset ds = oracle::random_dataset(gen, n, d, 10.0);
        const auto labels = oracle::random_labels(gen, n, k);
        const Partition p(labels, k);
        const double q = cost(ds, p);
        const double scale = std::max(1.0, q);
        worst = std::max({worst, std::abs(q - cost_pairwise_unordered(ds, p)) / scale,
                          std::abs(q - cost_pairwise_ordered(ds, p)) / scale});
        worst_oracle = std::max(worst_oracle, std::abs(q - oracle::naive_cost(oracle::rows_of(ds), labels, k)) / scale);
    }
    return {worst <= 1e-9 && worst_oracle <= 1e-9,
            "max relative discrepancy " + fmt("%.3g", worst) + ", centroid form vs long-double oracle " +
                fmt("%.3g", worst_oracle) + " (tol 1e-9), 1000 instances"};
}

SuiteConfig oracle_suite(SuiteTransform transform) {
    SuiteConfig c;
    c.instances = 200;
    c.n = 12;
    c.ks = {2, 3};
    c.dims = {2, 3};
    c.lambdas = {0.25, 0.5, 0.75};
    c.subset_min = 2;
    c.subset_max = 5;
    c.transform = transform;
    c.seed = 3;
    return c;
}

std::string counts(const SuiteSummary& s) {
    return "preserved " + std::to_string(s.preserved) + ", tie_skipped " + std::to_string(s.tie_skipped) +
           ", violated " + std::to_string(s.violated) + " of " + std::to_string(s.total());
}

// Brute force over all k^12 label vectors on the transformed data for a few instances.
std::size_t brute_force_disagreements(const SuiteConfig& config, const SuiteSummary& summary, std::size_t sample) {
    std::size_t bad = 0, seen = 0;
    for (const auto& r : summary.records) {
        if (seen >= sample || r.verdict.verdict != Verdict::preserved || r.verdict.lambda != 0.5) {
            continue;
        }
        ++seen;
        const SuiteInstance inst = suite_instance(config, r.instance);
        Dataset after;
        if (r.transform == SuiteTransform::gamma_star) {
            after = gamma_star(inst.data.dataset, r.verdict.before, r.cluster, r.verdict.lambda);
        } else {
            after = gamma_plus_plus(inst.data.dataset, r.verdict.before, r.cluster, r.subset, r.verdict.lambda).dataset;
        }
        const auto brute = oracle::brute_force_optimum(oracle::rows_of(after), inst.k);
        bad += oracle::brute_force_error(r.verdict.before.labels(), brute.labels) != 0;
    }
    return bad;
}

Outcome preservation_suite(SuiteTransform transform) {
    const SuiteConfig config = oracle_suite(transform);
    const SuiteSummary s = run_random_suite(config, 0);
    const std::size_t non_tie = s.total() - s.tie_skipped;
    const std::size_t brute_bad = brute_force_disagreements(config, s, 8);
    const bool pass = s.violated == 0 && s.preserved == non_tie && non_tie > 0 && brute_bad == 0;
    return {pass, counts(s) + "; brute-force recheck disagreements " + std::to_string(brute_bad) + " of 8"};
}

Outcome quadratic_certification() {
    double worst_pred = 0.0, worst_coeff = 0.0, min_quad = 1e300;
    std::size_t cases = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const int k = i % 2 ? 3 : 2;
        const Instance inst = ideal_instance(derive_seed(404, i), k, 12 / k, 2 + (i / 2) % 2);
        for (const auto& split : sample_alternative_splits(inst.reference, inst.P, k, 5, derive_seed(405, i))) {
            const double h0 = h_lambda(inst.ds, inst.reference, split, inst.P, 0.0);
            const double hh = h_lambda(inst.ds, inst.reference, split, inst.P, 0.5);
            const double h1 = h_lambda(inst.ds, inst.reference, split, inst.P, 1.0);
            const auto [a, b, c] = oracle::parabola_through(0.0, h0, 0.5, hh, 1.0, h1);
            const double predicted = (a * 0.3 + b) * 0.3 + c;
            worst_pred = std::max(worst_pred,
                                  oracle::rel_error(predicted, h_lambda(inst.ds, inst.reference, split, inst.P, 0.3)));
            const HLambdaAnalysis closed = h_decompose(inst.ds, inst.reference, split, inst.P);
            worst_coeff = std::max(worst_coeff, oracle::rel_error(a, closed.quad_coeff));
            min_quad = std::min(min_quad, closed.quad_coeff);
            ++cases;
        }
    }
    return {cases == 500 && worst_pred <= 1e-8 && worst_coeff <= 1e-8 && min_quad >= -1e-12,
            std::to_string(cases) + " splits; h(0.3) fit error " + fmt("%.3g", worst_pred) + ", quad_coeff error " +
                fmt("%.3g", worst_coeff) + " (tol 1e-8), min quad_coeff " + fmt("%.3g", min_quad)};
}

Outcome endpoint_dominance() {
    double worst_h0 = -1e300, worst_h1 = -1e300;
    std::size_t splits = 0, collapse_failures = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const int k = i % 2 ? 3 : 2;
        const Instance inst = ideal_instance(derive_seed(505, i), k, k == 2 ? 5 : 3, 2 + (i / 2) % 2);
        for_each_alternative_split(inst.reference, inst.P, k, [&](const AlternativeSplit& split) {
            ++splits;
            worst_h0 = std::max(worst_h0, h_lambda(inst.ds, inst.reference, split, inst.P, 0.0));
            worst_h1 = std::max(worst_h1, h_lambda(inst.ds, inst.reference, split, inst.P, 1.0));
            collapse_failures += !verify_lambda0_collapse(inst.ds, inst.reference, split, inst.P).passed;
        });
    }
    return {worst_h0 <= 1e-9 && worst_h1 <= 1e-9 && collapse_failures == 0,
            std::to_string(splits) + " splits over 50 instances; max h(0) " + fmt("%.3g", worst_h0) + ", max h(1) " +
                fmt("%.3g", worst_h1) + " (tol 1e-9), collapse failures " + std::to_string(collapse_failures)};
}

ExperimentConfig desk_config(const std::string& path) {
    return path.empty() ? default_experiment_config(false) : experiment_config_from_json(read_json_file(path));
}

Outcome directional_reproduction(const ExperimentConfig& config) {
    const ExperimentReport r = run_experiment(config, 0);
    const ArmSummary& gamma = r.arms.at(0);
    const ArmSummary& plus = r.arms.at(1);
    const bool shape = config.generator.n == 2000 && config.repetitions == 200 && config.pre_transform.factor == 1.9 &&
                       config.lloyd.restarts == 20 && config.gamma_arm.factor == 0.05 &&
                       config.gamma_plus_plus_arm.lambda == 0.5;
    const bool pass = shape && plus.mean_error_rate == 0.0 && gamma.mean_error_rate > 0.0 &&
                      gamma.mean_error_rate <= 0.01 && gamma.all_kleinberg_valid;
    return {pass, "Gamma++ mean error rate " + fmt("%.6g", plus.mean_error_rate) + " (max " +
                      std::to_string(plus.max_errors) + "), Gamma mean " + fmt("%.4g", 100 * gamma.mean_error_rate) +
                      "% (max " + std::to_string(gamma.max_errors) + " of 2000), Kleinberg-valid " +
                      (gamma.all_kleinberg_valid ? "all" : "NOT all") + (shape ? "" : ", config differs from desk scale")};
}

Outcome centric_invariants() {
    std::mt19937_64 gen(777);
    std::uniform_real_distribution<double> lam(1e-3, 1.0);
    double worst_mu = 0.0, worst_comp = 0.0;
    bool identity = true;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + gen() % 30, d = 1 + gen() % 5;
        const Dataset ds = oracle::random_dataset(gen, n, d, 10.0);
        IndexSet subset;
        for (Index i = 0; i < n; ++i) {
            if (gen() % 3 == 0) {
                subset.push_back(i);
            }
        }
        if (subset.empty()) {
            subset.push_back(gen() % n);
        }
        const double l1 = lam(gen), l2 = lam(gen);
        const Dataset once = centric_set_transform(ds, subset, l1);
        const Vector mu = centroid(ds, subset), mu_after = centroid(once, subset);
        for (std::size_t c = 0; c < d; ++c) {
            worst_mu = std::max(worst_mu, std::abs(mu[c] - mu_after[c]));
        }
        const Dataset twice = centric_set_transform(once, subset, l2);
        const Dataset direct = centric_set_transform(ds, subset, l1 * l2);
        for (std::size_t c = 0; c < ds.coords().size(); ++c) {
            worst_comp = std::max(worst_comp, std::abs(twice.coords()[c] - direct.coords()[c]));
        }
        const Dataset same = centric_set_transform(ds, subset, 1.0);
        identity = identity && std::memcmp(same.coords().data(), ds.coords().data(),
                                           ds.coords().size() * sizeof(double)) == 0;
    }
    return {worst_mu <= 1e-12 && worst_comp <= 1e-12 && identity,
            "1000 draws; max centroid drift " + fmt("%.3g", worst_mu) + ", max composition gap " +
                fmt("%.3g", worst_comp) + " (tol 1e-12), lambda = 1 byte-identical " + (identity ? "yes" : "no")};
}

Outcome mixed_direction() {
    const auto w = find_mixed_direction_witness(8);
    if (!w) {
        return {false, "no witness found"};
    }
    const bool pass = !w->check.valid && w->within_increase.same_cluster &&
                      w->within_increase.after > w->within_increase.before && !w->cross_decrease.same_cluster &&
                      w->cross_decrease.after < w->cross_decrease.before && w->verdict.verdict == Verdict::preserved;
    return {pass, "within pair (" + std::to_string(w->within_increase.i) + "," + std::to_string(w->within_increase.j) +
                      ") " + fmt("%.4f", w->within_increase.before) + " -> " + fmt("%.4f", w->within_increase.after) +
                      ", cross pair (" + std::to_string(w->cross_decrease.i) + "," +
                      std::to_string(w->cross_decrease.j) + ") " + fmt("%.4f", w->cross_decrease.before) + " -> " +
                      fmt("%.4f", w->cross_decrease.after) + "; checker says invalid, optimum preserved"};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism(const std::string& config_path) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("centric_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string config = config_path;
    if (config.empty()) {
        config = (dir / "config.json").string();
        write_json_file(config, to_json(default_experiment_config(false)));
    }
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "4", "1"}) {
        ::setenv("CENTRIC_KIT_THREADS", threads, 1);
        const std::string out = (dir / ("report_" + std::to_string(outputs.size()) + ".json")).string();
        const char* argv[] = {"centric-kit", "experiment", "--config", config.c_str(), "-o", out.c_str()};
        std::ostringstream sink_out, sink_err;
        if (run(6, argv, sink_out, sink_err) != 0) {
            fs::remove_all(dir);
            return {false, "experiment exited non-zero: " + sink_err.str()};
        }
        outputs.push_back(slurp(out));
    }
    ::unsetenv("CENTRIC_KIT_THREADS");
    fs::remove_all(dir);
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[1] == outputs[2];
    return {same, "3 runs (CENTRIC_KIT_THREADS = 1, 4, 1), " + std::to_string(outputs[0].size()) + "-byte reports " +
                      (same ? "identical" : "DIFFER")};
}

} // namespace

int main(int argc, char** argv) {
    const std::string config_path = argc > 1 ? argv[1] : "";

    report(1, "cost-form equivalence", cost_forms, 10.0);
    report(2, "Gamma++ oracle suite", [] { return preservation_suite(SuiteTransform::gamma_plus_plus); }, 60.0);
    report(3, "Gamma* oracle suite", [] { return preservation_suite(SuiteTransform::gamma_star); });
    report(4, "quadratic certification of h(lambda)", quadratic_certification);
    report(5, "endpoint dominance", endpoint_dominance);
    report(6, "directional two-squares reproduction", [&] { return directional_reproduction(desk_config(config_path)); },
           300.0);
    report(7, "centric invariants", centric_invariants);
    report(8, "mixed-direction witness", mixed_direction);
    report(9, "experiment determinism", [&] { return determinism(config_path); });

    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
