#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "centric/csv.hpp"
#include "centric/datagen.hpp"
#include "centric/kmeans.hpp"
#include "centric/serialization.hpp"
#include "centric/transforms.hpp"
#include "cli/experiment.hpp"
#include "cli/suite.hpp"
#include "cli/svg_plot.hpp"

namespace centric::cli {

using nlohmann::json;

std::string provenance_path(const std::string& output) { return output + ".provenance.json"; }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

namespace {

/// Thrown by command bodies to report a verification failure after output is written.
struct Violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
void take_if_set(const CLI::Option* option, const T& value, T& target) {
    if (option->count() > 0) {
        target = value;
    }
}

json invocation(const std::string& command, int argc, const char* const* argv) {
    json args = json::array();
    for (int i = 1; i < argc; ++i) {
        args.push_back(argv[i]);
    }
    return {{"schema", kSchemaVersion}, {"command", command}, {"args", args}};
}

json read_sidecar_steps(const std::string& input) {
    const std::string path = provenance_path(input);
    if (!std::filesystem::exists(path)) {
        return json::array();
    }
    const json sidecar = read_json_file(path);
    json steps = sidecar.value("steps", json::array());
    if (steps.empty()) {
        steps.push_back(sidecar);
    }
    return steps;
}

std::ostream& summary_stream(const std::string& out_path, std::ostream& out, std::ostream& err) {
    return out_path.empty() ? err : out;
}

struct Context {
    int argc;
    const char* const* argv;
    std::ostream& out;
    std::ostream& err;
};

using Action = std::function<int()>;

// ---------------------------------------------------------------- generate

Action add_generate(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("generate", "Write a labeled synthetic dataset as CSV");
    struct State {
        std::string kind = "two-squares-3d";
        GenSpec spec;
        std::string config, out;
    };
    auto s = std::make_shared<State>();
    auto* kind = sub->add_option("--kind", s->kind, "two-squares-3d or gaussian-blobs");
    auto* n = sub->add_option("--n", s->spec.n, "Total points (two-squares-3d)");
    auto* edge = sub->add_option("--edge", s->spec.edge, "Square edge length");
    auto* k = sub->add_option("--k", s->spec.k, "Number of blobs");
    auto* n_per = sub->add_option("--n-per", s->spec.n_per, "Points per blob");
    auto* dim = sub->add_option("--dim", s->spec.dim, "Blob dimension");
    auto* spread = sub->add_option("--spread", s->spec.spread, "Blob standard deviation");
    auto* separation = sub->add_option("--separation", s->spec.separation, "Minimum distance between blob centers");
    auto* seed = sub->add_option("--seed", s->spec.seed, "Generator seed");
    sub->add_option("--config", s->config, "GenSpec JSON file; flags given on the command line override it")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--out", s->out, "Output CSV (default: stdout)");

    return [=, &ctx]() {
        GenSpec spec;
        if (!s->config.empty()) {
            spec = gen_spec_from_json(read_json_file(s->config));
        }
        if (kind->count() > 0) {
            spec.kind = gen_kind_from_string(s->kind);
        }
        take_if_set(n, s->spec.n, spec.n);
        take_if_set(edge, s->spec.edge, spec.edge);
        take_if_set(k, s->spec.k, spec.k);
        take_if_set(n_per, s->spec.n_per, spec.n_per);
        take_if_set(dim, s->spec.dim, spec.dim);
        take_if_set(spread, s->spec.spread, spec.spread);
        take_if_set(separation, s->spec.separation, spec.separation);
        take_if_set(seed, s->spec.seed, spec.seed);

        const LabeledDataset data = generate(spec);
        if (s->out.empty()) {
            write_dataset_csv(ctx.out, data.dataset, &data.labels);
        } else {
            write_dataset_csv(s->out, data.dataset, &data.labels);
            json sidecar = invocation("generate", ctx.argc, ctx.argv);
            sidecar["generator"] = to_json(spec);
            write_json_file(provenance_path(s->out), sidecar);
        }
        summary_stream(s->out, ctx.out, ctx.err)
            << "generated " << to_string(spec.kind) << ": n=" << data.dataset.size() << " d=" << data.dataset.dim()
            << " k=" << data.labels.k() << " seed=" << spec.seed << '\n';
        return kExitOk;
    };
}

// ---------------------------------------------------------------- transform

Action add_transform(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("transform", "Apply a transform pipeline to a labeled CSV");
    struct State {
        std::string input, config, labels, out;
        std::string kind;
        int cluster = 0;
        IndexSet subset;
        double lambda = 1.0, factor = 1.0;
        Vector axis, center;
        std::uint64_t seed = 0;
    };
    auto s = std::make_shared<State>();
    sub->add_option("input", s->input, "Input dataset CSV")->required()->check(CLI::ExistingFile);
    sub->add_option("--config,--spec", s->config,
                    "TransformSpec JSON: one object, an array, or {\"transforms\": [...]}")
        ->check(CLI::ExistingFile);
    sub->add_option("--labels", s->labels, "Labels CSV, if the input has no label column")->check(CLI::ExistingFile);
    sub->add_option("--kind", s->kind, "Single transform: gamma-star, gamma-plus-plus, centric-set or angular");
    auto* cluster = sub->add_option("--cluster", s->cluster, "Target cluster");
    sub->add_option("--subset", s->subset, "Point indices, comma separated")->delimiter(',');
    sub->add_option("--lambda", s->lambda, "Contraction factor in (0, 1]");
    sub->add_option("--factor", s->factor, "Angular factor");
    sub->add_option("--axis", s->axis, "Angular axis, comma separated")->delimiter(',');
    sub->add_option("--center", s->center, "Angular center, comma separated")->delimiter(',');
    sub->add_option("--seed", s->seed, "Unused; accepted for uniform invocation");
    sub->add_option("-o,--out", s->out, "Output CSV (default: stdout)");

    return [=, &ctx]() {
        LabeledCsv input = read_dataset_csv(s->input);
        if (!s->labels.empty()) {
            input.labels = read_labels_csv(s->labels);
        }
        std::vector<TransformSpec> pipeline;
        if (!s->config.empty()) {
            pipeline = transform_pipeline_from_json(read_json_file(s->config));
        }
        if (!s->kind.empty()) {
            TransformSpec spec;
            spec.kind = transform_kind_from_string(s->kind);
            if (cluster->count() > 0) {
                spec.cluster = s->cluster;
            }
            spec.subset = s->subset;
            spec.lambda = s->lambda;
            spec.factor = s->factor;
            spec.axis = s->axis;
            spec.center = s->center;
            pipeline.push_back(std::move(spec));
        }
        if (pipeline.empty()) {
            throw std::invalid_argument("no transform given; pass --config FILE or --kind");
        }

        const Partition* labels = input.labels ? &*input.labels : nullptr;
        Dataset data = input.dataset;
        json steps = read_sidecar_steps(s->input);
        std::size_t clamped = 0;
        for (const auto& spec : pipeline) {
            AppliedTransform applied = apply_transform(data, labels, spec);
            data = std::move(applied.dataset);
            clamped += applied.clamped;
            json step = to_json(spec);
            step["clamped"] = applied.clamped;
            steps.push_back(std::move(step));
        }

        if (s->out.empty()) {
            write_dataset_csv(ctx.out, data, labels);
        } else {
            write_dataset_csv(s->out, data, labels);
            json sidecar = invocation("transform", ctx.argc, ctx.argv);
            sidecar["input"] = s->input;
            sidecar["steps"] = steps;
            write_json_file(provenance_path(s->out), sidecar);
        }
        summary_stream(s->out, ctx.out, ctx.err)
            << "applied " << pipeline.size() << " transform(s) to n=" << data.size() << " points"
            << (clamped > 0 ? ", " + std::to_string(clamped) + " angles clamped" : std::string()) << '\n';
        return kExitOk;
    };
}

// ---------------------------------------------------------------- cluster

Action add_cluster(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("cluster", "Cluster a CSV with Lloyd or the exact oracle");
    struct State {
        std::string input, config, reference, out, result;
        LloydConfig lloyd;
        std::string init = "kmeans++";
        bool ideal = false;
        double max_partitions = IdealOptions{}.max_partitions;
    };
    auto s = std::make_shared<State>();
    s->lloyd.threads = 0;
    sub->add_option("input", s->input, "Input dataset CSV")->required()->check(CLI::ExistingFile);
    auto* k = sub->add_option("--k", s->lloyd.k, "Number of clusters");
    auto* restarts = sub->add_option("--restarts", s->lloyd.restarts, "Lloyd restarts");
    auto* iters = sub->add_option("--max-iters", s->lloyd.max_iters, "Lloyd iteration cap per restart");
    auto* tol = sub->add_option("--tol", s->lloyd.tol, "Relative cost improvement stopping threshold");
    auto* init = sub->add_option("--init", s->init, "kmeans++ or uniform");
    auto* seed = sub->add_option("--seed", s->lloyd.seed, "Master seed");
    sub->add_option("--threads", s->lloyd.threads, "Worker threads for restarts (0 = auto)");
    sub->add_flag("--ideal", s->ideal, "Exact optimum by enumeration (small n only)");
    sub->add_option("--max-partitions", s->max_partitions, "Oracle budget");
    sub->add_option("--config", s->config, "LloydConfig JSON file")->check(CLI::ExistingFile);
    sub->add_option("--reference", s->reference, "Labels CSV to score against")->check(CLI::ExistingFile);
    sub->add_option("-o,--out", s->out, "Output labels CSV (default: stdout)");
    sub->add_option("--result", s->result, "ClusteringResult JSON (default: <out>.result.json)");

    return [=, &ctx]() {
        LloydConfig config;
        if (!s->config.empty()) {
            config = lloyd_config_from_json(read_json_file(s->config));
        }
        take_if_set(k, s->lloyd.k, config.k);
        take_if_set(restarts, s->lloyd.restarts, config.restarts);
        take_if_set(iters, s->lloyd.max_iters, config.max_iters);
        take_if_set(tol, s->lloyd.tol, config.tol);
        take_if_set(seed, s->lloyd.seed, config.seed);
        if (init->count() > 0) {
            config.init = init_method_from_string(s->init);
        }
        config.threads = s->lloyd.threads;

        const LabeledCsv input = read_dataset_csv(s->input);
        ClusteringResult result;
        if (s->ideal) {
            try {
                result = kmeans_ideal(input.dataset, config.k, IdealOptions{s->max_partitions});
            } catch (const OracleBudgetError& e) {
                throw std::runtime_error(std::string(e.what()) + "; drop --ideal to cluster with Lloyd");
            }
        } else {
            result = lloyd(input.dataset, config);
        }

        json report = to_json(result);
        report["method"] = s->ideal ? "ideal" : "lloyd";
        if (!s->ideal) {
            report["config"] = to_json(config);
        }
        std::optional<std::size_t> error;
        if (!s->reference.empty()) {
            error = clustering_error(read_labels_csv(s->reference), result.partition);
            report["clustering_error"] = *error;
        }

        std::ostream& summary = summary_stream(s->out, ctx.out, ctx.err);
        if (s->out.empty()) {
            write_labels_csv(ctx.out, result.partition);
        } else {
            write_labels_csv(s->out, result.partition);
            json sidecar = invocation("cluster", ctx.argc, ctx.argv);
            sidecar["input"] = s->input;
            write_json_file(provenance_path(s->out), sidecar);
        }
        const std::string result_path = !s->result.empty() ? s->result
                                        : !s->out.empty()  ? s->out + ".result.json"
                                                           : std::string();
        if (result_path.empty()) {
            ctx.err << report.dump(2) << '\n';
        } else {
            write_json_file(result_path, report);
        }
        summary << (s->ideal ? "ideal" : "lloyd") << ": k=" << config.k << " cost=" << format_double(result.cost);
        if (error) {
            summary << " clustering_error=" << *error;
        }
        summary << '\n';
        return kExitOk;
    };
}

// ---------------------------------------------------------------- verify

SuiteConfig suite_config_from_json(const json& j) {
    check_schema(j);
    SuiteConfig c;
    c.instances = j.value("instances", c.instances);
    c.n = j.value("n", c.n);
    c.ks = j.value("ks", c.ks);
    c.dims = j.value("dims", c.dims);
    c.lambdas = j.value("lambdas", c.lambdas);
    c.subset_min = j.value("subset_min", c.subset_min);
    c.subset_max = j.value("subset_max", c.subset_max);
    if (j.contains("transform")) {
        c.transform = suite_transform_from_string(j.at("transform").get<std::string>());
    }
    c.seed = j.value("seed", c.seed);
    c.oracle.max_partitions = j.value("max_partitions", c.oracle.max_partitions);
    return c;
}

Action add_verify(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("verify", "Check that contractions preserve the exact k-means optimum");
    struct State {
        std::string input, config, out, mode = "gamma-plus-plus", subset_mode = "uniform";
        bool random_suite = false, records = false;
        SuiteConfig suite;
        std::optional<int> cluster;
        IndexSet subset;
        double fraction = 1.0 / 3.0;
        std::size_t threads = 0;
    };
    auto s = std::make_shared<State>();
    sub->add_option("input", s->input, "Dataset CSV (omit with --random-suite)")->check(CLI::ExistingFile);
    sub->add_flag("--random-suite", s->random_suite, "Generate random instances instead of reading a CSV");
    auto* mode = sub->add_option("--mode", s->mode, "gamma-plus-plus, gamma-star or both");
    auto* instances = sub->add_option("--instances", s->suite.instances, "Suite size");
    auto* n = sub->add_option("--n", s->suite.n, "Points per suite instance");
    auto* k = sub->add_option("--k", s->suite.ks, "Cluster counts, comma separated")->delimiter(',');
    auto* dims = sub->add_option("--dim", s->suite.dims, "Dimensions, comma separated")->delimiter(',');
    auto* lambdas = sub->add_option("--lambda", s->suite.lambdas, "Contraction factors, comma separated")->delimiter(',');
    auto* subset_min = sub->add_option("--subset-min", s->suite.subset_min, "Smallest contracted subset");
    auto* subset_max = sub->add_option("--subset-max", s->suite.subset_max, "Largest contracted subset");
    auto* seed = sub->add_option("--seed", s->suite.seed, "Master seed");
    auto* budget = sub->add_option("--max-partitions", s->suite.oracle.max_partitions, "Oracle budget");
    sub->add_option("--cluster", s->cluster, "Cluster of the optimum to contract (dataset mode)");
    sub->add_option("--subset", s->subset, "Point indices to contract (dataset mode)")->delimiter(',');
    sub->add_option("--fraction", s->fraction, "Subset fraction when --subset is absent");
    sub->add_option("--subset-mode", s->subset_mode, "uniform or ball");
    sub->add_flag("--records", s->records, "Include per-instance verdicts in the JSON");
    sub->add_option("--threads", s->threads, "Worker threads (0 = auto)");
    sub->add_option("--config", s->config, "Suite JSON file")->check(CLI::ExistingFile);
    sub->add_option("-o,--out", s->out, "Output JSON (default: stdout)");

    return [=, &ctx]() {
        SuiteConfig config;
        if (!s->config.empty()) {
            config = suite_config_from_json(read_json_file(s->config));
        }
        take_if_set(instances, s->suite.instances, config.instances);
        take_if_set(n, s->suite.n, config.n);
        take_if_set(k, s->suite.ks, config.ks);
        take_if_set(dims, s->suite.dims, config.dims);
        take_if_set(lambdas, s->suite.lambdas, config.lambdas);
        take_if_set(subset_min, s->suite.subset_min, config.subset_min);
        take_if_set(subset_max, s->suite.subset_max, config.subset_max);
        take_if_set(seed, s->suite.seed, config.seed);
        take_if_set(budget, s->suite.oracle.max_partitions, config.oracle.max_partitions);
        if (mode->count() > 0) {
            config.transform = suite_transform_from_string(s->mode);
        }

        SuiteSummary summary;
        bool include_records = s->records;
        if (s->random_suite) {
            if (!s->input.empty()) {
                throw std::invalid_argument("--random-suite takes no input file");
            }
            summary = run_random_suite(config, s->threads);
        } else {
            if (s->input.empty()) {
                throw std::invalid_argument("verify needs an input CSV or --random-suite");
            }
            if (config.ks.size() != 1) {
                throw std::invalid_argument("dataset mode takes a single --k");
            }
            const Dataset data = read_dataset_csv(s->input).dataset;
            const ClusteringResult ideal = kmeans_ideal(data, config.ks[0], config.oracle);
            const int cluster = s->cluster.value_or(0);
            IndexSet subset = s->subset;
            if (subset.empty()) {
                subset = sample_subset(data, ideal.partition, cluster, s->fraction,
                                       subset_mode_from_string(s->subset_mode), config.seed);
            }
            for (double lambda : config.lambdas) {
                SuiteRecord base;
                base.k = config.ks[0];
                base.dim = data.dim();
                base.cluster = cluster;
                if (config.transform != SuiteTransform::gamma_star) {
                    SuiteRecord r = base;
                    r.transform = SuiteTransform::gamma_plus_plus;
                    r.verdict = verify_theorem3(data, ideal, subset, lambda, config.oracle);
                    summary.records.push_back(std::move(r));
                }
                if (config.transform != SuiteTransform::gamma_plus_plus) {
                    SuiteRecord r = base;
                    r.transform = SuiteTransform::gamma_star;
                    r.verdict = verify_gamma_star(data, ideal, cluster, lambda, config.oracle);
                    summary.records.push_back(std::move(r));
                }
            }
            for (const auto& r : summary.records) {
                summary.preserved += r.verdict.verdict == Verdict::preserved;
                summary.tie_skipped += r.verdict.verdict == Verdict::tie_skipped;
                summary.violated += r.verdict.verdict == Verdict::violated;
            }
            include_records = true;
        }

        const json report = to_json(summary, include_records);
        if (s->out.empty()) {
            ctx.out << report.dump(2) << '\n';
        } else {
            write_json_file(s->out, report);
            write_json_file(provenance_path(s->out), invocation("verify", ctx.argc, ctx.argv));
        }
        summary_stream(s->out, ctx.out, ctx.err) << "preserved=" << summary.preserved
                                                 << " tie_skipped=" << summary.tie_skipped
                                                 << " violated=" << summary.violated << '\n';
        if (summary.violated > 0) {
            throw Violation(std::to_string(summary.violated) + " verdict(s) violated");
        }
        return kExitOk;
    };
}

// ---------------------------------------------------------------- experiment

Action add_experiment(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("experiment", "Compare Lloyd stability under Gamma and Gamma++ perturbations");
    struct State {
        std::string config, out, runs_csv;
        bool full_scale = false, timing = false;
        std::size_t repetitions = 0, threads = 0;
        std::uint64_t seed = 0;
    };
    auto s = std::make_shared<State>();
    sub->add_option("--config", s->config, "Experiment JSON file")->check(CLI::ExistingFile);
    sub->add_flag("--full-scale", s->full_scale, "Use n = 10000 points per dataset");
    auto* reps = sub->add_option("--repetitions", s->repetitions, "Override the repetition count");
    auto* seed = sub->add_option("--seed", s->seed, "Override the master seed");
    sub->add_option("--threads", s->threads, "Worker threads (0 = auto); output does not depend on it");
    sub->add_flag("--timing", s->timing, "Add wall time to the report");
    sub->add_option("-o,--out", s->out, "Report JSON (default: stdout)");
    sub->add_option("--runs-csv", s->runs_csv, "Per-run CSV");

    return [=, &ctx]() {
        ExperimentConfig config = s->config.empty() ? default_experiment_config(false)
                                                    : experiment_config_from_json(read_json_file(s->config));
        if (s->full_scale) {
            config.generator.n = 10000;
        }
        take_if_set(reps, s->repetitions, config.repetitions);
        take_if_set(seed, s->seed, config.seed);

        const ExperimentReport report = run_experiment(config, s->threads);
        const json j = to_json(report, s->timing);
        if (s->out.empty()) {
            ctx.out << j.dump(2) << '\n';
        } else {
            write_json_file(s->out, j);
            write_json_file(provenance_path(s->out), invocation("experiment", ctx.argc, ctx.argv));
        }
        if (!s->runs_csv.empty()) {
            std::ofstream csv(s->runs_csv);
            if (!csv) {
                throw std::runtime_error("cannot write " + s->runs_csv);
            }
            write_runs_csv(csv, report.runs);
        }
        std::ostream& summary = summary_stream(s->out, ctx.out, ctx.err);
        bool valid = true;
        for (const auto& arm : report.arms) {
            summary << arm.arm << ": runs=" << arm.runs << " mean_error_rate=" << format_double(arm.mean_error_rate)
                    << " std=" << format_double(arm.std_error_rate) << " max_errors=" << arm.max_errors << '\n';
            valid = valid && arm.all_kleinberg_valid;
        }
        if (!valid) {
            throw Violation("Gamma arm transform failed the Kleinberg check");
        }
        return kExitOk;
    };
}

// ---------------------------------------------------------------- plot

Action add_plot(CLI::App& app, const Context& ctx) {
    auto* sub = app.add_subcommand("plot", "Render a 2D or 3D CSV as an SVG scatter plot");
    struct State {
        std::string input, labels, config, out;
        std::vector<std::size_t> dims;
        PlotOptions options;
        bool no_labels = false;
    };
    auto s = std::make_shared<State>();
    sub->add_option("input", s->input, "Dataset CSV")->required()->check(CLI::ExistingFile);
    sub->add_option("--labels", s->labels, "Labels CSV overriding the label column")->check(CLI::ExistingFile);
    sub->add_flag("--no-labels", s->no_labels, "Draw every point in one color");
    auto* dims = sub->add_option("--dims", s->dims, "Two coordinate indices to plot, e.g. 0,2")->delimiter(',');
    auto* title = sub->add_option("--title", s->options.title, "Plot title");
    auto* width = sub->add_option("--width", s->options.width, "Width in pixels");
    auto* height = sub->add_option("--height", s->options.height, "Height in pixels");
    auto* radius = sub->add_option("--radius", s->options.radius, "Point radius in pixels");
    sub->add_option("--config", s->config, "Plot options JSON {title, dims, width, height, radius}")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--out", s->out, "Output SVG (default: stdout)");

    return [=, &ctx]() {
        PlotOptions options;
        std::vector<std::size_t> dim_pair;
        if (!s->config.empty()) {
            const json j = read_json_file(s->config);
            check_schema(j);
            options.title = j.value("title", options.title);
            options.width = j.value("width", options.width);
            options.height = j.value("height", options.height);
            options.radius = j.value("radius", options.radius);
            dim_pair = j.value("dims", dim_pair);
        }
        take_if_set(title, s->options.title, options.title);
        take_if_set(width, s->options.width, options.width);
        take_if_set(height, s->options.height, options.height);
        take_if_set(radius, s->options.radius, options.radius);
        take_if_set(dims, s->dims, dim_pair);
        if (!dim_pair.empty()) {
            if (dim_pair.size() != 2) {
                throw std::invalid_argument("--dims takes exactly two indices");
            }
            options.dims = std::make_pair(dim_pair[0], dim_pair[1]);
        }
        if (options.width < 64 || options.height < 64) {
            throw std::invalid_argument("plot must be at least 64x64 pixels");
        }

        LabeledCsv input = read_dataset_csv(s->input);
        if (!s->labels.empty()) {
            input.labels = read_labels_csv(s->labels);
        }
        const Partition* labels = (input.labels && !s->no_labels) ? &*input.labels : nullptr;
        const std::string svg = render_svg(input.dataset, labels, options);
        if (s->out.empty()) {
            ctx.out << svg;
        } else {
            std::ofstream file(s->out, std::ios::binary);
            if (!file) {
                throw std::runtime_error("cannot write " + s->out);
            }
            file << svg;
            json sidecar = invocation("plot", ctx.argc, ctx.argv);
            sidecar["input"] = s->input;
            write_json_file(provenance_path(s->out), sidecar);
            ctx.out << "wrote " << s->out << " (" << input.dataset.size() << " points)\n";
        }
        return kExitOk;
    };
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cluster-preserving transforms and k-means stability experiments", "centric-kit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "centric-kit 0.1.0");
    const Context ctx{argc, argv, out, err};

    std::vector<std::pair<CLI::App*, Action>> commands;
    for (auto add : {add_generate, add_transform, add_cluster, add_verify, add_experiment, add_plot}) {
        Action action = add(app, ctx);
        commands.emplace_back(app.get_subcommands([](CLI::App*) { return true; }).back(), std::move(action));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    for (auto& [sub, action] : commands) {
        if (!sub->parsed()) {
            continue;
        }
        try {
            return action();
        } catch (const Violation& e) {
            err << "centric-kit " << sub->get_name() << ": " << e.what() << '\n';
            return kExitViolation;
        } catch (const std::exception& e) {
            err << "centric-kit " << sub->get_name() << ": error: " << e.what() << '\n';
            return kExitUsage;
        }
    }
    return kExitUsage;
}

} // namespace centric::cli
