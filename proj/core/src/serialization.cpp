#include "centric/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace centric {

using nlohmann::json;

namespace {

/// Accept both `two-squares-3d` and `two_squares_3d` style names.
std::string normalize(std::string name) {
    std::replace(name.begin(), name.end(), '-', '_');
    return name;
}

template <class T>
T value_or(const json& j, const char* key, T fallback) {
    const auto it = j.find(key);
    return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

} // namespace

void check_schema(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("expected a JSON object");
    }
    if (const auto it = j.find("schema"); it != j.end() && it->get<int>() != kSchemaVersion) {
        throw std::invalid_argument("unsupported schema version " + it->dump());
    }
}

json finite_or_null(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

std::string to_string(TransformKind kind) {
    switch (kind) {
    case TransformKind::gamma_star:
        return "gamma_star";
    case TransformKind::gamma_plus_plus:
        return "gamma_plus_plus";
    case TransformKind::centric_set:
        return "centric_set";
    case TransformKind::angular:
        return "angular";
    }
    return "unknown";
}

TransformKind transform_kind_from_string(const std::string& name) {
    const std::string n = normalize(name);
    if (n == "gamma_star") {
        return TransformKind::gamma_star;
    }
    if (n == "gamma_plus_plus") {
        return TransformKind::gamma_plus_plus;
    }
    if (n == "centric_set") {
        return TransformKind::centric_set;
    }
    if (n == "angular") {
        return TransformKind::angular;
    }
    throw std::invalid_argument("unknown transform kind '" + name + "'");
}

std::string to_string(GenKind kind) {
    return kind == GenKind::two_squares_3d ? "two_squares_3d" : "gaussian_blobs";
}

GenKind gen_kind_from_string(const std::string& name) {
    const std::string n = normalize(name);
    if (n == "two_squares_3d") {
        return GenKind::two_squares_3d;
    }
    if (n == "gaussian_blobs") {
        return GenKind::gaussian_blobs;
    }
    throw std::invalid_argument("unknown generator kind '" + name + "'");
}

std::string to_string(InitMethod init) {
    return init == InitMethod::kmeans_plus_plus ? "kmeans++" : "uniform";
}

InitMethod init_method_from_string(const std::string& name) {
    const std::string n = normalize(name);
    if (n == "kmeans++" || n == "kmeans_plus_plus") {
        return InitMethod::kmeans_plus_plus;
    }
    if (n == "uniform" || n == "uniform_random_assignment") {
        return InitMethod::uniform_random_assignment;
    }
    throw std::invalid_argument("unknown init method '" + name + "'");
}

std::string to_string(SubsetMode mode) { return mode == SubsetMode::ball ? "ball" : "uniform"; }

SubsetMode subset_mode_from_string(const std::string& name) {
    if (name == "ball") {
        return SubsetMode::ball;
    }
    if (name == "uniform") {
        return SubsetMode::uniform;
    }
    throw std::invalid_argument("unknown subset mode '" + name + "'");
}

json to_json(const TransformSpec& spec) {
    json j = {{"schema", kSchemaVersion}, {"kind", to_string(spec.kind)}};
    j["cluster"] = spec.cluster ? json(*spec.cluster) : json(nullptr);
    j["subset"] = spec.subset;
    j["lambda"] = spec.lambda;
    j["factor"] = spec.factor;
    j["axis"] = spec.axis;
    j["center"] = spec.center;
    return j;
}

TransformSpec transform_spec_from_json(const json& j) {
    check_schema(j);
    TransformSpec spec;
    spec.kind = transform_kind_from_string(j.at("kind").get<std::string>());
    if (const auto it = j.find("cluster"); it != j.end() && !it->is_null()) {
        spec.cluster = it->get<int>();
    }
    spec.subset = value_or<IndexSet>(j, "subset", {});
    spec.lambda = value_or(j, "lambda", 1.0);
    spec.factor = value_or(j, "factor", 1.0);
    spec.axis = value_or<Vector>(j, "axis", {});
    spec.center = value_or<Vector>(j, "center", {});
    return spec;
}

std::vector<TransformSpec> transform_pipeline_from_json(const json& j) {
    const json* list = &j;
    if (j.is_object()) {
        check_schema(j);
        if (!j.contains("transforms")) {
            return {transform_spec_from_json(j)};
        }
        list = &j.at("transforms");
    }
    if (!list->is_array()) {
        throw std::invalid_argument("transform pipeline must be an array");
    }
    std::vector<TransformSpec> out;
    for (const auto& item : *list) {
        out.push_back(transform_spec_from_json(item));
    }
    return out;
}

json to_json(const GenSpec& spec) {
    json j = {{"schema", kSchemaVersion}, {"kind", to_string(spec.kind)}, {"seed", spec.seed}};
    if (spec.kind == GenKind::two_squares_3d) {
        j["n"] = spec.n;
        j["edge"] = spec.edge;
    } else {
        j["k"] = spec.k;
        j["n_per"] = spec.n_per;
        j["dim"] = spec.dim;
        j["spread"] = spec.spread;
        j["separation"] = spec.separation;
    }
    return j;
}

GenSpec gen_spec_from_json(const json& j) {
    check_schema(j);
    GenSpec spec;
    spec.kind = gen_kind_from_string(j.at("kind").get<std::string>());
    spec.n = value_or(j, "n", spec.n);
    spec.edge = value_or(j, "edge", spec.edge);
    spec.k = value_or(j, "k", spec.k);
    spec.n_per = value_or(j, "n_per", spec.n_per);
    spec.dim = value_or(j, "dim", spec.dim);
    spec.spread = value_or(j, "spread", spec.spread);
    spec.separation = value_or(j, "separation", spec.separation);
    spec.seed = value_or(j, "seed", spec.seed);
    return spec;
}

json to_json(const LloydConfig& config) {
    return {{"k", config.k},
            {"restarts", config.restarts},
            {"max_iters", config.max_iters},
            {"tol", config.tol},
            {"seed", config.seed},
            {"init", to_string(config.init)}};
}

LloydConfig lloyd_config_from_json(const json& j) {
    check_schema(j);
    LloydConfig config;
    config.k = value_or(j, "k", config.k);
    config.restarts = value_or(j, "restarts", config.restarts);
    config.max_iters = value_or(j, "max_iters", config.max_iters);
    config.tol = value_or(j, "tol", config.tol);
    config.seed = value_or(j, "seed", config.seed);
    if (j.contains("init")) {
        config.init = init_method_from_string(j.at("init").get<std::string>());
    }
    return config;
}

json to_json(const ClusteringResult& result) {
    json j = {{"schema", kSchemaVersion},
              {"k", result.partition.k()},
              {"cost", result.cost},
              {"iterations", result.iterations},
              {"converged", result.converged},
              {"restart_costs", result.restart_costs}};
    if (result.optimality_gap) {
        j["optimality_gap"] = finite_or_null(*result.optimality_gap);
    }
    return j;
}

json to_json(const PreservationVerdict& verdict) {
    return {{"verdict", to_string(verdict.verdict)},
            {"pre_cost", verdict.pre_cost},
            {"post_cost", verdict.post_cost},
            {"gap_pre", finite_or_null(verdict.gap_pre)},
            {"gap_post", finite_or_null(verdict.gap_post)},
            {"lambda", verdict.lambda},
            {"subset_size", verdict.subset_size}};
}

} // namespace centric
