#ifndef CENTRIC_SERIALIZATION_HPP
#define CENTRIC_SERIALIZATION_HPP

#include <nlohmann/json.hpp>

#include "centric/analysis.hpp"
#include "centric/datagen.hpp"
#include "centric/kmeans.hpp"
#include "centric/transforms.hpp"

/**
 * @file serialization.hpp
 *
 * @brief JSON forms of the configuration and result types.
 *
 * Top-level documents carry `"schema": 1`. Readers accept the field's absence
 * for nested objects and reject any other schema number.
 */

namespace centric {

inline constexpr int kSchemaVersion = 1;

/// Throws std::invalid_argument if `j` declares a schema other than kSchemaVersion.
void check_schema(const nlohmann::json& j);

std::string to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& name);

std::string to_string(GenKind kind);
GenKind gen_kind_from_string(const std::string& name);

std::string to_string(InitMethod init);
InitMethod init_method_from_string(const std::string& name);

std::string to_string(SubsetMode mode);
SubsetMode subset_mode_from_string(const std::string& name);

nlohmann::json to_json(const TransformSpec& spec);
TransformSpec transform_spec_from_json(const nlohmann::json& j);

/// Accepts a single spec object, an array of specs, or {"transforms": [...]}.
std::vector<TransformSpec> transform_pipeline_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GenSpec& spec);
GenSpec gen_spec_from_json(const nlohmann::json& j);

/// `threads` is deliberately not serialized; it never changes results.
nlohmann::json to_json(const LloydConfig& config);
LloydConfig lloyd_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ClusteringResult& result);

/// {verdict, pre_cost, post_cost, gap_pre, gap_post, lambda, subset_size}.
nlohmann::json to_json(const PreservationVerdict& verdict);

/// JSON has no infinity; non-finite values become null.
nlohmann::json finite_or_null(double value);

} // namespace centric

#endif
