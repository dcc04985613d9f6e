#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cigrate/config.hpp"

namespace cigrate {

// Coarse CI feature buckets used for feature-level analysis and few-shot
// example ranking. Keys with no recognized category map to Other and are
// excluded from feature sets.
enum class FeatureCategory {
  MatrixBuild,
  EnvironmentVariables,
  DeploymentSteps,
  Caching,
  Scripts,
  Triggers,
  OsTargets,
  Services,
  Addons,
  Notifications,
  Stages,
  Other,
};

const char* feature_category_name(FeatureCategory c);

using FeatureSet = std::set<FeatureCategory>;

struct NormalizedConfig {
  CiDialect dialect = CiDialect::TravisCI;
  YamlNode document;
  FeatureSet feature_set;

  RawConfig to_raw() const { return RawConfig{dialect, "", document, 0}; }
  std::string serialize() const { return serialize_yaml(document); }
};

struct TokenSequence {
  std::vector<std::string> tokens;

  bool operator==(const TokenSequence&) const = default;
};

// Canonicalizes a config for comparison: inert null values and empty
// collections are pruned, and the root mapping's keys are sorted into the
// dialect's canonical order. Sequence order is never touched. Idempotent.
NormalizedConfig normalize(const RawConfig& config);

// Maximal runs of [A-Za-z0-9_.$/-]; everything else separates. Case kept.
TokenSequence tokenize(std::string_view text);

// Feature categories present in the config (pruned view of the document).
FeatureSet categorize_features(const RawConfig& config);

}  // namespace cigrate
