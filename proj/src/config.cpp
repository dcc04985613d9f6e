#include "cigrate/config.hpp"

#include "cigrate/error.hpp"

namespace cigrate {

namespace {

bool subtree_has_key(const YamlNode& node, std::string_view key) {
  if (node.is_mapping()) {
    for (const auto& [k, v] : node.entries()) {
      if (k == key) return true;
      if (subtree_has_key(v, key)) return true;
    }
  } else if (node.is_sequence()) {
    for (const auto& item : node.items())
      if (subtree_has_key(item, key)) return true;
  }
  return false;
}

}  // namespace

const char* dialect_name(CiDialect d) {
  return d == CiDialect::TravisCI ? "travis" : "gha";
}

CiDialect dialect_from_name(std::string_view s) {
  if (s == "travis" || s == "travis-ci" || s == "travisci")
    return CiDialect::TravisCI;
  if (s == "gha" || s == "github-actions" || s == "githubactions" ||
      s == "actions")
    return CiDialect::GitHubActions;
  throw Error(ErrorCode::WrongDialect,
              "unknown dialect '" + std::string(s) + "' (expected travis|gha)");
}

CiDialect other_dialect(CiDialect d) {
  return d == CiDialect::TravisCI ? CiDialect::GitHubActions
                                  : CiDialect::TravisCI;
}

RawConfig parse_config(std::string_view bytes, CiDialect dialect,
                       std::string source_path) {
  YamlNode root = parse_yaml(bytes);
  if (!root.is_mapping())
    throw Error(ErrorCode::RootNotMapping,
                "config root must be a mapping" +
                    (source_path.empty() ? "" : " (" + source_path + ")"));
  RawConfig config;
  config.dialect = dialect;
  config.source_path = std::move(source_path);
  config.document = std::move(root);
  config.byte_length = bytes.size();
  return config;
}

std::string serialize_config(const RawConfig& config) {
  return serialize_yaml(config.document);
}

CiDialect detect_dialect(std::string_view bytes) {
  YamlNode root = parse_yaml(bytes);
  if (!root.is_mapping())
    throw Error(ErrorCode::RootNotMapping, "config root must be a mapping");

  bool has_runs_on = subtree_has_key(root, "runs-on");
  if (root.has("jobs") && (root.has("on") || has_runs_on))
    return CiDialect::GitHubActions;

  static const char* kTravisSignals[] = {"language", "script",  "install",
                                         "dist",     "addons", "branches"};
  for (const char* key : kTravisSignals) {
    if (root.has(key) && !has_runs_on) return CiDialect::TravisCI;
  }
  throw Error(ErrorCode::AmbiguousDialect,
              "no dialect signal keys found in root mapping");
}

}  // namespace cigrate
