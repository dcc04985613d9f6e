#include "cigrate/normalize.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace cigrate {

namespace {

// Canonical root-level key order per dialect; unlisted keys follow
// alphabetically.
const std::vector<std::string>& root_key_order(CiDialect d) {
  static const std::vector<std::string> travis = {
      "language",    "os",          "dist",          "env",
      "cache",       "before_install", "install",    "before_script",
      "script",      "after_success", "after_failure", "after_script",
      "jobs",        "matrix",      "branches",      "addons",
      "services",    "notifications", "deploy",
  };
  static const std::vector<std::string> gha = {"name", "on", "env", "jobs"};
  return d == CiDialect::TravisCI ? travis : gha;
}

// Drops mapping entries whose value is an inert null or an (after pruning)
// empty collection. The GHA `on` subtree is exempt: bare event keys like
// `push:` are meaningful there. Sequence items are never dropped.
void prune(YamlNode& node, bool exempt, CiDialect dialect, bool at_root) {
  if (node.is_mapping()) {
    std::vector<YamlNode::Entry> kept;
    kept.reserve(node.entries().size());
    for (auto& [key, value] : node.entries()) {
      bool child_exempt =
          exempt || (at_root && dialect == CiDialect::GitHubActions && key == "on");
      prune(value, child_exempt, dialect, false);
      if (!child_exempt) {
        if (value.is_null()) continue;
        if (!value.is_scalar() && value.empty()) continue;
      }
      kept.emplace_back(std::move(key), std::move(value));
    }
    node.entries() = std::move(kept);
  } else if (node.is_sequence()) {
    for (auto& item : node.items()) prune(item, exempt, dialect, false);
  }
}

void sort_root_keys(YamlNode& root, CiDialect dialect) {
  const auto& order = root_key_order(dialect);
  auto rank = [&](const std::string& key) -> size_t {
    for (size_t i = 0; i < order.size(); ++i)
      if (order[i] == key) return i;
    return order.size();
  };
  std::stable_sort(root.entries().begin(), root.entries().end(),
                   [&](const YamlNode::Entry& a, const YamlNode::Entry& b) {
                     size_t ra = rank(a.first), rb = rank(b.first);
                     if (ra != rb) return ra < rb;
                     if (ra == order.size()) return a.first < b.first;
                     return false;
                   });
}

bool is_token_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '.' || c == '$' || c == '/' ||
         c == '-';
}

bool uses_matches(const std::string& ref, const char* const* markers,
                  size_t count) {
  std::string lower = ref;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (size_t i = 0; i < count; ++i)
    if (lower.find(markers[i]) != std::string::npos) return true;
  return false;
}

bool is_cache_action(const std::string& ref) {
  return ref.rfind("actions/cache", 0) == 0;
}

bool is_deployment_action(const std::string& ref) {
  static const char* kMarkers[] = {"deploy",  "gh-pages",      "release",
                                   "heroku",  "netlify",       "s3-sync",
                                   "pages-artifact"};
  return uses_matches(ref, kMarkers, std::size(kMarkers));
}

void categorize_travis(const YamlNode& root, FeatureSet& out) {
  static const std::vector<std::pair<std::string, FeatureCategory>> kTable = {
      {"matrix", FeatureCategory::MatrixBuild},
      {"jobs", FeatureCategory::MatrixBuild},
      {"env", FeatureCategory::EnvironmentVariables},
      {"deploy", FeatureCategory::DeploymentSteps},
      {"cache", FeatureCategory::Caching},
      {"before_install", FeatureCategory::Scripts},
      {"install", FeatureCategory::Scripts},
      {"before_script", FeatureCategory::Scripts},
      {"script", FeatureCategory::Scripts},
      {"after_success", FeatureCategory::Scripts},
      {"after_failure", FeatureCategory::Scripts},
      {"after_script", FeatureCategory::Scripts},
      {"branches", FeatureCategory::Triggers},
      {"os", FeatureCategory::OsTargets},
      {"dist", FeatureCategory::OsTargets},
      {"services", FeatureCategory::Services},
      {"addons", FeatureCategory::Addons},
      {"notifications", FeatureCategory::Notifications},
      {"stages", FeatureCategory::Stages},
  };
  for (const auto& [key, value] : root.entries()) {
    (void)value;
    for (const auto& [name, cat] : kTable)
      if (key == name) out.insert(cat);
  }
}

void categorize_gha_steps(const YamlNode& steps, FeatureSet& out) {
  if (!steps.is_sequence()) return;
  for (const auto& step : steps.items()) {
    if (!step.is_mapping()) continue;
    if (step.has("run")) out.insert(FeatureCategory::Scripts);
    if (const YamlNode* uses = step.find("uses"); uses && uses->is_scalar()) {
      if (is_cache_action(uses->text())) out.insert(FeatureCategory::Caching);
      if (is_deployment_action(uses->text()))
        out.insert(FeatureCategory::DeploymentSteps);
    }
  }
}

void categorize_gha(const YamlNode& root, FeatureSet& out) {
  if (root.has("on")) out.insert(FeatureCategory::Triggers);
  if (root.has("env")) out.insert(FeatureCategory::EnvironmentVariables);
  const YamlNode* jobs = root.find("jobs");
  if (!jobs || !jobs->is_mapping()) return;
  for (const auto& [id, job] : jobs->entries()) {
    (void)id;
    if (!job.is_mapping()) continue;
    if (job.has("runs-on")) out.insert(FeatureCategory::OsTargets);
    if (job.has("env")) out.insert(FeatureCategory::EnvironmentVariables);
    if (job.has("services")) out.insert(FeatureCategory::Services);
    if (const YamlNode* strategy = job.find("strategy");
        strategy && strategy->is_mapping() && strategy->has("matrix"))
      out.insert(FeatureCategory::MatrixBuild);
    if (const YamlNode* steps = job.find("steps"))
      categorize_gha_steps(*steps, out);
  }
}

}  // namespace

const char* feature_category_name(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::MatrixBuild: return "MatrixBuild";
    case FeatureCategory::EnvironmentVariables: return "EnvironmentVariables";
    case FeatureCategory::DeploymentSteps: return "DeploymentSteps";
    case FeatureCategory::Caching: return "Caching";
    case FeatureCategory::Scripts: return "Scripts";
    case FeatureCategory::Triggers: return "Triggers";
    case FeatureCategory::OsTargets: return "OsTargets";
    case FeatureCategory::Services: return "Services";
    case FeatureCategory::Addons: return "Addons";
    case FeatureCategory::Notifications: return "Notifications";
    case FeatureCategory::Stages: return "Stages";
    case FeatureCategory::Other: return "Other";
  }
  return "Other";
}

NormalizedConfig normalize(const RawConfig& config) {
  NormalizedConfig out;
  out.dialect = config.dialect;
  out.document = config.document;
  prune(out.document, false, config.dialect, true);
  sort_root_keys(out.document, config.dialect);
  RawConfig pruned{config.dialect, "", out.document, 0};
  out.feature_set = categorize_features(pruned);
  return out;
}

TokenSequence tokenize(std::string_view text) {
  TokenSequence seq;
  std::string current;
  for (char c : text) {
    if (is_token_char(c)) {
      current += c;
    } else if (!current.empty()) {
      seq.tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) seq.tokens.push_back(std::move(current));
  return seq;
}

FeatureSet categorize_features(const RawConfig& config) {
  // Categorization looks at the pruned view so inert keys (null values,
  // empty collections) never count as features.
  YamlNode doc = config.document;
  prune(doc, false, config.dialect, true);
  FeatureSet out;
  if (config.dialect == CiDialect::TravisCI)
    categorize_travis(doc, out);
  else
    categorize_gha(doc, out);
  return out;
}

}  // namespace cigrate
