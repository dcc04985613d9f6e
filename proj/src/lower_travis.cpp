#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cigrate/error.hpp"
#include "cigrate/translate.hpp"
#include "translate_util.hpp"

namespace cigrate {
namespace {

using detail::LanguageInfo;

const std::vector<std::string> kPhaseOrder = {"before_install", "install",
                                              "before_script", "script"};
const std::vector<std::string> kAllPhases = {
    "before_install", "install",       "before_script", "script",
    "after_success",  "after_failure", "after_script"};

// Keys that make a jobs/matrix include entry a standalone job rather than a
// matrix value row.
const std::set<std::string> kJobDefiningKeys = {
    "stage",          "name",          "script",       "install",
    "before_install", "before_script", "after_success", "after_failure",
    "after_script"};

// Travis cache shorthand names → cached directory.
const std::vector<std::pair<std::string, std::string>> kCacheDirs = {
    {"bundler", "vendor/bundle"}, {"pip", "~/.cache/pip"},
    {"npm", "~/.npm"},            {"yarn", "~/.cache/yarn"},
    {"cargo", "~/.cargo"},        {"ccache", "~/.ccache"},
};

std::vector<std::string> collect_strings(const YamlNode& node) {
  std::vector<std::string> out;
  if (node.kind() == YamlNode::Kind::Scalar) {
    out.push_back(node.text());
  } else if (node.kind() == YamlNode::Kind::Sequence) {
    for (const YamlNode& item : node.items()) {
      if (item.kind() == YamlNode::Kind::Scalar) out.push_back(item.text());
    }
  }
  return out;
}

// "A=1 B=2" → [{A,1},{B,2}]. A token without '=' continues the previous
// value ("B=two words" → {B,"two words"}); leading bare tokens are skipped.
OrderedStrMap parse_assignments(const std::string& text) {
  OrderedStrMap out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t space = text.find(' ', pos);
    if (space == std::string::npos) space = text.size();
    const std::string tok = text.substr(pos, space - pos);
    pos = space + 1;
    if (tok.empty()) continue;
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      if (!out.empty()) out.back().second += " " + tok;
      continue;
    }
    out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return out;
}

std::string item_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

struct Lowerer {
  const YamlNode& root;
  PipelineIR ir;
  std::set<std::string> consumed;  // root keys that contributed or were warned

  explicit Lowerer(const YamlNode& r) : root(r) {}

  void warn(WarningCode code, std::string path, std::string message) {
    ir.warnings.push_back({code, std::move(path), std::move(message)});
  }

  void warn_root(WarningCode code, const std::string& key,
                 std::string message) {
    consumed.insert(key);
    warn(code, key, std::move(message));
  }

  // Reads `key` from the entry when present, falling back to the root;
  // fallback marks the root key as contributing.
  const YamlNode* view(const YamlNode* entry, std::set<std::string>* used,
                       const std::string& key) {
    if (entry) {
      if (const YamlNode* n = entry->find(key)) {
        if (used) used->insert(key);
        return n;
      }
    }
    if (const YamlNode* n = root.find(key)) {
      consumed.insert(key);
      return n;
    }
    return nullptr;
  }

  void lower_triggers() {
    const YamlNode* branches = root.find("branches");
    if (!branches) return;
    consumed.insert("branches");
    if (branches->kind() == YamlNode::Kind::Mapping) {
      if (const YamlNode* only = branches->find("only"))
        ir.triggers.branches_include = collect_strings(*only);
      if (const YamlNode* except = branches->find("except"))
        ir.triggers.branches_exclude = collect_strings(*except);
    } else {
      ir.triggers.branches_include = collect_strings(*branches);
    }
  }

  void lower_global_env(std::vector<std::string>* env_dim) {
    const YamlNode* env = root.find("env");
    if (!env) return;
    consumed.insert("env");
    auto add_global = [&](const YamlNode& item, const std::string& path) {
      if (item.kind() == YamlNode::Kind::Scalar) {
        OrderedStrMap vars = parse_assignments(item.text());
        if (vars.empty()) {
          warn(WarningCode::DroppedKey, path,
               "env entry is not a KEY=value assignment");
          return;
        }
        for (auto& kv : vars) ir.global_env.push_back(std::move(kv));
      } else if (item.kind() == YamlNode::Kind::Mapping) {
        for (const auto& [k, v] : item.entries()) {
          if (v.kind() == YamlNode::Kind::Scalar) {
            ir.global_env.emplace_back(k, v.text());
          } else {
            warn(WarningCode::DroppedKey, path + "." + k,
                 "non-scalar env value dropped");
          }
        }
      } else {
        warn(WarningCode::DroppedKey, path, "unsupported env entry shape");
      }
    };
    auto add_dim_value = [&](const YamlNode& item, const std::string& path) {
      if (item.kind() == YamlNode::Kind::Scalar) {
        env_dim->push_back(item.text());
      } else if (item.kind() == YamlNode::Kind::Mapping) {
        std::string joined;
        for (const auto& [k, v] : item.entries()) {
          if (v.kind() != YamlNode::Kind::Scalar) continue;
          if (!joined.empty()) joined += " ";
          joined += k + "=" + v.text();
        }
        if (joined.empty()) {
          warn(WarningCode::DroppedKey, path, "unsupported env entry shape");
        } else {
          env_dim->push_back(joined);
        }
      } else {
        warn(WarningCode::DroppedKey, path, "unsupported env entry shape");
      }
    };
    if (env->kind() == YamlNode::Kind::Mapping) {
      for (const auto& [key, value] : env->entries()) {
        if (key == "global") {
          if (value.kind() == YamlNode::Kind::Sequence) {
            for (std::size_t i = 0; i < value.items().size(); ++i)
              add_global(value.items()[i], item_path("env.global", i));
          } else {
            add_global(value, "env.global");
          }
        } else if (key == "matrix" || key == "jobs") {
          const std::string base = "env." + key;
          if (value.kind() == YamlNode::Kind::Sequence) {
            for (std::size_t i = 0; i < value.items().size(); ++i)
              add_dim_value(value.items()[i], item_path(base, i));
          } else {
            add_dim_value(value, base);
          }
        } else {
          warn(WarningCode::DroppedKey, "env." + key,
               "unknown env section dropped");
        }
      }
    } else if (env->kind() == YamlNode::Kind::Sequence) {
      for (std::size_t i = 0; i < env->items().size(); ++i)
        add_dim_value(env->items()[i], item_path("env", i));
    } else {
      add_global(*env, "env");
    }
  }

  void lower_language(const YamlNode* entry, std::set<std::string>* used,
                      JobIR& job) {
    const LanguageInfo* primary = nullptr;
    if (const YamlNode* lang = view(entry, used, "language")) {
      if (lang->kind() == YamlNode::Kind::Scalar) {
        primary = detail::language_by_travis_lang(lang->text());
        if (!primary) {
          warn_root(WarningCode::DroppedKey, "language",
                    "no setup action for language '" + lang->text() +
                        "'; hosted runners preinstall common toolchains");
        }
      }
    }
    auto add_setup = [&](const LanguageInfo& info) {
      std::string version;
      bool had_version_key = false;
      if (const YamlNode* vk = view(entry, used, info.travis_key)) {
        had_version_key = true;
        if (vk->kind() == YamlNode::Kind::Sequence) {
          std::vector<std::string> values;
          for (const std::string& v : collect_strings(*vk))
            values.push_back(detail::strip_version_prefix(v));
          if (!values.empty())
            job.matrix.dimensions.emplace_back(info.language,
                                               std::move(values));
        } else if (vk->kind() == YamlNode::Kind::Scalar) {
          version = detail::strip_version_prefix(vk->text());
        }
      }
      job.steps.push_back(StepIR::setup_language(info.language, version));
      if (info.language == std::string("java")) {
        warn_root(WarningCode::ApproxRunner,
                  had_version_key ? info.travis_key : "language",
                  "setup-java requires a distribution; defaulting to temurin "
                  "(not expressible in Travis)");
      }
    };
    if (primary) add_setup(*primary);
    for (const LanguageInfo& info : detail::language_table()) {
      if (primary && info.language == std::string(primary->language)) continue;
      const bool present =
          (entry && entry->find(info.travis_key)) || root.find(info.travis_key);
      if (present) add_setup(info);
    }
  }

  void lower_runner(const YamlNode* entry, std::set<std::string>* used,
                    JobIR& job) {
    if (const YamlNode* os = view(entry, used, "os")) {
      if (os->kind() == YamlNode::Kind::Sequence) {
        std::vector<std::string> labels;
        for (const std::string& name : collect_strings(*os)) {
          if (auto runner = detail::runner_from_travis_os(name)) {
            labels.push_back(detail::gha_label_for(*runner));
          } else {
            warn(WarningCode::ApproxRunner, "os",
                 "unknown os '" + name + "' mapped to ubuntu-latest");
            labels.push_back(detail::gha_label_for(RunnerOs::Linux));
          }
        }
        if (!labels.empty()) {
          if (auto runner = detail::runner_from_gha_label(labels.front()))
            job.runner_os = *runner;
          job.matrix.dimensions.emplace_back("os", std::move(labels));
        }
      } else if (os->kind() == YamlNode::Kind::Scalar) {
        if (auto runner = detail::runner_from_travis_os(os->text())) {
          job.runner_os = *runner;
        } else {
          warn(WarningCode::ApproxRunner, "os",
               "unknown os '" + os->text() + "' mapped to ubuntu-latest");
        }
      }
    }
    if (const YamlNode* dist = view(entry, used, "dist")) {
      if (dist->kind() == YamlNode::Kind::Scalar) {
        job.runner_version = dist->text();
        warn(WarningCode::ApproxRunner, "dist",
             "dist '" + dist->text() +
                 "' has no exact runner image; using ubuntu-latest");
      }
    }
  }

  void lower_cache(const YamlNode* entry, std::set<std::string>* used,
                   JobIR& job) {
    const YamlNode* cache = view(entry, used, "cache");
    if (!cache) return;
    std::vector<std::string> paths;
    auto add_named = [&](const std::string& name, const std::string& path) {
      for (const auto& [known, dir] : kCacheDirs) {
        if (name == known) {
          paths.push_back(dir);
          return;
        }
      }
      warn(WarningCode::DroppedKey, path,
           "unknown cache shorthand '" + name + "' dropped");
    };
    if (cache->kind() == YamlNode::Kind::Scalar) {
      add_named(cache->text(), "cache");
    } else if (cache->kind() == YamlNode::Kind::Sequence) {
      const auto& items = cache->items();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].kind() == YamlNode::Kind::Scalar)
          add_named(items[i].text(), item_path("cache", i));
      }
    } else {
      for (const auto& [key, value] : cache->entries()) {
        if (key == "directories") {
          for (const std::string& dir : collect_strings(value))
            paths.push_back(dir);
        } else if (value.kind() == YamlNode::Kind::Scalar &&
                   value.scalar_kind() == YamlNode::ScalarKind::Bool &&
                   value.text()[0] != 'f' && value.text()[0] != 'F') {
          add_named(key, "cache." + key);
        } else if (key == "timeout" || key == "edge") {
          warn(WarningCode::DroppedKey, "cache." + key,
               "cache option has no equivalent; dropped");
        } else {
          add_named(key, "cache." + key);
        }
      }
    }
    if (!paths.empty()) {
      job.steps.push_back(StepIR::cache(paths, "cache-" + job.id));
      warn(WarningCode::ApproxRunner, "cache",
           "cache key is static per job (no lockfile hashing)");
    }
  }

  void lower_addons(const YamlNode* entry, std::set<std::string>* used,
                    JobIR& job) {
    const YamlNode* addons = view(entry, used, "addons");
    if (!addons) return;
    if (addons->kind() != YamlNode::Kind::Mapping) {
      warn(WarningCode::NoEquivalent, "addons", "unsupported addons shape");
      return;
    }
    for (const auto& [key, value] : addons->entries()) {
      if (key != "apt") {
        warn(WarningCode::NoEquivalent, "addons." + key,
             "addon '" + key + "' has no GitHub Actions equivalent");
        continue;
      }
      std::vector<std::string> packages;
      if (value.kind() == YamlNode::Kind::Mapping) {
        for (const auto& [apt_key, apt_value] : value.entries()) {
          if (apt_key == "packages") {
            packages = collect_strings(apt_value);
          } else if (apt_key == "update") {
            // Folded into the emitted apt-get update.
          } else {
            warn(WarningCode::DroppedKey, "addons.apt." + apt_key,
                 "apt option dropped");
          }
        }
      } else {
        packages = collect_strings(value);
      }
      if (!packages.empty())
        job.steps.push_back(StepIR::package_install(packages));
    }
  }

  void lower_services(const YamlNode* entry, std::set<std::string>* used) {
    const YamlNode* services = view(entry, used, "services");
    if (!services) return;
    auto one = [&](const std::string& name, const std::string& path) {
      if (name == "docker") {
        warn(WarningCode::DroppedKey, path,
             "docker is preinstalled on hosted runners; nothing to migrate");
      } else {
        warn(WarningCode::NoEquivalent, path,
             "service '" + name +
                 "' is not migrated; configure a service container manually");
      }
    };
    if (services->kind() == YamlNode::Kind::Scalar) {
      one(services->text(), "services");
    } else if (services->kind() == YamlNode::Kind::Sequence) {
      const auto& items = services->items();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].kind() == YamlNode::Kind::Scalar)
          one(items[i].text(), item_path("services", i));
      }
    }
  }

  void lower_phases(const YamlNode* entry, std::set<std::string>* used,
                    JobIR& job) {
    auto add_runs = [&](const std::string& key, StepCondition cond) {
      const YamlNode* phase = view(entry, used, key);
      if (!phase) return;
      if (phase->kind() == YamlNode::Kind::Scalar) {
        if (!phase->text().empty())
          job.steps.push_back(StepIR::run(phase->text(), cond));
        return;
      }
      if (phase->kind() != YamlNode::Kind::Sequence) {
        warn(WarningCode::DroppedKey, key, "unsupported phase shape");
        return;
      }
      const auto& items = phase->items();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].kind() == YamlNode::Kind::Scalar &&
            !items[i].text().empty()) {
          job.steps.push_back(StepIR::run(items[i].text(), cond));
        } else {
          warn(WarningCode::DroppedKey, item_path(key, i),
               "non-scalar phase entry dropped");
        }
      }
    };
    for (const std::string& key : kPhaseOrder)
      add_runs(key, StepCondition::Always);
    add_runs("after_success", StepCondition::OnSuccess);
    add_runs("after_failure", StepCondition::OnFailure);
    add_runs("after_script", StepCondition::Always);
  }

  // Converts a matrix row ({jdk: openjdk11, env: FOO=1, os: osx}) into
  // dimension-named string pairs ({java: "11", env: "FOO=1", os: "macos-latest"}).
  OrderedStrMap convert_matrix_row(const YamlNode& row,
                                   const std::string& path) {
    OrderedStrMap out;
    if (row.kind() != YamlNode::Kind::Mapping) {
      warn(WarningCode::DroppedKey, path, "matrix entry is not a mapping");
      return out;
    }
    for (const auto& [key, value] : row.entries()) {
      if (const LanguageInfo* info = detail::language_by_travis_key(key)) {
        if (value.kind() == YamlNode::Kind::Scalar) {
          out.emplace_back(info->language,
                           detail::strip_version_prefix(value.text()));
          continue;
        }
      }
      if (key == "os" && value.kind() == YamlNode::Kind::Scalar) {
        if (auto runner = detail::runner_from_travis_os(value.text())) {
          out.emplace_back("os", detail::gha_label_for(*runner));
        } else {
          out.emplace_back("os", value.text());
        }
        continue;
      }
      if (key == "env") {
        std::string joined;
        for (const std::string& v : collect_strings(value)) {
          if (!joined.empty()) joined += " ";
          joined += v;
        }
        if (!joined.empty()) {
          out.emplace_back("env", joined);
          continue;
        }
      }
      if (value.kind() == YamlNode::Kind::Scalar) {
        out.emplace_back(key, value.text());
      } else {
        warn(WarningCode::DroppedKey, path + "." + key,
             "non-scalar matrix entry value dropped");
      }
    }
    return out;
  }

  JobIR build_job(const YamlNode* entry, std::set<std::string>* used,
                  std::string id,
                  const std::vector<std::string>& env_dim) {
    JobIR job;
    job.id = std::move(id);
    job.steps.push_back(StepIR::checkout());
    lower_language(entry, used, job);
    lower_runner(entry, used, job);
    lower_addons(entry, used, job);
    lower_cache(entry, used, job);
    lower_services(entry, used);

    const YamlNode* entry_env = entry ? entry->find("env") : nullptr;
    if (entry_env) {
      used->insert("env");
      if (entry_env->kind() == YamlNode::Kind::Mapping) {
        for (const auto& [k, v] : entry_env->entries()) {
          if (v.kind() == YamlNode::Kind::Scalar) job.env.emplace_back(k, v.text());
        }
      } else {
        for (const std::string& text : collect_strings(*entry_env)) {
          for (auto& kv : parse_assignments(text)) job.env.push_back(std::move(kv));
        }
      }
    } else if (!env_dim.empty()) {
      job.matrix.dimensions.emplace_back("env", env_dim);
    }

    lower_phases(entry, used, job);
    return job;
  }

  // include/exclude/allow_failures groups under `jobs:` or `matrix:`.
  struct MatrixGroups {
    std::vector<std::pair<const YamlNode*, std::string>> include;  // node, path
    std::vector<std::pair<const YamlNode*, std::string>> exclude;
    std::vector<std::pair<const YamlNode*, std::string>> allow;
  };

  MatrixGroups gather_groups() {
    MatrixGroups groups;
    for (const char* group : {"jobs", "matrix"}) {
      const YamlNode* node = root.find(group);
      if (!node) continue;
      consumed.insert(group);
      if (node->kind() == YamlNode::Kind::Sequence) {
        // `jobs:` list shorthand for jobs.include.
        const auto& items = node->items();
        for (std::size_t i = 0; i < items.size(); ++i)
          groups.include.emplace_back(&items[i],
                                      item_path(std::string(group), i));
        continue;
      }
      if (node->kind() != YamlNode::Kind::Mapping) continue;
      for (const auto& [key, value] : node->entries()) {
        const std::string base = std::string(group) + "." + key;
        auto push_all = [&](auto& bucket) {
          if (value.kind() == YamlNode::Kind::Sequence) {
            const auto& items = value.items();
            for (std::size_t i = 0; i < items.size(); ++i)
              bucket.emplace_back(&items[i], item_path(base, i));
          } else {
            bucket.emplace_back(&value, base);
          }
        };
        if (key == "include") {
          push_all(groups.include);
        } else if (key == "exclude") {
          push_all(groups.exclude);
        } else if (key == "allow_failures") {
          push_all(groups.allow);
        } else if (key == "fast_finish" || key == "fast_fail") {
          warn(WarningCode::DroppedKey, base, "fast-finish flag dropped");
        } else {
          warn(WarningCode::DroppedKey, base,
               "unknown matrix section dropped");
        }
      }
    }
    return groups;
  }

  void audit_entry(const YamlNode& entry, const std::set<std::string>& used,
                   const std::string& path) {
    if (entry.kind() != YamlNode::Kind::Mapping) return;
    for (const auto& [key, value] : entry.entries()) {
      if (!used.count(key)) {
        warn(WarningCode::DroppedKey, path + "." + key,
             "no rule maps this key; dropped");
      }
    }
  }

  void lower_stage_jobs(const MatrixGroups& groups,
                        const std::vector<std::string>& env_dim) {
    // Stage order: the root `stages` list when present, else first appearance.
    std::vector<std::string> stage_order;
    auto note_stage = [&](const std::string& name) {
      for (const auto& s : stage_order)
        if (s == name) return;
      stage_order.push_back(name);
    };
    if (const YamlNode* stages = root.find("stages")) {
      consumed.insert("stages");
      if (stages->kind() == YamlNode::Kind::Sequence) {
        for (const YamlNode& item : stages->items()) {
          if (item.kind() == YamlNode::Kind::Scalar) {
            note_stage(item.text());
          } else if (item.kind() == YamlNode::Kind::Mapping) {
            if (const YamlNode* name = item.find("name")) {
              if (name->kind() == YamlNode::Kind::Scalar)
                note_stage(name->text());
            }
          }
        }
      }
    }

    std::vector<std::string> job_stage;
    std::vector<std::string> job_name;
    std::set<std::string> taken_ids;
    std::string current_stage = "test";
    for (const auto& [entry, path] : groups.include) {
      std::set<std::string> used;
      if (entry->kind() != YamlNode::Kind::Mapping) {
        warn(WarningCode::DroppedKey, path, "job entry is not a mapping");
        continue;
      }
      if (const YamlNode* stage = entry->find("stage")) {
        used.insert("stage");
        if (stage->kind() == YamlNode::Kind::Scalar)
          current_stage = stage->text();
      }
      note_stage(current_stage);
      std::string name;
      if (const YamlNode* n = entry->find("name")) {
        used.insert("name");
        if (n->kind() == YamlNode::Kind::Scalar) name = n->text();
      }
      std::string base = detail::sanitize_job_id(
          name.empty() ? current_stage : name, "job");
      std::string id = base;
      for (int i = 2; taken_ids.count(id); ++i)
        id = base + "-" + std::to_string(i);
      taken_ids.insert(id);

      JobIR job = build_job(entry, &used, id, env_dim);
      audit_entry(*entry, used, path);
      ir.jobs.push_back(std::move(job));
      job_stage.push_back(current_stage);
      job_name.push_back(name);
    }

    // Jobs in stage k need every job of stage k−1 (layered pipeline).
    std::vector<std::string> prev_ids;
    for (const std::string& stage : stage_order) {
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < ir.jobs.size(); ++i) {
        if (job_stage[i] == stage) {
          ir.jobs[i].needs = prev_ids;
          ids.push_back(ir.jobs[i].id);
        }
      }
      if (!ids.empty()) prev_ids = std::move(ids);
    }

    for (const auto& [row, path] : groups.allow) {
      OrderedStrMap converted = convert_matrix_row(*row, path);
      bool matched = false;
      for (const auto& [k, v] : converted) {
        if (k != "name") continue;
        for (std::size_t i = 0; i < ir.jobs.size(); ++i) {
          if (job_name[i] == v) {
            ir.jobs[i].allow_failure = true;
            matched = true;
          }
        }
      }
      if (!matched) {
        warn(WarningCode::NoEquivalent, path,
             "allow_failures entry does not name a job; dropped");
      }
    }
    for (const auto& [row, path] : groups.exclude) {
      warn(WarningCode::DroppedKey, path,
           "matrix exclude does not apply to explicit job lists; dropped");
    }
  }

  void run() {
    lower_triggers();
    if (root.find("import")) {
      warn_root(WarningCode::ImportUnsupported, "import",
                "external config imports are not supported");
    }
    for (const char* key : {"deploy", "notifications"}) {
      if (root.find(key)) {
        warn_root(WarningCode::NoEquivalent, key,
                  std::string(key) + " is not migrated by the rule table");
      }
    }
    if (root.find("sudo")) {
      warn_root(WarningCode::DroppedKey, "sudo",
                "sudo has no equivalent on hosted runners; dropped");
    }

    std::vector<std::string> env_dim;
    lower_global_env(&env_dim);

    MatrixGroups groups = gather_groups();
    bool stage_mode = false;
    for (const auto& [entry, path] : groups.include) {
      if (entry->kind() != YamlNode::Kind::Mapping) continue;
      for (const auto& [key, value] : entry->entries()) {
        if (kJobDefiningKeys.count(key)) stage_mode = true;
      }
    }

    if (stage_mode) {
      lower_stage_jobs(groups, env_dim);
    } else {
      std::set<std::string> unused;
      JobIR job = build_job(nullptr, &unused, "build", env_dim);
      for (const auto& [row, path] : groups.include)
        job.matrix.include.push_back(convert_matrix_row(*row, path));
      for (const auto& [row, path] : groups.exclude)
        job.matrix.exclude.push_back(convert_matrix_row(*row, path));
      for (const auto& [row, path] : groups.allow) {
        job.matrix.allow_failures.push_back(convert_matrix_row(*row, path));
        warn(WarningCode::NoEquivalent, path,
             "allow_failures has no per-configuration equivalent in GitHub "
             "Actions; dropped from the output");
      }
      ir.jobs.push_back(std::move(job));
    }

    for (const auto& [key, value] : root.entries()) {
      if (!consumed.count(key)) {
        warn(WarningCode::DroppedKey, key, "no rule maps this key; dropped");
      }
    }

    // One warning per (code, path): per-job lowering can revisit root keys.
    std::set<std::pair<int, std::string>> seen;
    std::vector<MigrationWarning> unique;
    for (MigrationWarning& w : ir.warnings) {
      if (seen.emplace(static_cast<int>(w.code), w.path).second) {
        unique.push_back(std::move(w));
      }
    }
    ir.warnings = std::move(unique);
  }
};

}  // namespace

PipelineIR lower_travis_to_ir(const NormalizedConfig& config) {
  if (config.dialect != CiDialect::TravisCI) {
    throw Error(ErrorCode::WrongDialect,
                "lower_travis_to_ir requires a travis config");
  }
  const YamlNode& root = config.document;
  bool has_content = false;
  for (const std::string& phase : kAllPhases) {
    if (root.find(phase)) has_content = true;
  }
  for (const char* group : {"jobs", "matrix"}) {
    if (const YamlNode* node = root.find(group)) {
      if (node->kind() == YamlNode::Kind::Sequence && !node->empty())
        has_content = true;
      if (node->kind() == YamlNode::Kind::Mapping && node->find("include"))
        has_content = true;
    }
  }
  if (!has_content) {
    throw Error(ErrorCode::EmptyPipeline,
                "config has no script, install, or job content to migrate");
  }
  Lowerer lowerer(root);
  lowerer.run();
  return std::move(lowerer.ir);
}

}  // namespace cigrate
