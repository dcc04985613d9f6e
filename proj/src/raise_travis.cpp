#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cigrate/translate.hpp"
#include "translate_util.hpp"

namespace cigrate {
namespace {

using detail::LanguageInfo;

YamlNode string_list(const std::vector<std::string>& values) {
  YamlNode seq = YamlNode::sequence();
  for (const auto& v : values) seq.push_back(YamlNode::str(v));
  return seq;
}

// Versions always emit as strings: a plain `3.10` would re-parse as the
// float 3.1.
std::string travis_version(const LanguageInfo& info, const std::string& v) {
  if (info.language == std::string("java") && !v.empty() &&
      std::isdigit(static_cast<unsigned char>(v[0]))) {
    return "openjdk" + v;
  }
  return v;
}

const std::map<std::string, std::string> kLabelToDist = {
    {"ubuntu-24.04", "noble"},  {"ubuntu-22.04", "jammy"},
    {"ubuntu-20.04", "focal"},  {"ubuntu-18.04", "bionic"},
    {"ubuntu-16.04", "xenial"},
};
const std::set<std::string> kTravisDists = {"precise", "trusty", "xenial",
                                            "bionic",  "focal",  "jammy",
                                            "noble"};

struct Raiser {
  const PipelineIR& ir;
  std::vector<MigrationWarning>& warnings;

  void warn(WarningCode code, std::string path, std::string message) {
    warnings.push_back({code, std::move(path), std::move(message)});
  }

  // SetupLanguage steps → language + version keys on `target`.
  void emit_language(const JobIR& job, YamlNode& target,
                     const std::string* root_language) {
    bool first = true;
    for (const StepIR& step : job.steps) {
      if (step.kind != StepKind::SetupLanguage) continue;
      const LanguageInfo* info = detail::language_by_name(step.language);
      if (!info) continue;
      if (first) {
        if (!root_language || *root_language != info->travis_lang)
          target.set("language", YamlNode::str(info->travis_lang));
        first = false;
      }
      std::string version = step.version;
      if (auto dim = detail::parse_matrix_ref(version)) {
        if (const auto* values = job.matrix.find_dimension(*dim)) {
          YamlNode seq = YamlNode::sequence();
          for (const auto& v : *values)
            seq.push_back(YamlNode::str(travis_version(*info, v)));
          target.set(info->travis_key, std::move(seq));
          continue;
        }
        warn(WarningCode::DroppedKey, "jobs." + job.id,
             "matrix version expression '" + version + "' not resolvable");
        continue;
      }
      if (version.empty()) {
        if (const auto* values = job.matrix.find_dimension(info->language)) {
          YamlNode seq = YamlNode::sequence();
          for (const auto& v : *values)
            seq.push_back(YamlNode::str(travis_version(*info, v)));
          target.set(info->travis_key, std::move(seq));
        }
        continue;
      }
      target.set(info->travis_key,
                 YamlNode::str(travis_version(*info, version)));
    }
  }

  void emit_runner(const JobIR& job, YamlNode& target) {
    if (const auto* labels = job.matrix.find_dimension("os")) {
      std::vector<std::string> names;
      for (const std::string& label : *labels) {
        if (auto runner = detail::runner_from_gha_label(label)) {
          names.push_back(detail::travis_os_for(*runner));
        } else {
          warn(WarningCode::ApproxRunner, "jobs." + job.id,
               "runner label '" + label + "' has no travis os; dropped");
        }
      }
      if (!names.empty()) target.set("os", string_list(names));
    } else if (job.runner_os != RunnerOs::Linux) {
      target.set("os",
                 YamlNode::str(detail::travis_os_for(job.runner_os)));
    }
    if (!job.runner_version.empty()) {
      auto it = kLabelToDist.find(job.runner_version);
      if (it != kLabelToDist.end()) {
        target.set("dist", YamlNode::str(it->second));
      } else if (kTravisDists.count(job.runner_version)) {
        target.set("dist", YamlNode::str(job.runner_version));
      }
    }
  }

  void emit_steps(const JobIR& job, YamlNode& target) {
    std::vector<std::string> cache_paths;
    std::vector<std::string> packages;
    std::vector<std::string> script, after_success, after_failure,
        after_script;
    int last_conditioned = -1;
    for (std::size_t i = 0; i < job.steps.size(); ++i) {
      if (job.steps[i].condition != StepCondition::Always)
        last_conditioned = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < job.steps.size(); ++i) {
      const StepIR& step = job.steps[i];
      switch (step.kind) {
        case StepKind::Checkout:
          break;  // implicit in Travis
        case StepKind::SetupLanguage:
          break;  // handled by emit_language
        case StepKind::Cache:
          cache_paths.insert(cache_paths.end(), step.cache_paths.begin(),
                             step.cache_paths.end());
          break;
        case StepKind::PackageInstall:
          packages.insert(packages.end(), step.packages.begin(),
                          step.packages.end());
          break;
        case StepKind::UnmappedAction:
          warn(WarningCode::NoEquivalent,
               "jobs." + job.id + ".steps[" + std::to_string(i) + "]",
               "action '" + step.action_ref +
                   "' has no travis equivalent; dropped");
          break;
        case StepKind::Run:
          switch (step.condition) {
            case StepCondition::OnSuccess:
              after_success.push_back(step.command);
              break;
            case StepCondition::OnFailure:
              after_failure.push_back(step.command);
              break;
            case StepCondition::Always:
              if (last_conditioned >= 0 &&
                  static_cast<int>(i) > last_conditioned) {
                after_script.push_back(step.command);
              } else {
                script.push_back(step.command);
              }
              break;
          }
          break;
      }
    }
    if (!script.empty()) target.set("script", string_list(script));
    if (!after_success.empty())
      target.set("after_success", string_list(after_success));
    if (!after_failure.empty())
      target.set("after_failure", string_list(after_failure));
    if (!after_script.empty())
      target.set("after_script", string_list(after_script));
    if (!cache_paths.empty()) {
      YamlNode cache = YamlNode::mapping();
      cache.set("directories", string_list(cache_paths));
      target.set("cache", std::move(cache));
    }
    if (!packages.empty()) {
      YamlNode apt = YamlNode::mapping();
      apt.set("packages", string_list(packages));
      YamlNode addons = YamlNode::mapping();
      addons.set("apt", std::move(apt));
      target.set("addons", std::move(addons));
    }
  }

  YamlNode row_to_travis(const OrderedStrMap& row) {
    YamlNode node = YamlNode::mapping();
    for (const auto& [key, value] : row) {
      if (key == "os") {
        if (auto runner = detail::runner_from_gha_label(value)) {
          node.set("os", YamlNode::str(detail::travis_os_for(*runner)));
        } else {
          node.set("os", YamlNode::str(value));
        }
      } else if (const LanguageInfo* info = detail::language_by_name(key)) {
        node.set(info->travis_key,
                 YamlNode::str(travis_version(*info, value)));
      } else {
        node.set(key, YamlNode::str(value));
      }
    }
    return node;
  }

  void emit_env_root(const JobIR& job, YamlNode& doc) {
    OrderedStrMap global = ir.global_env;
    global.insert(global.end(), job.env.begin(), job.env.end());
    const auto* env_dim = job.matrix.find_dimension("env");
    if (global.empty() && !env_dim) return;
    auto global_list = [&] {
      YamlNode seq = YamlNode::sequence();
      for (const auto& [k, v] : global)
        seq.push_back(YamlNode::str(k + "=" + v));
      return seq;
    };
    if (!global.empty() && env_dim) {
      YamlNode env = YamlNode::mapping();
      env.set("global", global_list());
      env.set("matrix", string_list(*env_dim));
      doc.set("env", std::move(env));
    } else if (env_dim) {
      doc.set("env", string_list(*env_dim));
    } else {
      YamlNode env = YamlNode::mapping();
      env.set("global", global_list());
      doc.set("env", std::move(env));
    }
  }

  // Dimensions a travis config can express at root level.
  void check_dims(const JobIR& job, bool multi_job) {
    for (const auto& [dim, values] : job.matrix.dimensions) {
      const bool known = dim == "os" || dim == "env" ||
                         detail::language_by_name(dim) != nullptr;
      if (!known) {
        warn(WarningCode::NoEquivalent,
             "jobs." + job.id + ".strategy.matrix." + dim,
             "matrix dimension '" + dim + "' has no travis equivalent; "
             "dropped");
      } else if (multi_job && values.size() > 1) {
        warn(WarningCode::NoEquivalent,
             "jobs." + job.id + ".strategy.matrix." + dim,
             "per-job matrix cannot be expressed in a travis job list; only "
             "scalar values are kept");
      }
    }
  }

  void emit_matrix_rows(const JobIR& job, YamlNode& doc) {
    if (job.matrix.include.empty() && job.matrix.exclude.empty() &&
        job.matrix.allow_failures.empty()) {
      return;
    }
    YamlNode jobs = YamlNode::mapping();
    auto rows = [&](const std::vector<OrderedStrMap>& list) {
      YamlNode seq = YamlNode::sequence();
      for (const auto& row : list) seq.push_back(row_to_travis(row));
      return seq;
    };
    if (!job.matrix.include.empty())
      jobs.set("include", rows(job.matrix.include));
    if (!job.matrix.exclude.empty())
      jobs.set("exclude", rows(job.matrix.exclude));
    if (!job.matrix.allow_failures.empty())
      jobs.set("allow_failures", rows(job.matrix.allow_failures));
    doc.set("jobs", std::move(jobs));
  }

  YamlNode raise_single(const JobIR& job) {
    YamlNode doc = YamlNode::mapping();
    emit_language(job, doc, nullptr);
    emit_runner(job, doc);
    emit_env_root(job, doc);
    check_dims(job, false);
    emit_steps(job, doc);
    emit_matrix_rows(job, doc);
    if (job.allow_failure) {
      warn(WarningCode::NoEquivalent, "jobs." + job.id + ".continue-on-error",
           "continue-on-error on a single job has no travis equivalent; "
           "dropped");
    }
    return doc;
  }

  // Longest-needs-path depth; drives the stage layering.
  int job_level(const std::string& id, std::map<std::string, int>& memo,
                std::set<std::string>& visiting) {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    if (visiting.count(id)) return 0;  // cycle guard; validate_ir flags these
    visiting.insert(id);
    const JobIR* job = nullptr;
    for (const JobIR& j : ir.jobs) {
      if (j.id == id) job = &j;
    }
    int level = 0;
    if (job) {
      for (const std::string& need : job->needs) {
        level = std::max(level, 1 + job_level(need, memo, visiting));
      }
    }
    visiting.erase(id);
    memo[id] = level;
    return level;
  }

  YamlNode raise_multi() {
    YamlNode doc = YamlNode::mapping();
    std::map<std::string, int> levels;
    std::set<std::string> visiting;
    int max_level = 0;
    for (const JobIR& job : ir.jobs) {
      max_level = std::max(max_level, job_level(job.id, levels, visiting));
    }
    if (max_level > 0) {
      std::vector<std::string> stages;
      for (int i = 0; i <= max_level; ++i)
        stages.push_back("stage-" + std::to_string(i + 1));
      doc.set("stages", string_list(stages));
    }

    std::string root_language;
    for (const StepIR& step : ir.jobs.front().steps) {
      if (step.kind == StepKind::SetupLanguage) {
        if (const LanguageInfo* info = detail::language_by_name(step.language)) {
          root_language = info->travis_lang;
          doc.set("language", YamlNode::str(root_language));
        }
        break;
      }
    }
    if (!ir.global_env.empty()) {
      YamlNode env = YamlNode::mapping();
      YamlNode global = YamlNode::sequence();
      for (const auto& [k, v] : ir.global_env)
        global.push_back(YamlNode::str(k + "=" + v));
      env.set("global", std::move(global));
      doc.set("env", std::move(env));
    }

    YamlNode include = YamlNode::sequence();
    std::vector<std::string> allowed;
    for (const JobIR& job : ir.jobs) {
      YamlNode entry = YamlNode::mapping();
      if (max_level > 0) {
        entry.set("stage",
                  YamlNode::str("stage-" +
                                std::to_string(levels[job.id] + 1)));
      }
      entry.set("name", YamlNode::str(job.id));
      emit_language(job, entry,
                    root_language.empty() ? nullptr : &root_language);
      emit_runner(job, entry);
      if (!job.env.empty()) {
        YamlNode env = YamlNode::sequence();
        for (const auto& [k, v] : job.env)
          env.push_back(YamlNode::str(k + "=" + v));
        entry.set("env", std::move(env));
      }
      check_dims(job, true);
      for (const auto& [dim, values] : job.matrix.dimensions) {
        if (values.size() != 1) continue;
        const LanguageInfo* info = detail::language_by_name(dim);
        if (info && !entry.has(info->travis_key)) {
          entry.set(info->travis_key,
                    YamlNode::str(travis_version(*info, values.front())));
        }
      }
      emit_steps(job, entry);
      if (job.allow_failure) allowed.push_back(job.id);
      if (!job.matrix.include.empty() || !job.matrix.exclude.empty()) {
        warn(WarningCode::NoEquivalent, "jobs." + job.id + ".strategy.matrix",
             "per-job matrix rows cannot be expressed in a travis job list; "
             "dropped");
      }
      include.push_back(std::move(entry));
    }
    YamlNode jobs = YamlNode::mapping();
    jobs.set("include", std::move(include));
    if (!allowed.empty()) {
      YamlNode rows = YamlNode::sequence();
      for (const std::string& id : allowed) {
        YamlNode row = YamlNode::mapping();
        row.set("name", YamlNode::str(id));
        rows.push_back(std::move(row));
      }
      jobs.set("allow_failures", std::move(rows));
    }
    doc.set("jobs", std::move(jobs));
    return doc;
  }

  YamlNode run() {
    YamlNode doc = ir.jobs.size() == 1 ? raise_single(ir.jobs.front())
                                       : raise_multi();
    if (!ir.triggers.branches_include.empty() ||
        !ir.triggers.branches_exclude.empty()) {
      YamlNode branches = YamlNode::mapping();
      if (!ir.triggers.branches_include.empty())
        branches.set("only", string_list(ir.triggers.branches_include));
      if (!ir.triggers.branches_exclude.empty())
        branches.set("except", string_list(ir.triggers.branches_exclude));
      doc.set("branches", std::move(branches));
    }
    for (const std::string& event : ir.triggers.events) {
      if (event != "push" && event != "pull_request") {
        warn(WarningCode::NoEquivalent, "on." + event,
             "trigger event '" + event + "' has no travis equivalent; "
             "builds run on pushes and pull requests");
      }
    }
    return doc;
  }
};

}  // namespace

NormalizedConfig raise_ir_to_travis(const PipelineIR& ir,
                                    std::vector<MigrationWarning>& warnings) {
  Raiser raiser{ir, warnings};
  YamlNode doc = raiser.run();
  RawConfig raw;
  raw.dialect = CiDialect::TravisCI;
  raw.document = std::move(doc);
  return normalize(raw);
}

NormalizedConfig raise_ir_to_travis(const PipelineIR& ir) {
  std::vector<MigrationWarning> warnings;
  return raise_ir_to_travis(ir, warnings);
}

}  // namespace cigrate
