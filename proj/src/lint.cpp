#include "cigrate/lint.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cigrate/error.hpp"

namespace cigrate {
namespace {

std::string child(const std::string& parent, const std::string& key) {
  if (parent == ".") return key;
  return parent + "." + key;
}

std::string item(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

void add(std::vector<LintDiagnostic>& out, LintSeverity sev, std::string rule,
         std::string path, std::string message) {
  out.push_back({sev, std::move(rule), std::move(path), std::move(message)});
}

bool is_string_scalar(const YamlNode& n) {
  return n.kind() == YamlNode::Kind::Scalar &&
         n.scalar_kind() == YamlNode::ScalarKind::String;
}

bool valid_job_id(const std::string& id) {
  if (id.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(id[0])) || id[0] == '_'))
    return false;
  for (char c : id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      return false;
  }
  return true;
}

void finish(LintReport& report) {
  std::stable_sort(report.diagnostics.begin(), report.diagnostics.end(),
                   [](const LintDiagnostic& a, const LintDiagnostic& b) {
                     if (a.path != b.path) return a.path < b.path;
                     return a.rule_id < b.rule_id;
                   });
  report.passed = std::none_of(
      report.diagnostics.begin(), report.diagnostics.end(),
      [](const LintDiagnostic& d) { return d.severity == LintSeverity::Error; });
}

void lint_gha_matrix(const YamlNode& matrix, const std::string& path,
                     std::vector<LintDiagnostic>& out) {
  if (matrix.kind() != YamlNode::Kind::Mapping) {
    add(out, LintSeverity::Error, "GHA010", path,
        "strategy.matrix must be a mapping");
    return;
  }
  for (const auto& [dim, value] : matrix.entries()) {
    if (value.kind() == YamlNode::Kind::Sequence) continue;
    add(out, LintSeverity::Error, "GHA010", child(path, dim),
        (dim == "include" || dim == "exclude")
            ? "matrix " + dim + " must be a sequence of mappings"
            : "matrix dimension `" + dim + "` must be a sequence");
  }
  for (const char* part : {"include", "exclude"}) {
    const YamlNode* list = matrix.find(part);
    if (!list || list->kind() != YamlNode::Kind::Sequence) continue;
    for (std::size_t i = 0; i < list->items().size(); ++i) {
      if (list->items()[i].kind() != YamlNode::Kind::Mapping) {
        add(out, LintSeverity::Error, "GHA010", item(child(path, part), i),
            "matrix " + std::string(part) + " entry must be a mapping");
      }
    }
  }
}

void lint_gha_job(const std::string& id, const YamlNode& job,
                  const std::set<std::string>& job_ids,
                  std::vector<LintDiagnostic>& out) {
  const std::string path = child("jobs", id);
  if (!valid_job_id(id)) {
    add(out, LintSeverity::Error, "GHA006", path,
        "invalid job id `" + id + "`");
  }
  if (job.kind() != YamlNode::Kind::Mapping) {
    add(out, LintSeverity::Error, "GHA003", path,
        "job must be a mapping with a `runs-on` key");
    add(out, LintSeverity::Error, "GHA004", path,
        "job must be a mapping with a non-empty `steps` sequence");
    return;
  }
  // A job that `uses` a reusable workflow carries neither runs-on nor steps.
  const bool reusable = job.find("uses") != nullptr;
  if (!reusable && !job.find("runs-on")) {
    add(out, LintSeverity::Error, "GHA003", path, "job is missing `runs-on`");
  }
  const YamlNode* steps = job.find("steps");
  if (!reusable &&
      (!steps || steps->kind() != YamlNode::Kind::Sequence || steps->empty())) {
    add(out, LintSeverity::Error, "GHA004", path,
        "job is missing a non-empty `steps` sequence");
  }
  if (steps && steps->kind() == YamlNode::Kind::Sequence) {
    for (std::size_t i = 0; i < steps->items().size(); ++i) {
      const YamlNode& step = steps->items()[i];
      const std::string spath = item(child(path, "steps"), i);
      if (step.kind() != YamlNode::Kind::Mapping) {
        add(out, LintSeverity::Error, "GHA005", spath,
            "step must be a mapping with exactly one of `run` or `uses`");
        continue;
      }
      const bool has_run = step.find("run") != nullptr;
      const bool has_uses = step.find("uses") != nullptr;
      if (has_run == has_uses) {
        add(out, LintSeverity::Error, "GHA005", spath,
            has_run ? "step has both `run` and `uses`"
                    : "step has neither `run` nor `uses`");
      }
    }
  }
  if (const YamlNode* needs = job.find("needs")) {
    auto check_target = [&](const YamlNode& t, const std::string& tpath) {
      if (t.kind() != YamlNode::Kind::Scalar || !job_ids.count(t.text())) {
        add(out, LintSeverity::Error, "GHA007", tpath,
            "`needs` target does not name a job in this workflow");
      }
    };
    if (needs->kind() == YamlNode::Kind::Sequence) {
      for (std::size_t i = 0; i < needs->items().size(); ++i)
        check_target(needs->items()[i], item(child(path, "needs"), i));
    } else {
      check_target(*needs, child(path, "needs"));
    }
  }
  for (const auto& [key, value] : job.entries()) {
    if (!gha_known_keys().job.count(key)) {
      add(out, LintSeverity::Warning, "GHA009", child(path, key),
          "unknown job-level key `" + key + "`");
    }
  }
  if (const YamlNode* strategy = job.find("strategy")) {
    if (strategy->kind() == YamlNode::Kind::Mapping) {
      if (const YamlNode* matrix = strategy->find("matrix")) {
        lint_gha_matrix(*matrix, child(child(path, "strategy"), "matrix"), out);
      }
    }
  }
}

void lint_travis_phase(const std::string& key, const YamlNode& value,
                       std::vector<LintDiagnostic>& out) {
  auto bad = [&](const std::string& path) {
    add(out, LintSeverity::Error, "TRV003", path,
        "phase `" + key + "` must be a string or a list of strings");
  };
  if (value.kind() == YamlNode::Kind::Scalar) {
    if (!is_string_scalar(value)) bad(key);
    return;
  }
  if (value.kind() == YamlNode::Kind::Sequence) {
    for (std::size_t i = 0; i < value.items().size(); ++i) {
      if (!is_string_scalar(value.items()[i])) bad(item(key, i));
    }
    return;
  }
  bad(key);
}

bool valid_env_assignment(const std::string& text) {
  auto eq = text.find('=');
  return eq != std::string::npos && eq > 0;
}

void lint_travis_env_entry(const YamlNode& entry, const std::string& path,
                           std::vector<LintDiagnostic>& out) {
  if (entry.kind() == YamlNode::Kind::Scalar) {
    if (!is_string_scalar(entry) || !valid_env_assignment(entry.text())) {
      add(out, LintSeverity::Error, "TRV004", path,
          "env entry must be a `KEY=value` string or a single-key mapping");
    }
    return;
  }
  if (entry.kind() == YamlNode::Kind::Mapping && entry.size() >= 1) return;
  add(out, LintSeverity::Error, "TRV004", path,
      "env entry must be a `KEY=value` string or a single-key mapping");
}

const std::set<std::string> kTravisPhases = {
    "before_install", "install",       "before_script", "script",
    "after_success",  "after_failure", "after_script"};

const std::set<std::string> kTravisOs = {"linux", "osx", "windows"};

}  // namespace

KnownKeys parse_key_table(const std::string& text) {
  KnownKeys keys;
  std::set<std::string>* section = &keys.root;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    std::size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line[0] == '#') continue;
    if (line == "[root]") {
      section = &keys.root;
    } else if (line == "[job]") {
      section = &keys.job;
    } else {
      section->insert(line);
    }
  }
  return keys;
}

const KnownKeys& travis_known_keys() {
  static const KnownKeys keys = parse_key_table(detail::travis_keys_table());
  return keys;
}

const KnownKeys& gha_known_keys() {
  static const KnownKeys keys = parse_key_table(detail::gha_keys_table());
  return keys;
}

LintReport lint_gha(const RawConfig& config) {
  if (config.dialect != CiDialect::GitHubActions) {
    throw Error(ErrorCode::WrongDialect, "lint_gha requires a gha config");
  }
  LintReport report;
  report.dialect = CiDialect::GitHubActions;
  auto& out = report.diagnostics;
  const YamlNode& root = config.document;

  if (!root.find("on")) {
    add(out, LintSeverity::Error, "GHA001", ".",
        "workflow is missing the `on` trigger key");
  }
  const YamlNode* jobs = root.find("jobs");
  if (!jobs || jobs->kind() != YamlNode::Kind::Mapping || jobs->empty()) {
    add(out, LintSeverity::Error, "GHA002", ".",
        "workflow must define a non-empty `jobs` mapping");
  } else {
    std::set<std::string> job_ids;
    for (const auto& [id, job] : jobs->entries()) job_ids.insert(id);
    for (const auto& [id, job] : jobs->entries()) {
      lint_gha_job(id, job, job_ids, out);
    }
  }
  for (const auto& [key, value] : root.entries()) {
    if (!gha_known_keys().root.count(key)) {
      add(out, LintSeverity::Warning, "GHA008", key,
          "unknown top-level key `" + key + "`");
    }
  }
  finish(report);
  return report;
}

LintReport lint_travis(const RawConfig& config) {
  if (config.dialect != CiDialect::TravisCI) {
    throw Error(ErrorCode::WrongDialect, "lint_travis requires a travis config");
  }
  LintReport report;
  report.dialect = CiDialect::TravisCI;
  auto& out = report.diagnostics;
  const YamlNode& root = config.document;

  const bool has_content =
      root.find("language") || root.find("script") || root.find("install") ||
      root.find("jobs") || root.find("matrix");
  if (!has_content) {
    add(out, LintSeverity::Error, "TRV001", ".",
        "config defines none of language, script, install, jobs, matrix");
  }
  for (const auto& [key, value] : root.entries()) {
    if (!travis_known_keys().root.count(key)) {
      add(out, LintSeverity::Warning, "TRV002", key,
          "unknown top-level key `" + key + "`");
    }
    if (kTravisPhases.count(key)) lint_travis_phase(key, value, out);
  }
  if (const YamlNode* env = root.find("env")) {
    auto check_list = [&](const YamlNode& list, const std::string& path) {
      if (list.kind() == YamlNode::Kind::Sequence) {
        for (std::size_t i = 0; i < list.items().size(); ++i)
          lint_travis_env_entry(list.items()[i], item(path, i), out);
      } else if (list.kind() == YamlNode::Kind::Scalar) {
        lint_travis_env_entry(list, path, out);
      }
    };
    if (env->kind() == YamlNode::Kind::Mapping) {
      if (const YamlNode* global = env->find("global"))
        check_list(*global, "env.global");
      if (const YamlNode* matrix = env->find("matrix"))
        check_list(*matrix, "env.matrix");
      if (const YamlNode* jobs_env = env->find("jobs"))
        check_list(*jobs_env, "env.jobs");
    } else {
      check_list(*env, "env");
    }
  }
  if (const YamlNode* os = root.find("os")) {
    auto check_os = [&](const YamlNode& v, const std::string& path) {
      if (v.kind() != YamlNode::Kind::Scalar || !kTravisOs.count(v.text())) {
        add(out, LintSeverity::Error, "TRV005", path,
            "os must be one of linux, osx, windows");
      }
    };
    if (os->kind() == YamlNode::Kind::Sequence) {
      for (std::size_t i = 0; i < os->items().size(); ++i)
        check_os(os->items()[i], item("os", i));
    } else {
      check_os(*os, "os");
    }
  }
  if (const YamlNode* cache = root.find("cache")) {
    if (cache->kind() == YamlNode::Kind::Mapping) {
      if (const YamlNode* dirs = cache->find("directories")) {
        if (dirs->kind() != YamlNode::Kind::Sequence) {
          add(out, LintSeverity::Error, "TRV006", "cache.directories",
              "cache.directories must be a list of strings");
        } else {
          for (std::size_t i = 0; i < dirs->items().size(); ++i) {
            if (!is_string_scalar(dirs->items()[i])) {
              add(out, LintSeverity::Error, "TRV006",
                  item("cache.directories", i),
                  "cache.directories must be a list of strings");
            }
          }
        }
      }
    }
  }
  for (const char* group : {"matrix", "jobs"}) {
    const YamlNode* node = root.find(group);
    if (!node || node->kind() != YamlNode::Kind::Mapping) continue;
    for (const char* part : {"include", "exclude"}) {
      const YamlNode* list = node->find(part);
      if (!list) continue;
      const std::string path = child(group, part);
      if (list->kind() != YamlNode::Kind::Sequence) {
        add(out, LintSeverity::Error, "TRV007", path,
            std::string(part) + " must be a sequence of mappings");
        continue;
      }
      for (std::size_t i = 0; i < list->items().size(); ++i) {
        if (list->items()[i].kind() != YamlNode::Kind::Mapping) {
          add(out, LintSeverity::Error, "TRV007", item(path, i),
              std::string(part) + " entry must be a mapping");
        }
      }
    }
  }
  finish(report);
  return report;
}

LintReport lint(const RawConfig& config) {
  return config.dialect == CiDialect::GitHubActions ? lint_gha(config)
                                                    : lint_travis(config);
}

}  // namespace cigrate
