#pragma once

#include <set>
#include <string>
#include <vector>

#include "cigrate/config.hpp"

namespace cigrate {

enum class LintSeverity { Error, Warning };

struct LintDiagnostic {
  LintSeverity severity = LintSeverity::Error;
  std::string rule_id;  // stable, e.g. "GHA003"
  std::string path;     // YAML path; "." addresses the root
  std::string message;

  bool operator==(const LintDiagnostic&) const = default;
};

struct LintReport {
  CiDialect dialect = CiDialect::TravisCI;
  std::vector<LintDiagnostic> diagnostics;  // sorted by (path, rule_id)
  bool passed = true;                       // no Error-severity diagnostics
};

// Structural linter for GitHub Actions workflows (rules GHA001..GHA010).
LintReport lint_gha(const RawConfig& config);

// Structural linter for Travis CI configs (rules TRV001..TRV007).
LintReport lint_travis(const RawConfig& config);

// Dispatch on config.dialect.
LintReport lint(const RawConfig& config);

// Known-key tables, baked in from data/*.txt at build time.
struct KnownKeys {
  std::set<std::string> root;
  std::set<std::string> job;  // empty for Travis
};
KnownKeys parse_key_table(const std::string& text);
const KnownKeys& travis_known_keys();
const KnownKeys& gha_known_keys();

namespace detail {
const char* travis_keys_table();
const char* gha_keys_table();
}  // namespace detail

}  // namespace cigrate
