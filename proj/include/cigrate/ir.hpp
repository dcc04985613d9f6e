#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cigrate {

// Dialect-neutral pipeline model. Both dialects lower into this and raise
// from it; everything a dialect cannot express is recorded as a warning.

enum class RunnerOs { Linux, MacOS, Windows };

enum class StepKind {
  Run,
  SetupLanguage,
  Cache,
  Checkout,
  UnmappedAction,
  PackageInstall,
};

enum class StepCondition { Always, OnSuccess, OnFailure };

enum class WarningCode {
  NoEquivalent,      // W_NO_EQUIVALENT
  DroppedKey,        // W_DROPPED_KEY
  ApproxRunner,      // W_APPROX_RUNNER
  UnknownAction,     // W_UNKNOWN_ACTION
  ImportUnsupported, // W_IMPORT_UNSUPPORTED
};

const char* warning_code_name(WarningCode code);

struct MigrationWarning {
  WarningCode code = WarningCode::DroppedKey;
  std::string path;  // YAML path into the source document
  std::string message;

  bool operator==(const MigrationWarning&) const = default;
};

// Key→value list preserving insertion order (YAML mappings are ordered).
using OrderedStrMap = std::vector<std::pair<std::string, std::string>>;

struct TriggerSpec {
  std::vector<std::string> events;  // e.g. push, pull_request
  std::vector<std::string> branches_include;
  std::vector<std::string> branches_exclude;

  bool empty() const {
    return events.empty() && branches_include.empty() &&
           branches_exclude.empty();
  }
  bool operator==(const TriggerSpec&) const = default;
};

struct MatrixIR {
  // Dimension name → scalar values, e.g. {"java", ["11","17"]}.
  std::vector<std::pair<std::string, std::vector<std::string>>> dimensions;
  std::vector<OrderedStrMap> include;
  std::vector<OrderedStrMap> exclude;
  std::vector<OrderedStrMap> allow_failures;

  bool empty() const {
    return dimensions.empty() && include.empty() && exclude.empty() &&
           allow_failures.empty();
  }
  const std::vector<std::string>* find_dimension(const std::string& name) const;
  bool operator==(const MatrixIR&) const = default;
};

struct StepIR {
  StepKind kind = StepKind::Run;
  StepCondition condition = StepCondition::Always;
  std::string name;  // optional display name

  std::string command;                   // Run
  std::string language;                  // SetupLanguage: java|node|python|go|rust
  std::string version;                   // SetupLanguage; "" = from matrix / default
  std::vector<std::string> cache_paths;  // Cache
  std::string cache_key;                 // Cache
  std::string action_ref;                // UnmappedAction, e.g. org/act@v1
  OrderedStrMap action_inputs;           // UnmappedAction
  std::vector<std::string> packages;     // PackageInstall

  static StepIR run(std::string cmd,
                    StepCondition cond = StepCondition::Always);
  static StepIR setup_language(std::string language, std::string version);
  static StepIR cache(std::vector<std::string> paths, std::string key);
  static StepIR checkout();
  static StepIR unmapped_action(std::string ref, OrderedStrMap inputs);
  static StepIR package_install(std::vector<std::string> packages);

  bool operator==(const StepIR&) const = default;
};

struct JobIR {
  std::string id;
  RunnerOs runner_os = RunnerOs::Linux;
  std::string runner_version;  // hint, e.g. a Travis dist or a pinned label
  MatrixIR matrix;
  OrderedStrMap env;
  std::vector<StepIR> steps;
  std::vector<std::string> needs;
  bool allow_failure = false;

  bool operator==(const JobIR&) const = default;
};

struct PipelineIR {
  TriggerSpec triggers;
  OrderedStrMap global_env;
  std::vector<JobIR> jobs;
  std::vector<MigrationWarning> warnings;

  bool operator==(const PipelineIR&) const = default;
};

// Checks structural invariants: at least one job, unique job ids, non-empty
// steps, unique matrix dimension names, `needs` targets exist. Returns a
// human-readable violation description, or empty string when valid.
std::string validate_ir(const PipelineIR& ir);

// Ordered multiset of Run command strings across all jobs, in job/step order.
std::vector<std::string> run_commands(const PipelineIR& ir);

}  // namespace cigrate
