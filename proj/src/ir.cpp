#include "cigrate/ir.hpp"

#include <set>

namespace cigrate {

const char* warning_code_name(WarningCode code) {
  switch (code) {
    case WarningCode::NoEquivalent: return "W_NO_EQUIVALENT";
    case WarningCode::DroppedKey: return "W_DROPPED_KEY";
    case WarningCode::ApproxRunner: return "W_APPROX_RUNNER";
    case WarningCode::UnknownAction: return "W_UNKNOWN_ACTION";
    case WarningCode::ImportUnsupported: return "W_IMPORT_UNSUPPORTED";
  }
  return "W_UNKNOWN";
}

const std::vector<std::string>* MatrixIR::find_dimension(
    const std::string& name) const {
  for (const auto& [dim, values] : dimensions) {
    if (dim == name) return &values;
  }
  return nullptr;
}

StepIR StepIR::run(std::string cmd, StepCondition cond) {
  StepIR s;
  s.kind = StepKind::Run;
  s.command = std::move(cmd);
  s.condition = cond;
  return s;
}

StepIR StepIR::setup_language(std::string language, std::string version) {
  StepIR s;
  s.kind = StepKind::SetupLanguage;
  s.language = std::move(language);
  s.version = std::move(version);
  return s;
}

StepIR StepIR::cache(std::vector<std::string> paths, std::string key) {
  StepIR s;
  s.kind = StepKind::Cache;
  s.cache_paths = std::move(paths);
  s.cache_key = std::move(key);
  return s;
}

StepIR StepIR::checkout() {
  StepIR s;
  s.kind = StepKind::Checkout;
  return s;
}

StepIR StepIR::unmapped_action(std::string ref, OrderedStrMap inputs) {
  StepIR s;
  s.kind = StepKind::UnmappedAction;
  s.action_ref = std::move(ref);
  s.action_inputs = std::move(inputs);
  return s;
}

StepIR StepIR::package_install(std::vector<std::string> packages) {
  StepIR s;
  s.kind = StepKind::PackageInstall;
  s.packages = std::move(packages);
  return s;
}

std::string validate_ir(const PipelineIR& ir) {
  if (ir.jobs.empty()) return "pipeline has no jobs";
  std::set<std::string> ids;
  for (const JobIR& job : ir.jobs) {
    if (job.id.empty()) return "job with empty id";
    if (!ids.insert(job.id).second) return "duplicate job id: " + job.id;
    if (job.steps.empty()) return "job has no steps: " + job.id;
    std::set<std::string> dims;
    for (const auto& [dim, values] : job.matrix.dimensions) {
      if (!dims.insert(dim).second)
        return "duplicate matrix dimension in job " + job.id + ": " + dim;
    }
    for (const StepIR& step : job.steps) {
      if (step.kind == StepKind::Run && step.command.empty())
        return "empty run command in job " + job.id;
    }
  }
  for (const JobIR& job : ir.jobs) {
    for (const std::string& need : job.needs) {
      if (!ids.count(need))
        return "job " + job.id + " needs unknown job: " + need;
    }
  }
  return "";
}

std::vector<std::string> run_commands(const PipelineIR& ir) {
  std::vector<std::string> out;
  for (const JobIR& job : ir.jobs) {
    for (const StepIR& step : job.steps) {
      if (step.kind == StepKind::Run) out.push_back(step.command);
    }
  }
  return out;
}

}  // namespace cigrate
