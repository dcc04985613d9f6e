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

YamlNode plain_list(const std::vector<std::string>& values) {
  YamlNode seq = YamlNode::sequence();
  for (const auto& v : values) seq.push_back(YamlNode::plain_scalar(v));
  return seq;
}

YamlNode plain_map(const OrderedStrMap& pairs) {
  YamlNode map = YamlNode::mapping();
  for (const auto& [k, v] : pairs) map.set(k, YamlNode::plain_scalar(v));
  return map;
}

YamlNode raise_triggers(const TriggerSpec& triggers) {
  std::vector<std::string> events = triggers.events;
  if (events.empty()) events = {"push", "pull_request"};
  const bool filtered = !triggers.branches_include.empty() ||
                        !triggers.branches_exclude.empty();
  if (!filtered) return string_list(events);
  YamlNode on = YamlNode::mapping();
  for (const std::string& event : events) {
    YamlNode spec = YamlNode::mapping();
    if (event == "push") {
      if (!triggers.branches_include.empty())
        spec.set("branches", string_list(triggers.branches_include));
      if (!triggers.branches_exclude.empty())
        spec.set("branches-ignore", string_list(triggers.branches_exclude));
    }
    on.set(event, std::move(spec));
  }
  return on;
}

YamlNode raise_matrix(const MatrixIR& matrix,
                      std::vector<MigrationWarning>& warnings,
                      const std::string& job_id) {
  YamlNode node = YamlNode::mapping();
  for (const auto& [dim, values] : matrix.dimensions) {
    node.set(dim, plain_list(values));
  }
  auto rows = [](const std::vector<OrderedStrMap>& list) {
    YamlNode seq = YamlNode::sequence();
    for (const auto& row : list) seq.push_back(plain_map(row));
    return seq;
  };
  if (!matrix.include.empty()) node.set("include", rows(matrix.include));
  if (!matrix.exclude.empty()) node.set("exclude", rows(matrix.exclude));
  if (!matrix.allow_failures.empty()) {
    // Warned at lowering time with the source path; nothing to emit here.
    (void)warnings;
    (void)job_id;
  }
  return node;
}

// Steps positioned after a conditioned step keep running unconditionally in
// the source dialect, which needs an explicit always() on the GHA side.
YamlNode raise_step(const StepIR& step, const MatrixIR& matrix,
                    bool after_conditioned) {
  YamlNode node = YamlNode::mapping();
  if (!step.name.empty()) node.set("name", YamlNode::str(step.name));
  switch (step.condition) {
    case StepCondition::OnSuccess:
      node.set("if", YamlNode::str("success()"));
      break;
    case StepCondition::OnFailure:
      node.set("if", YamlNode::str("failure()"));
      break;
    case StepCondition::Always:
      if (after_conditioned) node.set("if", YamlNode::str("always()"));
      break;
  }
  switch (step.kind) {
    case StepKind::Run:
      node.set("run", YamlNode::str(step.command));
      break;
    case StepKind::PackageInstall:
      node.set("run",
               YamlNode::str(detail::apt_install_command(step.packages)));
      break;
    case StepKind::Checkout:
      node.set("uses", YamlNode::str(detail::kCheckoutAction));
      break;
    case StepKind::SetupLanguage: {
      const LanguageInfo* info = detail::language_by_name(step.language);
      if (!info) break;
      node.set("uses", YamlNode::str(info->setup_action));
      std::string version = step.version;
      if (version.empty()) {
        version = matrix.find_dimension(info->language)
                      ? detail::matrix_ref(info->language)
                      : info->default_version;
      }
      YamlNode with = YamlNode::mapping();
      with.set(info->version_input, YamlNode::plain_scalar(version));
      if (step.language == "java") {
        with.set("distribution", YamlNode::str("temurin"));
      }
      node.set("with", std::move(with));
      break;
    }
    case StepKind::Cache: {
      node.set("uses", YamlNode::str(detail::kCacheAction));
      YamlNode with = YamlNode::mapping();
      std::string path;
      for (const auto& p : step.cache_paths) {
        if (!path.empty()) path += "\n";
        path += p;
      }
      with.set("path", YamlNode::str(path));
      with.set("key", YamlNode::str(step.cache_key));
      node.set("with", std::move(with));
      break;
    }
    case StepKind::UnmappedAction: {
      node.set("uses", YamlNode::str(step.action_ref));
      if (!step.action_inputs.empty())
        node.set("with", plain_map(step.action_inputs));
      break;
    }
  }
  return node;
}

YamlNode raise_job(const JobIR& job, std::vector<MigrationWarning>& warnings) {
  YamlNode node = YamlNode::mapping();
  std::string runs_on;
  if (job.matrix.find_dimension("os")) {
    runs_on = detail::matrix_ref("os");
  } else if (!job.runner_version.empty() &&
             detail::runner_from_gha_label(job.runner_version)) {
    runs_on = job.runner_version;  // a concrete label, e.g. ubuntu-22.04
  } else {
    runs_on = detail::gha_label_for(job.runner_os);
  }
  node.set("runs-on", YamlNode::str(runs_on));
  if (!job.needs.empty()) node.set("needs", string_list(job.needs));
  if (!job.matrix.empty()) {
    YamlNode matrix = raise_matrix(job.matrix, warnings, job.id);
    if (!matrix.empty()) {
      YamlNode strategy = YamlNode::mapping();
      strategy.set("matrix", std::move(matrix));
      node.set("strategy", std::move(strategy));
    }
  }
  if (job.allow_failure) node.set("continue-on-error", YamlNode::boolean(true));
  if (!job.env.empty()) node.set("env", plain_map(job.env));

  int last_conditioned = -1;
  for (std::size_t i = 0; i < job.steps.size(); ++i) {
    if (job.steps[i].condition != StepCondition::Always)
      last_conditioned = static_cast<int>(i);
  }
  YamlNode steps = YamlNode::sequence();
  for (std::size_t i = 0; i < job.steps.size(); ++i) {
    const bool after_conditioned =
        last_conditioned >= 0 && static_cast<int>(i) > last_conditioned;
    steps.push_back(raise_step(job.steps[i], job.matrix, after_conditioned));
  }
  node.set("steps", std::move(steps));
  return node;
}

}  // namespace

NormalizedConfig raise_ir_to_gha(const PipelineIR& ir,
                                 std::vector<MigrationWarning>& warnings) {
  YamlNode doc = YamlNode::mapping();
  doc.set("name", YamlNode::str("CI"));
  doc.set("on", raise_triggers(ir.triggers));
  if (!ir.global_env.empty()) doc.set("env", plain_map(ir.global_env));
  YamlNode jobs = YamlNode::mapping();
  for (const JobIR& job : ir.jobs) {
    jobs.set(job.id, raise_job(job, warnings));
  }
  doc.set("jobs", std::move(jobs));

  RawConfig raw;
  raw.dialect = CiDialect::GitHubActions;
  raw.document = std::move(doc);
  return normalize(raw);
}

NormalizedConfig raise_ir_to_gha(const PipelineIR& ir) {
  std::vector<MigrationWarning> warnings;
  return raise_ir_to_gha(ir, warnings);
}

}  // namespace cigrate
