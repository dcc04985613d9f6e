#include <set>
#include <string>
#include <vector>

#include "cigrate/error.hpp"
#include "cigrate/translate.hpp"
#include "translate_util.hpp"

namespace cigrate {
namespace {

using detail::LanguageInfo;

std::string item_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(' ');
    if (start != std::string::npos) out.push_back(line.substr(start));
    pos = nl + 1;
  }
  return out;
}

struct Lowerer {
  const YamlNode& root;
  PipelineIR ir;

  explicit Lowerer(const YamlNode& r) : root(r) {}

  void warn(WarningCode code, std::string path, std::string message) {
    ir.warnings.push_back({code, std::move(path), std::move(message)});
  }

  void lower_triggers() {
    const YamlNode* on = root.find("on");
    if (!on) return;
    if (on->kind() == YamlNode::Kind::Scalar) {
      ir.triggers.events.push_back(on->text());
      return;
    }
    if (on->kind() == YamlNode::Kind::Sequence) {
      for (const YamlNode& item : on->items()) {
        if (item.kind() == YamlNode::Kind::Scalar)
          ir.triggers.events.push_back(item.text());
      }
      return;
    }
    for (const auto& [event, spec] : on->entries()) {
      ir.triggers.events.push_back(event);
      if (spec.kind() != YamlNode::Kind::Mapping) continue;
      for (const auto& [key, value] : spec.entries()) {
        const std::string path = "on." + event + "." + key;
        if (event == "push" && key == "branches") {
          for (const YamlNode& b : value.items()) {
            if (b.kind() == YamlNode::Kind::Scalar)
              ir.triggers.branches_include.push_back(b.text());
          }
        } else if (event == "push" && key == "branches-ignore") {
          for (const YamlNode& b : value.items()) {
            if (b.kind() == YamlNode::Kind::Scalar)
              ir.triggers.branches_exclude.push_back(b.text());
          }
        } else {
          warn(WarningCode::DroppedKey, path,
               "trigger filter is not migrated; dropped");
        }
      }
    }
  }

  OrderedStrMap lower_env_map(const YamlNode& env, const std::string& path) {
    OrderedStrMap out;
    if (env.kind() != YamlNode::Kind::Mapping) {
      warn(WarningCode::DroppedKey, path, "env must be a mapping; dropped");
      return out;
    }
    for (const auto& [key, value] : env.entries()) {
      if (value.kind() == YamlNode::Kind::Scalar) {
        out.emplace_back(key, value.text());
      } else {
        warn(WarningCode::DroppedKey, path + "." + key,
             "non-scalar env value dropped");
      }
    }
    return out;
  }

  void lower_matrix(const YamlNode& matrix, const std::string& path,
                    JobIR& job) {
    if (matrix.kind() != YamlNode::Kind::Mapping) {
      warn(WarningCode::DroppedKey, path,
           "matrix expression is not migrated; dropped");
      return;
    }
    auto rows = [&](const YamlNode& list, const std::string& base)
        -> std::vector<OrderedStrMap> {
      std::vector<OrderedStrMap> out;
      if (list.kind() != YamlNode::Kind::Sequence) {
        warn(WarningCode::DroppedKey, base, "expected a sequence; dropped");
        return out;
      }
      const auto& items = list.items();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].kind() != YamlNode::Kind::Mapping) {
          warn(WarningCode::DroppedKey, item_path(base, i),
               "matrix entry is not a mapping; dropped");
          continue;
        }
        OrderedStrMap row;
        for (const auto& [k, v] : items[i].entries()) {
          if (v.kind() == YamlNode::Kind::Scalar) {
            row.emplace_back(k, v.text());
          } else {
            warn(WarningCode::DroppedKey, item_path(base, i) + "." + k,
                 "non-scalar matrix value dropped");
          }
        }
        out.push_back(std::move(row));
      }
      return out;
    };
    for (const auto& [dim, value] : matrix.entries()) {
      const std::string dim_path = path + "." + dim;
      if (dim == "include") {
        job.matrix.include = rows(value, dim_path);
      } else if (dim == "exclude") {
        job.matrix.exclude = rows(value, dim_path);
      } else if (value.kind() == YamlNode::Kind::Sequence) {
        std::vector<std::string> values;
        for (const YamlNode& v : value.items()) {
          if (v.kind() == YamlNode::Kind::Scalar) values.push_back(v.text());
        }
        job.matrix.dimensions.emplace_back(dim, std::move(values));
      } else {
        warn(WarningCode::DroppedKey, dim_path,
             "matrix dimension is not a sequence; dropped");
      }
    }
  }

  void lower_runs_on(const YamlNode& runs_on, const std::string& path,
                     JobIR& job) {
    std::string label;
    if (runs_on.kind() == YamlNode::Kind::Scalar) {
      label = runs_on.text();
    } else if (runs_on.kind() == YamlNode::Kind::Sequence) {
      for (const YamlNode& item : runs_on.items()) {
        if (item.kind() != YamlNode::Kind::Scalar) continue;
        if (detail::runner_from_gha_label(item.text())) {
          label = item.text();
          break;
        }
        if (label.empty()) label = item.text();
      }
    }
    if (auto dim = detail::parse_matrix_ref(label)) {
      const std::vector<std::string>* values = job.matrix.find_dimension(*dim);
      if (values && !values->empty()) {
        if (auto runner = detail::runner_from_gha_label(values->front())) {
          job.runner_os = *runner;
          return;
        }
      }
      warn(WarningCode::ApproxRunner, path,
           "matrix runner '" + label + "' not resolvable; using ubuntu-latest");
      return;
    }
    if (auto runner = detail::runner_from_gha_label(label)) {
      job.runner_os = *runner;
      if (label.find("-latest") == std::string::npos) job.runner_version = label;
      return;
    }
    warn(WarningCode::ApproxRunner, path,
         "runner '" + label + "' mapped to ubuntu-latest");
  }

  // One GHA step → zero or one StepIR.
  void lower_step(const YamlNode& step, const std::string& path, JobIR& job) {
    if (step.kind() != YamlNode::Kind::Mapping) {
      warn(WarningCode::DroppedKey, path, "step is not a mapping; dropped");
      return;
    }
    StepIR out;
    std::set<std::string> used = {"name", "if", "run", "uses", "with"};
    if (const YamlNode* name = step.find("name")) {
      if (name->kind() == YamlNode::Kind::Scalar) out.name = name->text();
    }
    if (const YamlNode* cond = step.find("if")) {
      const std::string text =
          cond->kind() == YamlNode::Kind::Scalar ? cond->text() : "";
      if (text == "success()") {
        out.condition = StepCondition::OnSuccess;
      } else if (text == "failure()") {
        out.condition = StepCondition::OnFailure;
      } else if (text == "always()") {
        out.condition = StepCondition::Always;
      } else {
        warn(WarningCode::DroppedKey, path + ".if",
             "step condition '" + text + "' is not migrated; dropped");
      }
    }
    const YamlNode* run = step.find("run");
    const YamlNode* uses = step.find("uses");
    const YamlNode* with = step.find("with");
    OrderedStrMap inputs;
    if (with && with->kind() == YamlNode::Kind::Mapping) {
      for (const auto& [k, v] : with->entries()) {
        if (v.kind() == YamlNode::Kind::Scalar) {
          inputs.emplace_back(k, v.text());
        } else {
          warn(WarningCode::DroppedKey, path + ".with." + k,
               "non-scalar action input dropped");
        }
      }
    }
    auto input = [&](const std::string& key) -> const std::string* {
      for (const auto& [k, v] : inputs) {
        if (k == key) return &v;
      }
      return nullptr;
    };
    auto drop_other_inputs = [&](const std::set<std::string>& known) {
      for (const auto& [k, v] : inputs) {
        if (!known.count(k)) {
          warn(WarningCode::DroppedKey, path + ".with." + k,
               "action input '" + k + "' is not migrated; dropped");
        }
      }
    };

    if (run && run->kind() == YamlNode::Kind::Scalar && !run->text().empty()) {
      std::string command = run->text();
      while (!command.empty() && command.back() == '\n') command.pop_back();
      if (auto pkgs = detail::parse_apt_install_command(command)) {
        out.kind = StepKind::PackageInstall;
        out.packages = std::move(*pkgs);
      } else {
        out.kind = StepKind::Run;
        out.command = std::move(command);
      }
    } else if (uses && uses->kind() == YamlNode::Kind::Scalar) {
      const std::string ref = uses->text();
      const std::string base = ref.substr(0, ref.find('@'));
      if (base == "actions/checkout") {
        out.kind = StepKind::Checkout;
        drop_other_inputs({});
      } else if (const LanguageInfo* info = detail::language_by_action_ref(ref)) {
        out.kind = StepKind::SetupLanguage;
        out.language = info->language;
        if (const std::string* v = input(info->version_input)) {
          if (auto dim = detail::parse_matrix_ref(*v)) {
            // Canonical form: version resolved from the language dimension.
            out.version = (*dim == info->language) ? "" : *v;
          } else {
            out.version = *v;
          }
        }
        drop_other_inputs({info->version_input, "distribution"});
      } else if (base == "actions/cache") {
        out.kind = StepKind::Cache;
        if (const std::string* p = input("path")) out.cache_paths = split_lines(*p);
        if (const std::string* k = input("key")) out.cache_key = *k;
        drop_other_inputs({"path", "key"});
      } else {
        out.kind = StepKind::UnmappedAction;
        out.action_ref = ref;
        out.action_inputs = inputs;
        warn(WarningCode::UnknownAction, path,
             "action '" + ref + "' is not in the rule table");
      }
    } else {
      warn(WarningCode::DroppedKey, path,
           "step has no usable run or uses; dropped");
      return;
    }

    for (const auto& [key, value] : step.entries()) {
      if (!used.count(key)) {
        warn(WarningCode::DroppedKey, path + "." + key,
             "step key '" + key + "' is not migrated; dropped");
      }
    }
    job.steps.push_back(std::move(out));
  }

  void lower_job(const std::string& id, const YamlNode& node) {
    const std::string path = "jobs." + id;
    JobIR job;
    job.id = id;
    if (node.kind() != YamlNode::Kind::Mapping) {
      warn(WarningCode::DroppedKey, path, "job is not a mapping; dropped");
      return;
    }
    std::set<std::string> used = {"runs-on", "steps",  "strategy", "env",
                                  "needs",   "uses",   "with",
                                  "continue-on-error", "name"};
    if (const YamlNode* uses = node.find("uses")) {
      // Reusable workflow call; carried as an opaque action so nothing
      // silently vanishes.
      OrderedStrMap inputs;
      if (const YamlNode* with = node.find("with")) {
        if (with->kind() == YamlNode::Kind::Mapping) {
          for (const auto& [k, v] : with->entries()) {
            if (v.kind() == YamlNode::Kind::Scalar) inputs.emplace_back(k, v.text());
          }
        }
      }
      const std::string ref =
          uses->kind() == YamlNode::Kind::Scalar ? uses->text() : "";
      job.steps.push_back(StepIR::unmapped_action(ref, std::move(inputs)));
      warn(WarningCode::ImportUnsupported, path + ".uses",
           "reusable workflow call is not migrated");
      ir.jobs.push_back(std::move(job));
      return;
    }
    if (const YamlNode* name = node.find("name")) {
      if (name->kind() == YamlNode::Kind::Scalar) {
        warn(WarningCode::DroppedKey, path + ".name",
             "job display name has no equivalent; dropped");
      }
    }
    if (const YamlNode* strategy = node.find("strategy")) {
      used.insert("strategy");
      if (strategy->kind() == YamlNode::Kind::Mapping) {
        for (const auto& [key, value] : strategy->entries()) {
          if (key == "matrix") {
            lower_matrix(value, path + ".strategy.matrix", job);
          } else {
            warn(WarningCode::DroppedKey, path + ".strategy." + key,
                 "strategy option is not migrated; dropped");
          }
        }
      }
    }
    if (const YamlNode* runs_on = node.find("runs-on")) {
      lower_runs_on(*runs_on, path + ".runs-on", job);
    } else {
      warn(WarningCode::ApproxRunner, path,
           "job has no runs-on; assuming ubuntu-latest");
    }
    if (const YamlNode* env = node.find("env")) {
      job.env = lower_env_map(*env, path + ".env");
    }
    if (const YamlNode* needs = node.find("needs")) {
      if (needs->kind() == YamlNode::Kind::Scalar) {
        job.needs.push_back(needs->text());
      } else if (needs->kind() == YamlNode::Kind::Sequence) {
        for (const YamlNode& n : needs->items()) {
          if (n.kind() == YamlNode::Kind::Scalar) job.needs.push_back(n.text());
        }
      }
    }
    if (const YamlNode* coe = node.find("continue-on-error")) {
      if (coe->kind() == YamlNode::Kind::Scalar &&
          coe->scalar_kind() == YamlNode::ScalarKind::Bool &&
          (coe->text()[0] == 't' || coe->text()[0] == 'T')) {
        job.allow_failure = true;
      } else if (coe->kind() == YamlNode::Kind::Scalar &&
                 coe->scalar_kind() != YamlNode::ScalarKind::Bool) {
        warn(WarningCode::DroppedKey, path + ".continue-on-error",
             "non-boolean continue-on-error dropped");
      }
    }
    if (const YamlNode* steps = node.find("steps")) {
      if (steps->kind() == YamlNode::Kind::Sequence) {
        const auto& items = steps->items();
        for (std::size_t i = 0; i < items.size(); ++i)
          lower_step(items[i], item_path(path + ".steps", i), job);
      }
    }
    for (const auto& [key, value] : node.entries()) {
      if (!used.count(key)) {
        warn(WarningCode::DroppedKey, path + "." + key,
             "job key '" + key + "' is not migrated; dropped");
      }
    }
    if (job.steps.empty()) {
      warn(WarningCode::DroppedKey, path,
           "job produced no migratable steps; dropped");
      return;
    }
    ir.jobs.push_back(std::move(job));
  }

  void run() {
    std::set<std::string> used = {"on", "env", "jobs"};
    lower_triggers();
    if (const YamlNode* env = root.find("env")) {
      ir.global_env = lower_env_map(*env, "env");
    }
    if (root.find("name")) {
      warn(WarningCode::DroppedKey, "name",
           "workflow name has no equivalent; dropped");
      used.insert("name");
    }
    const YamlNode* jobs = root.find("jobs");
    for (const auto& [id, node] : jobs->entries()) {
      lower_job(id, node);
    }
    for (const auto& [key, value] : root.entries()) {
      if (!used.count(key)) {
        warn(WarningCode::DroppedKey, key,
             "workflow key '" + key + "' is not migrated; dropped");
      }
    }
  }
};

}  // namespace

PipelineIR lower_gha_to_ir(const NormalizedConfig& config) {
  if (config.dialect != CiDialect::GitHubActions) {
    throw Error(ErrorCode::WrongDialect,
                "lower_gha_to_ir requires a gha config");
  }
  const YamlNode& root = config.document;
  const YamlNode* jobs = root.find("jobs");
  if (!jobs || jobs->kind() != YamlNode::Kind::Mapping || jobs->empty()) {
    throw Error(ErrorCode::EmptyPipeline, "workflow defines no jobs");
  }
  Lowerer lowerer(root);
  lowerer.run();
  if (lowerer.ir.jobs.empty()) {
    throw Error(ErrorCode::EmptyPipeline,
                "no job produced migratable content");
  }
  return std::move(lowerer.ir);
}

}  // namespace cigrate
