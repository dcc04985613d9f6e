#include "cigrate/error.hpp"
#include "cigrate/translate.hpp"

namespace cigrate {
namespace {

bool has_runnable_content(const YamlNode& root) {
  for (const char* key : {"language", "script", "install", "before_install",
                          "before_script"}) {
    if (root.find(key)) return true;
  }
  for (const char* group : {"jobs", "matrix"}) {
    const YamlNode* node = root.find(group);
    if (!node || node->kind() != YamlNode::Kind::Mapping) continue;
    const YamlNode* include = node->find("include");
    if (!include) continue;
    for (const YamlNode& entry : include->items()) {
      for (const char* key : {"script", "install", "before_install",
                              "before_script", "jdk", "node_js", "python",
                              "go", "rust", "language"}) {
        if (entry.kind() == YamlNode::Kind::Mapping && entry.find(key))
          return true;
      }
    }
  }
  return false;
}

}  // namespace

MigrationResult migrate_rules(const RawConfig& config, CiDialect target) {
  if (config.dialect == target) {
    throw Error(ErrorCode::SameDialect,
                "source and target dialect are both " +
                    std::string(dialect_name(target)));
  }
  NormalizedConfig norm = normalize(config);
  MigrationResult result;
  if (config.dialect == CiDialect::TravisCI) {
    PipelineIR ir = lower_travis_to_ir(norm);
    result.warnings = ir.warnings;
    result.output = raise_ir_to_gha(ir, result.warnings);
  } else {
    PipelineIR ir = lower_gha_to_ir(norm);
    result.warnings = ir.warnings;
    result.output = raise_ir_to_travis(ir, result.warnings);
  }
  if (target == CiDialect::TravisCI &&
      !has_runnable_content(result.output.document)) {
    throw Error(ErrorCode::EmptyPipeline,
                "nothing migratable survives in the travis output");
  }
  return result;
}

}  // namespace cigrate
