#pragma once

#include "cigrate/ir.hpp"
#include "cigrate/normalize.hpp"

namespace cigrate {

// Rule-based lowering. Throws E_WRONG_DIALECT on a mismatched input and
// E_EMPTY_PIPELINE when the config carries no runnable content.
PipelineIR lower_travis_to_ir(const NormalizedConfig& config);
PipelineIR lower_gha_to_ir(const NormalizedConfig& config);

// Raising is total over valid IR. Anything the target dialect cannot express
// is dropped and appended to `warnings`. Outputs are canonically normalized
// and pass the target dialect's linter.
NormalizedConfig raise_ir_to_gha(const PipelineIR& ir,
                                 std::vector<MigrationWarning>& warnings);
NormalizedConfig raise_ir_to_travis(const PipelineIR& ir,
                                    std::vector<MigrationWarning>& warnings);
NormalizedConfig raise_ir_to_gha(const PipelineIR& ir);
NormalizedConfig raise_ir_to_travis(const PipelineIR& ir);

struct MigrationResult {
  NormalizedConfig output;
  std::vector<MigrationWarning> warnings;
};

// normalize → lower → raise. Throws E_SAME_DIALECT when target equals the
// source dialect and E_EMPTY_PIPELINE when nothing runnable survives.
MigrationResult migrate_rules(const RawConfig& config, CiDialect target);

}  // namespace cigrate
