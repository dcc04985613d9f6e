#pragma once

#include <cstddef>
#include <string>

#include "cigrate/corpus.hpp"
#include "cigrate/llm.hpp"

namespace cigrate {

struct EvalOptions {
  std::string engine = "rules";  // "rules" | "llm"
  CiDialect source = CiDialect::TravisCI;
  std::size_t few_shot_k = 0;
  FewShotSelection selection = FewShotSelection::First;
  std::uint64_t seed = 0;
  std::size_t trivial_k = 500;
  std::size_t n_max = 4;
  std::size_t concurrency = 4;  // in-flight limit for llm calls
  EndpointConfig endpoint;      // llm engine only
};

// Migrates every test pair of the requested direction, lints and scores the
// outputs against the references, and assembles a report (records sorted by
// pair_id). Per-pair failures become zero-score records; only corpus-level
// problems throw (E_EMPTY_SPLIT when no test pairs match the direction).
EvalReport run_eval(const MigrationCorpus& corpus, const EvalOptions& options);

}  // namespace cigrate
