#include "cigrate/eval.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "cigrate/lint.hpp"
#include "cigrate/metrics.hpp"
#include "cigrate/translate.hpp"

namespace cigrate {
namespace {

// Background distribution for the trivially-shared set: the reference-side
// texts of the train split, i.e. what idiomatic target-dialect configs look
// like.
TriviallySharedSet trivial_set_for(const MigrationCorpus& corpus,
                                   CiDialect source, std::size_t k,
                                   std::size_t n_max) {
  std::vector<TokenSequence> background;
  for (const MigrationPair& pair : corpus.pairs) {
    if (pair.split == SplitKind::Train && pair.source_dialect == source) {
      background.push_back(
          tokenize(normalize(pair.reference_target).serialize()));
    }
  }
  if (background.empty() || k == 0) {
    TriviallySharedSet empty;
    empty.k = k;
    empty.source_corpus_id = corpus_fingerprint(corpus.manifest);
    return empty;
  }
  return build_trivially_shared(background, k, n_max,
                                corpus_fingerprint(corpus.manifest));
}

ScoreRecord score_pair(const MigrationPair& pair, const EvalOptions& options,
                       const MigrationCorpus& corpus,
                       const TriviallySharedSet& trivial) {
  ScoreRecord failed;
  failed.pair_id = pair.pair_id;
  failed.engine = options.engine;
  try {
    NormalizedConfig candidate;
    std::size_t warnings_count = 0;
    if (options.engine == "rules") {
      MigrationResult result =
          migrate_rules(pair.source, pair.target_dialect);
      candidate = std::move(result.output);
      warnings_count = result.warnings.size();
    } else {
      std::optional<FewShotPolicy> policy;
      if (options.few_shot_k > 0) {
        policy = FewShotPolicy{options.few_shot_k, options.selection,
                               options.seed};
      }
      PromptBundle bundle = build_prompt(normalize(pair.source),
                                         pair.target_dialect, policy, corpus);
      CompletionResult completion = complete(bundle, options.endpoint);
      if (!completion.extracted_yaml) {
        return failed;
      }
      candidate = normalize(
          parse_config(*completion.extracted_yaml, pair.target_dialect));
    }
    const NormalizedConfig reference = normalize(pair.reference_target);
    const std::string candidate_text = candidate.serialize();
    const std::string reference_text = reference.serialize();
    const TokenSequence candidate_tokens = tokenize(candidate_text);
    const TokenSequence reference_tokens = tokenize(reference_text);
    const bool lint_ok = lint(candidate.to_raw()).passed;
    return make_score_record(
        pair.pair_id, options.engine,
        cosine_similarity(candidate_tokens, reference_tokens),
        crystal_bleu(candidate_tokens, reference_tokens, trivial,
                     options.n_max),
        exact_match(candidate, reference), lint_ok, warnings_count);
  } catch (const Error&) {
    return failed;
  }
}

}  // namespace

EvalReport run_eval(const MigrationCorpus& corpus,
                    const EvalOptions& options) {
  std::vector<const MigrationPair*> test_pairs;
  for (const MigrationPair& pair : corpus.pairs) {
    if (pair.split == SplitKind::Test &&
        pair.source_dialect == options.source) {
      test_pairs.push_back(&pair);
    }
  }
  if (test_pairs.empty()) {
    throw Error(ErrorCode::EmptySplit,
                "test split has no pairs with source dialect " +
                    std::string(dialect_name(options.source)));
  }

  const TriviallySharedSet trivial =
      trivial_set_for(corpus, options.source, options.trivial_k,
                      options.n_max);

  std::vector<ScoreRecord> records(test_pairs.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(options.concurrency,
                                        test_pairs.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < test_pairs.size(); ++i) {
      records[i] = score_pair(*test_pairs[i], options, corpus, trivial);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < test_pairs.size();
             i = next.fetch_add(1)) {
          records[i] = score_pair(*test_pairs[i], options, corpus, trivial);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  std::sort(records.begin(), records.end(),
            [](const ScoreRecord& a, const ScoreRecord& b) {
              return a.pair_id < b.pair_id;
            });

  EvalReport report;
  report.engine = options.engine;
  report.template_id =
      options.engine == "llm" ? kPromptTemplateId : "rules-v1";
  report.parameters.few_shot_k = options.few_shot_k;
  report.parameters.n_max = options.n_max;
  report.parameters.trivial_k = options.trivial_k;
  report.parameters.model =
      options.engine == "llm" ? options.endpoint.model : "";
  report.parameters.temperature = 0.0;
  report.run_id =
      compute_run_id(report.engine, report.template_id, report.parameters,
                     corpus_fingerprint(corpus.manifest));
  report.records = std::move(records);
  report.aggregates = aggregate_scores(report.records);
  report.created_at = current_utc_timestamp();
  return report;
}

}  // namespace cigrate
