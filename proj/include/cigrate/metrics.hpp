#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cigrate/normalize.hpp"

namespace cigrate {

using NGram = std::vector<std::string>;

struct NGramProfile {
  std::size_t n_max = 4;
  std::map<NGram, std::size_t> counts;  // orders 1..n_max pooled
  std::map<std::size_t, std::size_t> total_per_order;
};

NGramProfile build_ngram_profile(const TokenSequence& tokens,
                                 std::size_t n_max);

// The k globally most frequent n-grams of a background corpus; these are
// deleted from both sides before computing CrystalBLEU precision.
struct TriviallySharedSet {
  std::set<NGram> ngrams;
  std::size_t k = 0;
  std::string source_corpus_id;
};

// Term-frequency cosine over the union vocabulary. Both empty → 1, exactly
// one empty → 0. Symmetric, always within [0,1].
double cosine_similarity(const TokenSequence& a, const TokenSequence& b);

// Pools n-gram frequencies (orders 1..n_max) across the corpus and keeps the
// top k, frequency ties broken lexicographically. Throws E_EMPTY_CORPUS.
TriviallySharedSet build_trivially_shared(
    const std::vector<TokenSequence>& corpus, std::size_t k,
    std::size_t n_max = 4, std::string source_corpus_id = "");

// BLEU-n_max with the trivially shared n-grams removed from candidate and
// reference counts before clipping. No smoothing by default; `plus_one`
// smooths every precision as (match+1)/(total+1). Degenerate inputs score 0.
double crystal_bleu(const TokenSequence& candidate,
                    const TokenSequence& reference,
                    const TriviallySharedSet& trivial, std::size_t n_max = 4,
                    bool plus_one = false);

// Total clipped matches surviving deletion, summed over orders 1..n_max.
// Monotonically non-increasing in the trivially shared set.
std::size_t surviving_match_count(const TokenSequence& candidate,
                                  const TokenSequence& reference,
                                  const TriviallySharedSet& trivial,
                                  std::size_t n_max = 4);

// Byte-identical canonical serializations. Throws E_DIALECT_MISMATCH.
bool exact_match(const NormalizedConfig& a, const NormalizedConfig& b);

struct WilcoxonResult {
  double statistic = 0;  // W = min(W+, W−)
  double p_value = 1;    // two-sided
  std::size_t n_effective = 0;
};

// Paired two-sided signed-rank test: zero differences dropped, average ranks
// for ties, exact enumeration for n ≤ 12, normal approximation with tie
// correction above. Throws E_LENGTH_MISMATCH and E_ALL_ZERO_DIFFS.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& scores_a,
                                    const std::vector<double>& scores_b);

struct ScoreRecord {
  std::string pair_id;
  std::string engine;
  double cosine = 0;
  double crystal_bleu = 0;
  bool exact_match = false;
  bool lint_passed = false;
  std::size_t warnings_count = 0;

  bool operator==(const ScoreRecord&) const = default;
};

// Enforces the record invariant: an exact match scores 1.0 on both metrics.
ScoreRecord make_score_record(std::string pair_id, std::string engine,
                              double cosine, double crystal_bleu,
                              bool exact_match, bool lint_passed,
                              std::size_t warnings_count);

struct MetricSummary {
  double mean = 0;
  double median = 0;
  double stddev = 0;  // population standard deviation

  bool operator==(const MetricSummary&) const = default;
};

struct AggregateStats {
  MetricSummary cosine;
  MetricSummary crystal_bleu;
  double lint_pass_rate = 0;
  double exact_match_rate = 0;

  bool operator==(const AggregateStats&) const = default;
};

// Throws E_EMPTY on an empty record list.
AggregateStats aggregate_scores(const std::vector<ScoreRecord>& records);

}  // namespace cigrate
