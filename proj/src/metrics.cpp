#include "cigrate/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cigrate/error.hpp"

namespace cigrate {
namespace {

// Per-order n-gram counts after removing the trivially shared set.
std::vector<std::map<NGram, std::size_t>> counted_orders(
    const TokenSequence& seq, const TriviallySharedSet& trivial,
    std::size_t n_max) {
  std::vector<std::map<NGram, std::size_t>> orders(n_max);
  const auto& toks = seq.tokens;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (toks.size() < n) break;
    auto& counts = orders[n - 1];
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
      NGram gram(toks.begin() + i, toks.begin() + i + n);
      if (trivial.ngrams.count(gram)) continue;
      ++counts[gram];
    }
  }
  return orders;
}

std::size_t order_total(const std::map<NGram, std::size_t>& counts) {
  std::size_t total = 0;
  for (const auto& [gram, c] : counts) total += c;
  return total;
}

std::size_t clipped_matches(const std::map<NGram, std::size_t>& cand,
                            const std::map<NGram, std::size_t>& ref) {
  std::size_t matched = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) matched += std::min(count, it->second);
  }
  return matched;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  s.median = median_of(values);
  return s;
}

}  // namespace

NGramProfile build_ngram_profile(const TokenSequence& tokens,
                                 std::size_t n_max) {
  NGramProfile profile;
  profile.n_max = n_max;
  TriviallySharedSet none;
  auto orders = counted_orders(tokens, none, n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::size_t total = 0;
    for (auto& [gram, count] : orders[n - 1]) {
      profile.counts[gram] += count;
      total += count;
    }
    profile.total_per_order[n] = total;
  }
  return profile;
}

double cosine_similarity(const TokenSequence& a, const TokenSequence& b) {
  if (a.tokens.empty() && b.tokens.empty()) return 1.0;
  if (a.tokens.empty() || b.tokens.empty()) return 0.0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> tf;
  for (const auto& t : a.tokens) ++tf[t].first;
  for (const auto& t : b.tokens) ++tf[t].second;
  double dot = 0, na = 0, nb = 0;
  for (const auto& [token, counts] : tf) {
    const double ca = static_cast<double>(counts.first);
    const double cb = static_cast<double>(counts.second);
    dot += ca * cb;
    na += ca * ca;
    nb += cb * cb;
  }
  // sqrt of the product (not product of sqrts) so identical count vectors
  // score exactly 1.0: na*nb is then a perfect square and sqrt is exact.
  const double denom = std::sqrt(na * nb);
  if (denom == 0) return 0.0;
  return std::min(1.0, dot / denom);
}

TriviallySharedSet build_trivially_shared(
    const std::vector<TokenSequence>& corpus, std::size_t k,
    std::size_t n_max, std::string source_corpus_id) {
  if (corpus.empty()) {
    throw Error(ErrorCode::EmptyCorpus,
                "trivially-shared extraction needs a non-empty corpus");
  }
  TriviallySharedSet out;
  out.k = k;
  out.source_corpus_id = std::move(source_corpus_id);
  if (k == 0) return out;
  std::map<NGram, std::size_t> pooled;
  TriviallySharedSet none;
  for (const TokenSequence& seq : corpus) {
    auto orders = counted_orders(seq, none, n_max);
    for (const auto& counts : orders) {
      for (const auto& [gram, count] : counts) pooled[gram] += count;
    }
  }
  std::vector<std::pair<NGram, std::size_t>> ranked(pooled.begin(),
                                                    pooled.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
    out.ngrams.insert(ranked[i].first);
  }
  return out;
}

double crystal_bleu(const TokenSequence& candidate,
                    const TokenSequence& reference,
                    const TriviallySharedSet& trivial, std::size_t n_max,
                    bool plus_one) {
  if (n_max == 0) return 0.0;
  auto cand = counted_orders(candidate, trivial, n_max);
  auto ref = counted_orders(reference, trivial, n_max);
  const std::size_t c = order_total(cand[0]);
  const std::size_t r = order_total(ref[0]);
  if (c == 0) return 0.0;
  double log_sum = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t total = order_total(cand[n - 1]);
    const std::size_t matched = clipped_matches(cand[n - 1], ref[n - 1]);
    double p;
    if (plus_one) {
      p = static_cast<double>(matched + 1) / static_cast<double>(total + 1);
    } else {
      if (matched == 0 || total == 0) return 0.0;
      p = static_cast<double>(matched) / static_cast<double>(total);
    }
    log_sum += std::log(p) / static_cast<double>(n_max);
  }
  const double ratio =
      1.0 - static_cast<double>(r) / static_cast<double>(c);
  const double bp = std::min(1.0, std::exp(ratio));
  return std::min(1.0, bp * std::exp(log_sum));
}

std::size_t surviving_match_count(const TokenSequence& candidate,
                                  const TokenSequence& reference,
                                  const TriviallySharedSet& trivial,
                                  std::size_t n_max) {
  auto cand = counted_orders(candidate, trivial, n_max);
  auto ref = counted_orders(reference, trivial, n_max);
  std::size_t total = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    total += clipped_matches(cand[n - 1], ref[n - 1]);
  }
  return total;
}

bool exact_match(const NormalizedConfig& a, const NormalizedConfig& b) {
  if (a.dialect != b.dialect) {
    throw Error(ErrorCode::DialectMismatch,
                "exact_match compares configs of one dialect");
  }
  return a.serialize() == b.serialize();
}

ScoreRecord make_score_record(std::string pair_id, std::string engine,
                              double cosine, double crystal_bleu,
                              bool exact_match, bool lint_passed,
                              std::size_t warnings_count) {
  ScoreRecord r;
  r.pair_id = std::move(pair_id);
  r.engine = std::move(engine);
  r.exact_match = exact_match;
  r.cosine = exact_match ? 1.0 : cosine;
  r.crystal_bleu = exact_match ? 1.0 : crystal_bleu;
  r.lint_passed = lint_passed;
  r.warnings_count = warnings_count;
  return r;
}

AggregateStats aggregate_scores(const std::vector<ScoreRecord>& records) {
  if (records.empty()) {
    throw Error(ErrorCode::Empty, "no score records to aggregate");
  }
  AggregateStats stats;
  std::vector<double> cosines, bleus;
  std::size_t lint_ok = 0, exact_ok = 0;
  for (const ScoreRecord& r : records) {
    cosines.push_back(r.cosine);
    bleus.push_back(r.crystal_bleu);
    if (r.lint_passed) ++lint_ok;
    if (r.exact_match) ++exact_ok;
  }
  stats.cosine = summarize(cosines);
  stats.crystal_bleu = summarize(bleus);
  const double n = static_cast<double>(records.size());
  stats.lint_pass_rate = static_cast<double>(lint_ok) / n;
  stats.exact_match_rate = static_cast<double>(exact_ok) / n;
  return stats;
}

}  // namespace cigrate
