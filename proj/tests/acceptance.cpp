// Acceptance harness: one self-contained check per shipping guarantee,
// each printed as a single PASS/FAIL line. Exits nonzero if any fails.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cigrate/error.hpp"
#include "cigrate/eval.hpp"
#include "cigrate/lint.hpp"
#include "cigrate/llm.hpp"
#include "cigrate/metrics.hpp"
#include "cigrate/translate.hpp"
#include "generators.hpp"
#include "httplib.h"
#include "json.hpp"

using namespace cigrate;
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

#define REQ(cond, msg)                                      \
  do {                                                      \
    if (!(cond)) throw std::runtime_error(msg);             \
  } while (0)

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- oracles

double cosine_oracle(const TokenSequence& a, const TokenSequence& b) {
  std::map<std::string, std::pair<double, double>> vec;
  for (const auto& t : a.tokens) vec[t].first += 1;
  for (const auto& t : b.tokens) vec[t].second += 1;
  double dot = 0, na = 0, nb = 0;
  for (const auto& [t, c] : vec) {
    dot += c.first * c.second;
    na += c.first * c.first;
    nb += c.second * c.second;
  }
  if (na == 0 && nb == 0) return 1.0;
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double bleu_oracle(const TokenSequence& cand, const TokenSequence& ref,
                   std::size_t n_max) {
  if (cand.tokens.empty()) return 0.0;
  double log_sum = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::map<std::vector<std::string>, long> cc, rc;
    for (std::size_t i = 0; i + n <= cand.tokens.size(); ++i)
      cc[{cand.tokens.begin() + i, cand.tokens.begin() + i + n}] += 1;
    for (std::size_t i = 0; i + n <= ref.tokens.size(); ++i)
      rc[{ref.tokens.begin() + i, ref.tokens.begin() + i + n}] += 1;
    long total = 0, matched = 0;
    for (const auto& [gram, count] : cc) {
      total += count;
      auto it = rc.find(gram);
      if (it != rc.end()) matched += std::min(count, it->second);
    }
    if (total == 0 || matched == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched) /
                        static_cast<double>(total)) /
               static_cast<double>(n_max);
  }
  double c = static_cast<double>(cand.tokens.size());
  double r = static_cast<double>(ref.tokens.size());
  double bp = std::min(1.0, std::exp(1.0 - r / c));
  return std::min(1.0, bp * std::exp(log_sum));
}

// Two-sided exact p by full sign-assignment enumeration over average ranks.
double wilcoxon_oracle(const std::vector<double>& diffs) {
  std::vector<double> mags;
  for (double d : diffs)
    if (d != 0.0) mags.push_back(std::fabs(d));
  const std::size_t n = mags.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return mags[a] < mags[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && mags[order[j + 1]] == mags[order[i]]) ++j;
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2;
    for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = avg;
    i = j + 1;
  }
  double w_plus = 0;
  std::size_t idx = 0;
  for (double d : diffs) {
    if (d == 0.0) continue;
    if (d > 0) w_plus += ranks[idx];
    ++idx;
  }
  double total = 0;
  for (double r : ranks) total += r;
  const double w_obs = std::min(w_plus, total - w_plus);
  std::size_t count = 0;
  for (std::size_t mask = 0; mask < (1ull << n); ++mask) {
    double w = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) w += ranks[i];
    if (w <= w_obs + 1e-9) ++count;
  }
  return std::min(
      1.0, 2.0 * static_cast<double>(count) / static_cast<double>(1ull << n));
}

TokenSequence random_seq(std::mt19937& gen, std::size_t max_len,
                         int vocab = 6) {
  TokenSequence s;
  std::size_t len = gen() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i)
    s.tokens.push_back(std::string(1, static_cast<char>('a' + gen() % vocab)));
  return s;
}

// ------------------------------------------------ flow-style reformatter

void append_quoted(const std::string& text, std::string& out) {
  out += '"';
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

// Same document, radically different presentation: flow style throughout and
// every string scalar double-quoted. Quoting a string scalar cannot change
// its meaning, so a reparse must normalize to identical canonical bytes.
void flow_write(const YamlNode& node, std::string& out) {
  switch (node.kind()) {
    case YamlNode::Kind::Scalar:
      if (node.is_null()) {
        out += "null";
      } else if (node.is_string()) {
        append_quoted(node.text(), out);
      } else {
        out += node.text();
      }
      return;
    case YamlNode::Kind::Sequence: {
      out += '[';
      bool first = true;
      for (const YamlNode& item : node.items()) {
        if (!first) out += ", ";
        first = false;
        flow_write(item, out);
      }
      out += ']';
      return;
    }
    case YamlNode::Kind::Mapping: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : node.entries()) {
        if (!first) out += ", ";
        first = false;
        append_quoted(key, out);
        out += ": ";
        flow_write(value, out);
      }
      out += '}';
      return;
    }
  }
}

std::string flow_variant(const YamlNode& root) {
  std::string out;
  flow_write(root, out);
  out += '\n';
  return out;
}

// ------------------------------------------------------- mock chat server

struct MockServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::mutex mu;
  std::vector<std::string> bodies;
  std::string content = "```yaml\non: push\njobs:\n  b:\n    runs-on: "
                        "ubuntu-latest\n    steps:\n      - run: make\n```";

  MockServer() {
    server.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                               httplib::Response& res) {
      {
        std::lock_guard<std::mutex> lock(mu);
        bodies.push_back(req.body);
      }
      ordered_json reply;
      reply["choices"] = ordered_json::array(
          {ordered_json{{"message", ordered_json{{"content", content}}}}});
      res.set_content(reply.dump(), "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    REQ(port > 0, "mock server failed to bind");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~MockServer() {
    server.stop();
    if (thread.joinable()) thread.join();
  }

  EndpointConfig endpoint() const {
    EndpointConfig e;
    e.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
    e.api_key = "test-key";
    e.model = "mock-model";
    e.backoff_initial_ms = 1;
    return e;
  }

  std::vector<std::string> snapshot() {
    std::lock_guard<std::mutex> lock(mu);
    return bodies;
  }
};

// --------------------------------------------------------- corpus helpers

MigrationPair synthetic_pair(const std::string& id, SplitKind split,
                             CiDialect source) {
  const std::string travis =
      "language: go\nenv:\n  global:\n    - MARK_" + id +
      "_END=1\nscript:\n  - go test ./...\n";
  const std::string gha =
      "on: push\nenv:\n  MARK_" + id +
      "_END: \"1\"\njobs:\n  b:\n    runs-on: ubuntu-latest\n    steps:\n"
      "      - run: make\n";
  MigrationPair p;
  p.pair_id = id;
  p.source = parse_config(travis, CiDialect::TravisCI);
  p.reference_target = parse_config(gha, CiDialect::GitHubActions);
  if (source == CiDialect::GitHubActions) std::swap(p.source, p.reference_target);
  p.source_dialect = source;
  p.target_dialect = other_dialect(source);
  p.split = split;
  return p;
}

MigrationCorpus synthetic_corpus(const std::vector<MigrationPair>& pairs) {
  MigrationCorpus corpus;
  corpus.pairs = pairs;
  corpus.manifest.dual = pairs.size();
  for (const MigrationPair& p : pairs) {
    corpus.manifest.split_assignment[p.pair_id] = p.split;
    corpus.manifest.source_dialect[p.pair_id] = p.source_dialect;
  }
  return corpus;
}

std::string fixtures_root() {
  const char* env = std::getenv("CIGRATE_FIXTURES");
  REQ(env != nullptr, "CIGRATE_FIXTURES is not set");
  return std::string(env);
}

// --------------------------------------------------------------- criteria

void criterion_metric_oracles() {
  const auto start = Clock::now();
  std::mt19937 gen(101);
  for (int i = 0; i < 1000; ++i) {
    TokenSequence a = random_seq(gen, 20, 8);
    TokenSequence b = random_seq(gen, 20, 8);
    const double got = cosine_similarity(a, b);
    const double want = cosine_oracle(a, b);
    REQ(std::fabs(got - want) <= 1e-12,
        "cosine deviates from the oracle by more than 1e-12");
  }
  TriviallySharedSet none;
  for (int i = 0; i < 500; ++i) {
    TokenSequence cand = random_seq(gen, 30, 6);
    TokenSequence ref = random_seq(gen, 30, 6);
    const double got = crystal_bleu(cand, ref, none, 4);
    const double want = bleu_oracle(cand, ref, 4);
    REQ(got == want, "crystal_bleu(empty set) != brute-force BLEU-4");
  }
  const double elapsed = seconds_since(start);
  REQ(elapsed < 10.0, "metric oracle suite took " + std::to_string(elapsed) +
                          "s (budget 10s)");
}

void criterion_deletion_semantics() {
  // hand-enumerated cases
  TriviallySharedSet t = build_trivially_shared({{{"a", "a", "b"}}}, 1, 1);
  REQ(t.ngrams == std::set<NGram>{{"a"}}, "top-1 unigram should be {a}");
  TokenSequence abcd{{"a", "b", "c", "d"}};
  TriviallySharedSet just_a;
  just_a.ngrams.insert({"a"});
  REQ(crystal_bleu(abcd, abcd, just_a, 2) == 1.0,
      "deleting {a} from identical 4-grams must still score 1.0");
  TriviallySharedSet none;
  REQ(crystal_bleu({{}}, abcd, none) == 0.0, "empty candidate must score 0");

  std::mt19937 gen(17);
  for (int i = 0; i < 200; ++i) {
    TokenSequence cand = random_seq(gen, 15, 4);
    TokenSequence ref = random_seq(gen, 15, 4);
    TriviallySharedSet small, big;
    for (int v = 0; v < 4; ++v) {
      std::string tok(1, static_cast<char>('a' + v));
      if (gen() % 2) small.ngrams.insert({tok});
      big.ngrams.insert(small.ngrams.begin(), small.ngrams.end());
      if (gen() % 2) big.ngrams.insert({tok});
    }
    big.ngrams.insert({"a", "b"});
    const std::size_t none_count = surviving_match_count(cand, ref, none, 3);
    const std::size_t with_small = surviving_match_count(cand, ref, small, 3);
    const std::size_t with_big = surviving_match_count(cand, ref, big, 3);
    REQ(with_big <= with_small && with_small <= none_count,
        "enlarging the trivially shared set increased surviving matches");
    // k=0 set is empty, so scores must equal plain BLEU exactly
    TriviallySharedSet k0 = build_trivially_shared({cand, ref}, 0, 4);
    REQ(k0.ngrams.empty(), "k=0 must produce the empty set");
    REQ(crystal_bleu(cand, ref, k0, 4) == bleu_oracle(cand, ref, 4),
        "k=0 CrystalBLEU must equal plain BLEU");
  }
}

void criterion_wilcoxon() {
  // every sign pattern at n <= 10, distinct magnitudes
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t mask = 0; mask < (1ull << n); ++mask) {
      std::vector<double> a(n), b(n, 0.0), diffs(n);
      for (std::size_t i = 0; i < n; ++i) {
        diffs[i] = (mask & (1ull << i)) ? static_cast<double>(i + 1)
                                        : -static_cast<double>(i + 1);
        a[i] = diffs[i];
      }
      const WilcoxonResult r = wilcoxon_signed_rank(a, b);
      const double want = wilcoxon_oracle(diffs);
      REQ(r.p_value == want, "exact p mismatch at n=" + std::to_string(n));
    }
  }
  // tied magnitudes stay exact too
  for (std::size_t mask = 0; mask < (1ull << 4); ++mask) {
    std::vector<double> a(4), b(4, 0.0), diffs(4);
    const double mags[4] = {1, 1, 2, 3};
    for (std::size_t i = 0; i < 4; ++i) {
      diffs[i] = (mask & (1ull << i)) ? mags[i] : -mags[i];
      a[i] = diffs[i];
    }
    REQ(wilcoxon_signed_rank(a, b).p_value == wilcoxon_oracle(diffs),
        "exact p mismatch with tied magnitudes");
  }
  {
    const WilcoxonResult r = wilcoxon_signed_rank({3, 1, 4}, {1, 2, 1});
    REQ(r.p_value == 0.5, "diffs [2,-1,3] must give two-sided p = 0.5");
    REQ(r.statistic == 1.0, "diffs [2,-1,3] must give W = 1");
  }
  // n >= 12: normal approximation within 0.05 of exact enumeration
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 13;
    std::vector<double> a(n), b(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      do {
        a[j] = uni(gen);
      } while (a[j] == 0.0);
    }
    const WilcoxonResult normal = wilcoxon_signed_rank(a, b);
    const double exact_p = wilcoxon_oracle(a);
    REQ(std::fabs(normal.p_value - exact_p) <= 0.05,
        "normal approximation off by more than 0.05 at n=13");
  }
}

void criterion_lint_validity() {
  const auto start = Clock::now();
  std::mt19937 gen(404);
  for (int i = 0; i < 500; ++i) {
    RawConfig travis = gens::random_travis(gen);
    MigrationResult result = migrate_rules(travis, CiDialect::GitHubActions);
    LintReport report = lint_gha(result.output.to_raw());
    if (!report.passed) {
      std::string detail = "travis->gha output failed lint:";
      for (const auto& d : report.diagnostics)
        detail += " " + d.rule_id + "@" + d.path;
      detail += "\ninput:\n" + serialize_config(travis);
      throw std::runtime_error(detail);
    }
  }
  for (int i = 0; i < 500; ++i) {
    RawConfig gha = gens::random_gha(gen);
    MigrationResult result = migrate_rules(gha, CiDialect::TravisCI);
    LintReport report = lint_travis(result.output.to_raw());
    if (!report.passed) {
      std::string detail = "gha->travis output failed lint:";
      for (const auto& d : report.diagnostics)
        detail += " " + d.rule_id + "@" + d.path;
      detail += "\ninput:\n" + serialize_config(gha);
      throw std::runtime_error(detail);
    }
  }
  const double elapsed = seconds_since(start);
  REQ(elapsed < 60.0, "lint-validity sweep took " + std::to_string(elapsed) +
                          "s (budget 60s)");
}

void criterion_ir_round_trip() {
  std::mt19937 gen(505);
  for (int i = 0; i < 500; ++i) {
    RawConfig travis = gens::random_travis(gen);
    PipelineIR first = lower_travis_to_ir(normalize(travis));
    NormalizedConfig gha = raise_ir_to_gha(first);
    PipelineIR second = lower_gha_to_ir(gha);
    if (run_commands(first) != run_commands(second)) {
      throw std::runtime_error("Run multiset changed; input:\n" +
                               serialize_config(travis) + "gha:\n" +
                               gha.serialize());
    }
  }
}

void criterion_normalizer() {
  std::mt19937 gen(606);
  for (int i = 0; i < 1000; ++i) {
    RawConfig cfg = (i % 2 == 0) ? gens::random_travis(gen)
                                 : gens::random_gha(gen);
    NormalizedConfig once = normalize(cfg);
    NormalizedConfig twice = normalize(once.to_raw());
    REQ(once.serialize() == twice.serialize(),
        "normalize is not idempotent on a generated document");
  }
  // flow restyle + requoting leaves canonical bytes, tokens, and scores alone
  TriviallySharedSet none;
  for (int i = 0; i < 200; ++i) {
    RawConfig cfg = (i % 2 == 0) ? gens::random_travis(gen)
                                 : gens::random_gha(gen);
    NormalizedConfig canonical = normalize(cfg);
    const std::string variant_text = flow_variant(cfg.document);
    RawConfig variant = parse_config(variant_text, cfg.dialect);
    NormalizedConfig canonical2 = normalize(variant);
    REQ(canonical.serialize() == canonical2.serialize(),
        "reformatting changed the canonical form:\n" + variant_text);
    TokenSequence t1 = tokenize(canonical.serialize());
    TokenSequence t2 = tokenize(canonical2.serialize());
    REQ(t1 == t2, "reformatting changed the token stream");
    TokenSequence ref = tokenize(normalize(gens::random_travis(gen)).serialize());
    REQ(cosine_similarity(t1, ref) == cosine_similarity(t2, ref),
        "reformatting changed a cosine score");
    REQ(crystal_bleu(t1, ref, none) == crystal_bleu(t2, ref, none),
        "reformatting changed a CrystalBLEU score");
    REQ(exact_match(canonical, canonical2),
        "reformatted config no longer exact-matches itself");
  }
}

void criterion_prompt_contracts() {
  // message shape and temperature for k in {0,1,3,5}
  std::vector<MigrationPair> pairs;
  for (int i = 0; i < 6; ++i)
    pairs.push_back(synthetic_pair("tr" + std::to_string(i), SplitKind::Train,
                                   CiDialect::TravisCI));
  pairs.push_back(synthetic_pair("te0", SplitKind::Test, CiDialect::TravisCI));
  MigrationCorpus corpus = synthetic_corpus(pairs);
  NormalizedConfig query = normalize(corpus.pairs.back().source);
  for (std::size_t k : {0u, 1u, 3u, 5u}) {
    FewShotPolicy policy;
    policy.k = k;
    PromptBundle bundle = build_prompt(query, CiDialect::GitHubActions,
                                       policy, corpus);
    ordered_json body = ordered_json::parse(
        serialize_request(bundle, "mock-model"));
    REQ(body["temperature"] == 0.0, "temperature must be 0");
    REQ(body["messages"].size() == 2 + 2 * k,
        "message count must be 2 + 2k at k=" + std::to_string(k));
  }

  // exactly one completion per evaluated pair, observed on the wire
  {
    MockServer mock;
    std::vector<MigrationPair> eval_pairs;
    for (int i = 0; i < 3; ++i)
      eval_pairs.push_back(synthetic_pair("etr" + std::to_string(i),
                                          SplitKind::Train,
                                          CiDialect::TravisCI));
    for (int i = 0; i < 4; ++i)
      eval_pairs.push_back(synthetic_pair("ete" + std::to_string(i),
                                          SplitKind::Test,
                                          CiDialect::TravisCI));
    MigrationCorpus eval_corpus = synthetic_corpus(eval_pairs);
    EvalOptions options;
    options.engine = "llm";
    options.source = CiDialect::TravisCI;
    options.few_shot_k = 1;
    options.endpoint = mock.endpoint();
    EvalReport report = run_eval(eval_corpus, options);
    REQ(report.records.size() == 4, "expected one record per test pair");
    const auto bodies = mock.snapshot();
    REQ(bodies.size() == 4,
        "expected exactly one completion request per pair, saw " +
            std::to_string(bodies.size()));
    for (const std::string& body : bodies) {
      ordered_json j = ordered_json::parse(body);
      REQ(j["temperature"] == 0.0, "wire temperature must be 0");
      REQ(j["messages"].size() == 4, "wire message count must be 2 + 2k");
    }
  }

  // no few-shot example or fine-tune record from the Test split
  std::mt19937 gen(707);
  for (int round = 0; round < 100; ++round) {
    std::vector<MigrationPair> rp;
    std::vector<std::string> test_ids;
    std::size_t train_travis = 0;
    const std::size_t n = 4 + gen() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string id = "p" + std::to_string(i);
      const SplitKind split = (gen() % 3 != 0) ? SplitKind::Train
                                               : SplitKind::Test;
      const CiDialect source = (gen() % 4 == 0) ? CiDialect::GitHubActions
                                                : CiDialect::TravisCI;
      rp.push_back(synthetic_pair(id, split, source));
      if (split == SplitKind::Test) test_ids.push_back(id);
      if (split == SplitKind::Train && source == CiDialect::TravisCI)
        ++train_travis;
    }
    if (train_travis == 0) {
      rp.push_back(synthetic_pair("p" + std::to_string(n), SplitKind::Train,
                                  CiDialect::TravisCI));
      train_travis = 1;
    }
    MigrationCorpus rc = synthetic_corpus(rp);
    NormalizedConfig q = normalize(rp.front().source_dialect ==
                                           CiDialect::TravisCI
                                       ? rp.front().source
                                       : rp.front().reference_target);

    FewShotPolicy policy;
    policy.k = 1 + gen() % train_travis;
    policy.selection = static_cast<FewShotSelection>(gen() % 3);
    policy.seed = gen();
    auto examples = select_few_shot_examples(
        policy, CiDialect::TravisCI, CiDialect::GitHubActions, rc, q);
    for (const MigrationPair& ex : examples) {
      REQ(ex.split == SplitKind::Train,
          "few-shot selection drew a Test-split pair");
      REQ(ex.source_dialect == CiDialect::TravisCI,
          "few-shot selection drew the wrong direction");
    }

    std::ostringstream dataset;
    export_finetune_dataset(rc, CiDialect::TravisCI,
                            CiDialect::GitHubActions, dataset);
    const std::string text = dataset.str();
    for (const std::string& id : test_ids) {
      REQ(text.find("MARK_" + id + "_END") == std::string::npos,
          "fine-tune export leaked Test pair " + id);
    }
  }
}

void criterion_fixture_eval() {
  const auto start = Clock::now();
  MigrationCorpus corpus = load_corpus(fixtures_root() + "/corpus10");
  EvalOptions options;
  options.engine = "rules";
  options.source = CiDialect::TravisCI;
  EvalReport report = run_eval(corpus, options);
  const double elapsed = seconds_since(start);
  REQ(elapsed < 5.0, "fixture evaluation took " + std::to_string(elapsed) +
                         "s (budget 5s)");
  REQ(report.records.size() == 4, "fixture corpus must yield 4 test records");
  REQ(report.aggregates == aggregate_scores(report.records),
      "persisted aggregates do not recompute from the records");

  // self-compare must find no difference; exercise the real CLI when present
  std::vector<double> xs;
  for (const ScoreRecord& r : report.records) xs.push_back(r.cosine);
  bool no_difference = false;
  try {
    wilcoxon_signed_rank(xs, xs);
  } catch (const Error& e) {
    no_difference = e.code() == ErrorCode::AllZeroDiffs;
  }
  REQ(no_difference, "self-comparison should reduce to all-zero differences");

  if (const char* bin = std::getenv("CIGRATE_BIN")) {
    fs::path dir = fs::temp_directory_path() / "cigrate_acceptance";
    fs::create_directories(dir);
    const fs::path report_path = dir / "self.json";
    write_report(report, report_path.string());
    const fs::path out_path = dir / "compare.out";
    const std::string cmd = std::string("\"") + bin + "\" compare --report-a \"" +
                            report_path.string() + "\" --report-b \"" +
                            report_path.string() + "\" > \"" +
                            out_path.string() + "\" 2>&1";
    REQ(std::system(cmd.c_str()) == 0, "compare CLI exited nonzero");
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    REQ(ss.str().find("no detectable difference") != std::string::npos,
        "compare CLI did not report 'no detectable difference'");
  }
}

void criterion_dataset_scale() {
  const char* dir = std::getenv("CIGRATE_DATASET_DIR");
  if (dir == nullptr) {
    // Fixture-corpus mode: everything above ran hermetically, which is the
    // documented fallback when the full dataset is not on disk.
    return;
  }
  CorpusManifest manifest = ingest_corpus(dir);
  REQ(manifest.travis_only == 13403,
      "travis_only=" + std::to_string(manifest.travis_only) +
          ", expected 13403");
  REQ(manifest.gha_only == 15888,
      "gha_only=" + std::to_string(manifest.gha_only) + ", expected 15888");
  REQ(manifest.dual == 1252,
      "dual=" + std::to_string(manifest.dual) + ", expected 1252");
  MigrationCorpus corpus = load_corpus(dir);
  REQ(corpus.manifest.travis_only == 13403 &&
          corpus.manifest.gha_only == 15888 && corpus.manifest.dual == 1252,
      "reloaded manifest counts disagree");
  REQ(corpus.pairs.size() == 1252, "expected 1252 loadable pairs");
}

struct Criterion {
  const char* label;
  std::function<void()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"metric oracle agreement (cosine 1e-12, CrystalBLEU exact)",
       criterion_metric_oracles},
      {"CrystalBLEU deletion monotonicity and k=0 equals BLEU",
       criterion_deletion_semantics},
      {"Wilcoxon exact enumeration and normal-regime agreement",
       criterion_wilcoxon},
      {"rule-engine outputs lint clean in both directions (500 each)",
       criterion_lint_validity},
      {"IR round-trip preserves the ordered Run-command multiset",
       criterion_ir_round_trip},
      {"normalizer idempotence and metric formatting-invariance",
       criterion_normalizer},
      {"prompt contracts (temperature 0, 2+2k, one call per pair, no "
       "test-split leakage)",
       criterion_prompt_contracts},
      {"end-to-end fixture evaluation with exact aggregates and self-compare",
       criterion_fixture_eval},
      {"dataset-scale manifest counts (runs when the dataset is present)",
       criterion_dataset_scale},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string verdict = "PASS";
    std::string detail;
    try {
      criteria[i].check();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failures;
    }
    std::cout << verdict << " [" << (i + 1) << "/" << criteria.size() << "] "
              << criteria[i].label;
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
