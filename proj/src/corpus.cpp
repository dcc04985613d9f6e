#include "cigrate/corpus.hpp"

#include <algorithm>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cigrate/error.hpp"
#include "cigrate/hash.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace cigrate {
namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::Io, "short write to " + path.string());
  }
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Shortest round-trippable decimal form, same as the JSON output.
std::string number_text(double value) { return ordered_json(value).dump(); }

ordered_json summary_json(const MetricSummary& s) {
  return ordered_json{
      {"mean", s.mean}, {"median", s.median}, {"stddev", s.stddev}};
}

MetricSummary summary_from(const ordered_json& j) {
  MetricSummary s;
  s.mean = j.at("mean").get<double>();
  s.median = j.at("median").get<double>();
  s.stddev = j.at("stddev").get<double>();
  return s;
}

// Single-sided project trees live beside pairs/: <root>/travis_only and
// <root>/gha_only hold either bare .yml files or one directory per project.
std::size_t count_single_sided(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) {
      ++count;
    } else if (entry.is_regular_file()) {
      const std::string ext = entry.path().extension().string();
      if (ext == ".yml" || ext == ".yaml") ++count;
    }
  }
  return count;
}

}  // namespace

const char* split_name(SplitKind split) {
  return split == SplitKind::Train ? "train" : "test";
}

SplitKind split_from_name(const std::string& name) {
  if (name == "train") return SplitKind::Train;
  if (name == "test") return SplitKind::Test;
  throw Error(ErrorCode::ManifestMissing, "invalid split name '" + name + "'");
}

MigrationCorpus load_corpus(const std::string& root) {
  const fs::path rootp(root);
  const fs::path manifest_path = rootp / "manifest.json";
  if (!fs::exists(manifest_path)) {
    throw Error(ErrorCode::ManifestMissing,
                "no manifest.json under " + root);
  }
  ordered_json j;
  try {
    j = ordered_json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ManifestMissing,
                "manifest.json is not valid JSON: " + std::string(e.what()));
  }
  MigrationCorpus corpus;
  CorpusManifest& m = corpus.manifest;
  m.schema_version = j.value("schema_version", "");
  if (m.schema_version != "1") {
    throw Error(ErrorCode::ManifestMissing,
                "unsupported manifest schema_version '" + m.schema_version +
                    "'");
  }
  if (j.contains("counts")) {
    const auto& counts = j.at("counts");
    m.travis_only = counts.value("travis_only", 0u);
    m.gha_only = counts.value("gha_only", 0u);
    m.dual = counts.value("dual", 0u);
  }
  if (j.contains("default_source")) {
    m.default_source = dialect_from_name(j.at("default_source").get<std::string>());
  }
  if (j.contains("source_dialect")) {
    for (const auto& [id, value] : j.at("source_dialect").items()) {
      m.source_dialect[id] = dialect_from_name(value.get<std::string>());
    }
  }
  if (j.contains("split_assignment")) {
    for (const auto& [id, value] : j.at("split_assignment").items()) {
      m.split_assignment[id] = split_from_name(value.get<std::string>());
    }
  }
  if (j.contains("split_seed") && j.at("split_seed").is_number()) {
    m.split_seed = j.at("split_seed").get<std::uint64_t>();
  }

  std::vector<std::string> ids;
  const fs::path pairs_dir = rootp / "pairs";
  if (fs::exists(pairs_dir)) {
    for (const auto& entry : fs::directory_iterator(pairs_dir)) {
      if (entry.is_directory()) ids.push_back(entry.path().filename().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  if (m.dual != ids.size()) {
    throw Error(ErrorCode::CountMismatch,
                "manifest says dual=" + std::to_string(m.dual) + " but " +
                    std::to_string(ids.size()) + " pair directories exist");
  }
  for (const auto& [label, dir, expected] :
       {std::tuple<const char*, fs::path, std::size_t>{
            "travis_only", rootp / "travis_only", m.travis_only},
        {"gha_only", rootp / "gha_only", m.gha_only}}) {
    if (!fs::exists(dir)) continue;  // counts are metadata-only then
    const std::size_t found = count_single_sided(dir);
    if (found != expected) {
      throw Error(ErrorCode::CountMismatch,
                  "manifest says " + std::string(label) + "=" +
                      std::to_string(expected) + " but " +
                      std::to_string(found) + " entries exist");
    }
  }
  for (const auto& [id, split] : m.split_assignment) {
    if (!std::binary_search(ids.begin(), ids.end(), id)) {
      throw Error(ErrorCode::PairFileMissing,
                  "pair '" + id + "' is listed in the manifest but has no "
                  "directory");
    }
  }

  for (const std::string& id : ids) {
    auto split_it = m.split_assignment.find(id);
    if (split_it == m.split_assignment.end()) {
      throw Error(ErrorCode::CountMismatch,
                  "pair '" + id + "' has no split assignment");
    }
    const fs::path dir = pairs_dir / id;
    const fs::path travis_path = dir / "travis.yml";
    const fs::path gha_path = dir / "gha.yml";
    for (const fs::path* p : {&travis_path, &gha_path}) {
      if (!fs::exists(*p)) {
        throw Error(ErrorCode::PairFileMissing,
                    "pair '" + id + "': missing " +
                        p->filename().string());
      }
    }
    RawConfig travis, gha;
    try {
      travis = parse_config(read_file(travis_path), CiDialect::TravisCI,
                            travis_path.string());
      gha = parse_config(read_file(gha_path), CiDialect::GitHubActions,
                         gha_path.string());
    } catch (const Error& e) {
      throw Error(e.code(), "pair '" + id + "': " + e.message());
    }
    MigrationPair pair;
    pair.pair_id = id;
    auto src_it = m.source_dialect.find(id);
    pair.source_dialect =
        src_it != m.source_dialect.end() ? src_it->second : m.default_source;
    pair.target_dialect = other_dialect(pair.source_dialect);
    if (pair.source_dialect == CiDialect::TravisCI) {
      pair.source = std::move(travis);
      pair.reference_target = std::move(gha);
    } else {
      pair.source = std::move(gha);
      pair.reference_target = std::move(travis);
    }
    pair.split = split_it->second;
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

std::vector<MigrationPair> split_corpus(const MigrationCorpus& corpus,
                                        SplitKind which) {
  std::vector<MigrationPair> out;
  for (const MigrationPair& pair : corpus.pairs) {
    if (pair.split == which) out.push_back(pair);
  }
  return out;
}

std::string corpus_fingerprint(const CorpusManifest& manifest) {
  std::ostringstream buf;
  buf << manifest.schema_version << '|' << manifest.travis_only << '|'
      << manifest.gha_only << '|' << manifest.dual << '|'
      << dialect_name(manifest.default_source);
  for (const auto& [id, split] : manifest.split_assignment) {
    buf << '|' << id << '=' << split_name(split);
  }
  for (const auto& [id, dialect] : manifest.source_dialect) {
    buf << '|' << id << ':' << dialect_name(dialect);
  }
  if (manifest.split_seed) buf << "|seed=" << *manifest.split_seed;
  return to_hex(fnv1a64(buf.str()));
}

std::string compute_run_id(const std::string& engine,
                           const std::string& template_id,
                           const EvalParameters& parameters,
                           const std::string& corpus_fingerprint) {
  std::ostringstream buf;
  buf << engine << '|' << template_id << '|' << parameters.few_shot_k << '|'
      << parameters.n_max << '|' << parameters.trivial_k << '|'
      << parameters.model << '|' << number_text(parameters.temperature) << '|'
      << corpus_fingerprint;
  return to_hex(fnv1a64(buf.str()));
}

std::string current_utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_report(const EvalReport& report, const std::string& out_path) {
  std::vector<ScoreRecord> records = report.records;
  std::sort(records.begin(), records.end(),
            [](const ScoreRecord& a, const ScoreRecord& b) {
              return a.pair_id < b.pair_id;
            });
  ordered_json j;
  j["schema_version"] = "1";
  j["run_id"] = report.run_id;
  j["engine"] = report.engine;
  j["template_id"] = report.template_id;
  j["parameters"] = ordered_json{{"k", report.parameters.few_shot_k},
                                 {"n_max", report.parameters.n_max},
                                 {"trivial_k", report.parameters.trivial_k},
                                 {"model", report.parameters.model},
                                 {"temperature", report.parameters.temperature}};
  j["created_at"] = report.created_at;
  ordered_json recs = ordered_json::array();
  for (const ScoreRecord& r : records) {
    recs.push_back(ordered_json{{"pair_id", r.pair_id},
                                {"engine", r.engine},
                                {"cosine", r.cosine},
                                {"crystal_bleu", r.crystal_bleu},
                                {"exact_match", r.exact_match},
                                {"lint_passed", r.lint_passed},
                                {"warnings_count", r.warnings_count}});
  }
  j["records"] = std::move(recs);
  j["aggregates"] =
      ordered_json{{"cosine", summary_json(report.aggregates.cosine)},
                   {"crystal_bleu", summary_json(report.aggregates.crystal_bleu)},
                   {"lint_pass_rate", report.aggregates.lint_pass_rate},
                   {"exact_match_rate", report.aggregates.exact_match_rate}};
  write_file(out_path, j.dump(2) + "\n");

  fs::path csv_path(out_path);
  csv_path.replace_extension(".csv");
  std::ostringstream csv;
  csv << "pair_id,engine,cosine,crystal_bleu,exact_match,lint_passed,"
         "warnings_count\r\n";
  for (const ScoreRecord& r : records) {
    csv << csv_escape(r.pair_id) << ',' << csv_escape(r.engine) << ','
        << number_text(r.cosine) << ',' << number_text(r.crystal_bleu) << ','
        << (r.exact_match ? "true" : "false") << ','
        << (r.lint_passed ? "true" : "false") << ',' << r.warnings_count
        << "\r\n";
  }
  write_file(csv_path, csv.str());
}

EvalReport read_report(const std::string& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io,
                "report is not valid JSON: " + std::string(e.what()));
  }
  EvalReport report;
  try {
    report.run_id = j.at("run_id").get<std::string>();
    report.engine = j.at("engine").get<std::string>();
    report.template_id = j.at("template_id").get<std::string>();
    const auto& p = j.at("parameters");
    report.parameters.few_shot_k = p.at("k").get<std::size_t>();
    report.parameters.n_max = p.at("n_max").get<std::size_t>();
    report.parameters.trivial_k = p.at("trivial_k").get<std::size_t>();
    report.parameters.model = p.at("model").get<std::string>();
    report.parameters.temperature = p.at("temperature").get<double>();
    report.created_at = j.at("created_at").get<std::string>();
    for (const auto& rec : j.at("records")) {
      ScoreRecord r;
      r.pair_id = rec.at("pair_id").get<std::string>();
      r.engine = rec.at("engine").get<std::string>();
      r.cosine = rec.at("cosine").get<double>();
      r.crystal_bleu = rec.at("crystal_bleu").get<double>();
      r.exact_match = rec.at("exact_match").get<bool>();
      r.lint_passed = rec.at("lint_passed").get<bool>();
      r.warnings_count = rec.at("warnings_count").get<std::size_t>();
      report.records.push_back(std::move(r));
    }
    const auto& agg = j.at("aggregates");
    report.aggregates.cosine = summary_from(agg.at("cosine"));
    report.aggregates.crystal_bleu = summary_from(agg.at("crystal_bleu"));
    report.aggregates.lint_pass_rate = agg.at("lint_pass_rate").get<double>();
    report.aggregates.exact_match_rate =
        agg.at("exact_match_rate").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, "malformed report: " + std::string(e.what()));
  }
  return report;
}

CorpusManifest ingest_corpus(const std::string& root,
                             CiDialect default_source, std::uint64_t seed) {
  const fs::path rootp(root);
  const fs::path pairs_dir = rootp / "pairs";
  std::vector<std::string> ids;
  if (fs::exists(pairs_dir)) {
    for (const auto& entry : fs::directory_iterator(pairs_dir)) {
      if (!entry.is_directory()) continue;
      const fs::path dir = entry.path();
      const bool has_travis =
          fs::exists(dir / "travis.yml") || fs::exists(dir / ".travis.yml");
      const bool has_gha =
          fs::exists(dir / "gha.yml") || fs::exists(dir / "workflow.yml");
      if (has_travis && has_gha) ids.push_back(dir.filename().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  if (ids.empty()) {
    throw Error(ErrorCode::EmptyCorpus,
                "no pair directories with both configs under " +
                    pairs_dir.string());
  }
  // Normalize alternate file names so load_corpus finds the canonical ones.
  for (const std::string& id : ids) {
    const fs::path dir = pairs_dir / id;
    if (!fs::exists(dir / "travis.yml") && fs::exists(dir / ".travis.yml")) {
      fs::copy_file(dir / ".travis.yml", dir / "travis.yml");
    }
    if (!fs::exists(dir / "gha.yml") && fs::exists(dir / "workflow.yml")) {
      fs::copy_file(dir / "workflow.yml", dir / "gha.yml");
    }
  }

  CorpusManifest manifest;
  manifest.dual = ids.size();
  manifest.travis_only = count_single_sided(rootp / "travis_only");
  manifest.gha_only = count_single_sided(rootp / "gha_only");
  manifest.default_source = default_source;

  const fs::path split_file = rootp / "split.json";
  if (fs::exists(split_file)) {
    ordered_json sj;
    try {
      sj = ordered_json::parse(read_file(split_file));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Io,
                  "split.json is not valid JSON: " + std::string(e.what()));
    }
    for (const std::string& id : ids) {
      manifest.split_assignment[id] =
          sj.contains(id) ? split_from_name(sj.at(id).get<std::string>())
                          : SplitKind::Train;
    }
  } else {
    std::vector<std::string> shuffled = ids;
    std::mt19937_64 gen(seed);
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1],
                shuffled[static_cast<std::size_t>(gen() % i)]);
    }
    const std::size_t n_train = shuffled.size() * 4 / 5;
    for (std::size_t i = 0; i < shuffled.size(); ++i) {
      manifest.split_assignment[shuffled[i]] =
          i < n_train ? SplitKind::Train : SplitKind::Test;
    }
    manifest.split_seed = seed;
  }

  ordered_json j;
  j["schema_version"] = manifest.schema_version;
  j["counts"] = ordered_json{{"travis_only", manifest.travis_only},
                             {"gha_only", manifest.gha_only},
                             {"dual", manifest.dual}};
  j["default_source"] = dialect_name(manifest.default_source);
  ordered_json splits = ordered_json::object();
  for (const auto& [id, split] : manifest.split_assignment) {
    splits[id] = split_name(split);
  }
  j["split_assignment"] = std::move(splits);
  if (manifest.split_seed) j["split_seed"] = *manifest.split_seed;
  write_file(rootp / "manifest.json", j.dump(2) + "\n");
  return manifest;
}

}  // namespace cigrate
