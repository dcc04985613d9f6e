#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cigrate/config.hpp"
#include "cigrate/metrics.hpp"

namespace cigrate {

enum class SplitKind { Train, Test };

const char* split_name(SplitKind split);
SplitKind split_from_name(const std::string& name);

struct MigrationPair {
  std::string pair_id;
  RawConfig source;
  RawConfig reference_target;
  CiDialect source_dialect = CiDialect::TravisCI;
  CiDialect target_dialect = CiDialect::GitHubActions;
  SplitKind split = SplitKind::Train;
};

struct CorpusManifest {
  std::string schema_version = "1";
  std::size_t travis_only = 0;
  std::size_t gha_only = 0;
  std::size_t dual = 0;
  std::map<std::string, SplitKind> split_assignment;
  // Which side is the migration source; pairs absent from the map use
  // default_source.
  std::map<std::string, CiDialect> source_dialect;
  CiDialect default_source = CiDialect::TravisCI;
  std::optional<std::uint64_t> split_seed;  // recorded when ingest split
};

struct MigrationCorpus {
  std::vector<MigrationPair> pairs;  // sorted by pair_id
  CorpusManifest manifest;
};

// Layout: <root>/manifest.json plus <root>/pairs/<pair_id>/{travis.yml,
// gha.yml}. Throws E_MANIFEST_MISSING, E_PAIR_FILE_MISSING,
// E_COUNT_MISMATCH; parse failures carry the pair id in the message.
MigrationCorpus load_corpus(const std::string& root);

std::vector<MigrationPair> split_corpus(const MigrationCorpus& corpus,
                                        SplitKind which);

// Stable hash of the manifest contents; feeds run ids.
std::string corpus_fingerprint(const CorpusManifest& manifest);

struct EvalParameters {
  std::size_t few_shot_k = 0;
  std::size_t n_max = 4;
  std::size_t trivial_k = 500;
  std::string model;
  double temperature = 0.0;

  bool operator==(const EvalParameters&) const = default;
};

struct EvalReport {
  std::string run_id;
  std::string engine;
  std::string template_id;
  EvalParameters parameters;
  std::vector<ScoreRecord> records;  // sorted by pair_id on write
  AggregateStats aggregates;
  std::string created_at;  // ISO-8601 UTC

  bool operator==(const EvalReport&) const = default;
};

std::string compute_run_id(const std::string& engine,
                           const std::string& template_id,
                           const EvalParameters& parameters,
                           const std::string& corpus_fingerprint);

std::string current_utc_timestamp();

// Writes stable-key-order JSON plus a sibling .csv (RFC 4180) with one row
// per record. Throws E_IO.
void write_report(const EvalReport& report, const std::string& out_path);

// Re-reads a JSON report written by write_report. Throws E_IO.
EvalReport read_report(const std::string& path);

// Builds a manifest for a pairs/ tree: counts, per-pair source side, and a
// split taken from <root>/split.json when present, else a seeded 80/20
// shuffle with the seed recorded. Writes <root>/manifest.json and returns it.
// Throws E_EMPTY_CORPUS when no pair directories are found.
CorpusManifest ingest_corpus(const std::string& root,
                             CiDialect default_source = CiDialect::TravisCI,
                             std::uint64_t seed = 42);

}  // namespace cigrate
