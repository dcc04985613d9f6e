#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cigrate/eval.hpp"
#include "cigrate/lint.hpp"
#include "cigrate/llm.hpp"
#include "cigrate/metrics.hpp"
#include "cigrate/translate.hpp"

using namespace cigrate;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::YamlSyntax:
    case ErrorCode::MultiDoc:
    case ErrorCode::RootNotMapping:
    case ErrorCode::DupKey:
    case ErrorCode::Utf8:
    case ErrorCode::AmbiguousDialect:
      return 2;
    case ErrorCode::Http:
    case ErrorCode::Timeout:
    case ErrorCode::Auth:
    case ErrorCode::EmptyResponse:
    case ErrorCode::UnparseableOutput:
      return 3;
    default:
      return 1;
  }
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << content;
}

void print_warnings(const std::vector<MigrationWarning>& warnings) {
  for (const MigrationWarning& w : warnings) {
    std::cerr << "warning " << warning_code_name(w.code) << " at " << w.path
              << ": " << w.message << "\n";
  }
}

CiDialect parse_direction_source(const std::string& direction) {
  if (direction == "travis-to-gha") return CiDialect::TravisCI;
  if (direction == "gha-to-travis") return CiDialect::GitHubActions;
  return dialect_from_name(direction);  // bare source dialect shorthand
}

FewShotSelection parse_selection(const std::string& name) {
  if (name == "first") return FewShotSelection::First;
  if (name == "random") return FewShotSelection::Random;
  if (name == "feature-overlap") return FewShotSelection::SameFeatureOverlap;
  throw CLI::ValidationError("--selection",
                             "expected first|random|feature-overlap");
}

struct MigrateArgs {
  std::string from, to, input, output;
  std::string engine = "rules";
  std::size_t few_shot = 0;
  std::string selection = "first";
  std::uint64_t seed = 0;
  std::string corpus_dir;
  std::string model;
  std::string endpoint;
  std::size_t max_tokens = 4096;
};

int cmd_migrate(const MigrateArgs& args) {
  const CiDialect from = dialect_from_name(args.from);
  const CiDialect to = dialect_from_name(args.to);
  const RawConfig input = parse_config(read_input(args.input), from, args.input);
  if (args.engine == "rules") {
    MigrationResult result = migrate_rules(input, to);
    print_warnings(result.warnings);
    write_output(args.output, result.output.serialize());
    return 0;
  }
  if (args.engine != "llm") {
    throw CLI::ValidationError("--engine", "expected rules|llm");
  }
  MigrationCorpus corpus;
  std::optional<FewShotPolicy> policy;
  if (args.few_shot > 0) {
    if (args.corpus_dir.empty()) {
      throw Error(ErrorCode::InsufficientExamples,
                  "--few-shot requires --corpus");
    }
    corpus = load_corpus(args.corpus_dir);
    policy = FewShotPolicy{args.few_shot, parse_selection(args.selection),
                           args.seed};
  }
  PromptBundle bundle = build_prompt(normalize(input), to, policy, corpus);
  bundle.max_output_tokens = args.max_tokens;
  EndpointConfig endpoint;
  endpoint.base_url = args.endpoint;
  endpoint.model = args.model;
  CompletionResult result = complete(bundle, endpoint);
  if (!result.extracted_yaml) {
    throw Error(ErrorCode::UnparseableOutput,
                "model returned no usable YAML");
  }
  std::string yaml = *result.extracted_yaml;
  if (yaml.empty() || yaml.back() != '\n') yaml += '\n';
  write_output(args.output, yaml);
  return 0;
}

struct EvalArgs {
  std::string corpus_dir;
  std::string direction = "travis-to-gha";
  std::string engine = "rules";
  std::size_t few_shot = 0;
  std::string selection = "first";
  std::uint64_t seed = 0;
  std::size_t trivial_k = 500;
  std::size_t n_max = 4;
  std::size_t jobs = 4;
  std::string report_path;
  std::string model;
  std::string endpoint;
};

int cmd_eval(const EvalArgs& args) {
  MigrationCorpus corpus = load_corpus(args.corpus_dir);
  EvalOptions options;
  options.engine = args.engine;
  options.source = parse_direction_source(args.direction);
  options.few_shot_k = args.few_shot;
  options.selection = parse_selection(args.selection);
  options.seed = args.seed;
  options.trivial_k = args.trivial_k;
  options.n_max = args.n_max;
  options.concurrency = args.jobs;
  options.endpoint.base_url = args.endpoint;
  options.endpoint.model = args.model;
  EvalReport report = run_eval(corpus, options);
  if (!args.report_path.empty()) write_report(report, args.report_path);

  std::size_t failed = 0;
  for (const ScoreRecord& r : report.records) {
    if (!r.lint_passed && r.cosine == 0.0 && r.crystal_bleu == 0.0 &&
        !r.exact_match) {
      ++failed;
    }
  }
  char line[128];
  std::printf("run %s engine=%s template=%s pairs=%zu\n",
              report.run_id.c_str(), report.engine.c_str(),
              report.template_id.c_str(), report.records.size());
  std::printf("%-16s %8s %8s %8s\n", "metric", "mean", "median", "stddev");
  std::snprintf(line, sizeof(line), "%-16s %8.4f %8.4f %8.4f", "cosine",
                report.aggregates.cosine.mean, report.aggregates.cosine.median,
                report.aggregates.cosine.stddev);
  std::printf("%s\n", line);
  std::snprintf(line, sizeof(line), "%-16s %8.4f %8.4f %8.4f", "crystal_bleu",
                report.aggregates.crystal_bleu.mean,
                report.aggregates.crystal_bleu.median,
                report.aggregates.crystal_bleu.stddev);
  std::printf("%s\n", line);
  std::printf("%-16s %8.4f\n", "lint_pass_rate",
              report.aggregates.lint_pass_rate);
  std::printf("%-16s %8.4f\n", "exact_match_rate",
              report.aggregates.exact_match_rate);
  if (failed > 0) {
    std::fprintf(stderr, "warning: %zu of %zu pairs produced no scorable output\n",
                 failed, report.records.size());
  }
  return 0;
}

struct CompareArgs {
  std::string report_a, report_b;
  std::string metric = "cosine";
};

int cmd_compare(const CompareArgs& args) {
  const EvalReport a = read_report(args.report_a);
  const EvalReport b = read_report(args.report_b);
  if (args.metric != "cosine" && args.metric != "crystal_bleu") {
    throw CLI::ValidationError("--metric", "expected cosine|crystal_bleu");
  }
  const bool use_cosine = args.metric == "cosine";
  std::map<std::string, double> scores_b;
  for (const ScoreRecord& r : b.records) {
    scores_b[r.pair_id] = use_cosine ? r.cosine : r.crystal_bleu;
  }
  std::vector<double> xs, ys;
  for (const ScoreRecord& r : a.records) {
    auto it = scores_b.find(r.pair_id);
    if (it == scores_b.end()) continue;
    xs.push_back(use_cosine ? r.cosine : r.crystal_bleu);
    ys.push_back(it->second);
  }
  if (xs.empty()) {
    throw Error(ErrorCode::NoOverlap, "the reports share no pair_ids");
  }
  double mean_a = 0, mean_b = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_a += xs[i];
    mean_b += ys[i];
  }
  mean_a /= static_cast<double>(xs.size());
  mean_b /= static_cast<double>(xs.size());

  std::printf("metric: %s\n", args.metric.c_str());
  std::printf("n_overlap: %zu\n", xs.size());
  std::printf("mean A = %.6f  mean B = %.6f\n", mean_a, mean_b);
  try {
    WilcoxonResult w = wilcoxon_signed_rank(xs, ys);
    std::printf("n_effective: %zu\n", w.n_effective);
    std::printf("W = %g  p = %g\n", w.statistic, w.p_value);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AllZeroDiffs) throw;
    std::printf("no detectable difference\n");
  }
  return 0;
}

struct ExportArgs {
  std::string corpus_dir;
  std::string direction = "travis-to-gha";
  std::string out;
};

int cmd_export_finetune(const ExportArgs& args) {
  MigrationCorpus corpus = load_corpus(args.corpus_dir);
  const CiDialect source = parse_direction_source(args.direction);
  std::size_t count = 0;
  if (args.out.empty() || args.out == "-") {
    count = export_finetune_dataset(corpus, source, other_dialect(source),
                                    std::cout);
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + args.out);
    count = export_finetune_dataset(corpus, source, other_dialect(source), out);
  }
  std::fprintf(stderr, "%zu records written\n", count);
  return 0;
}

RawConfig parse_for(const std::string& dialect_flag, const std::string& path) {
  const std::string bytes = read_input(path);
  const CiDialect dialect = dialect_flag == "auto"
                                ? detect_dialect(bytes)
                                : dialect_from_name(dialect_flag);
  return parse_config(bytes, dialect, path);
}

int cmd_lint(const std::string& dialect_flag, const std::string& path) {
  const LintReport report = lint(parse_for(dialect_flag, path));
  for (const LintDiagnostic& d : report.diagnostics) {
    std::printf("%s %s %s %s\n",
                d.severity == LintSeverity::Error ? "Error" : "Warning",
                d.rule_id.c_str(), d.path.c_str(), d.message.c_str());
  }
  return report.passed ? 0 : 1;
}

int cmd_normalize(const std::string& dialect_flag, const std::string& path) {
  std::cout << normalize(parse_for(dialect_flag, path)).serialize();
  return 0;
}

struct IngestArgs {
  std::string root;
  std::string default_source = "travis";
  std::uint64_t seed = 42;
};

int cmd_ingest(const IngestArgs& args) {
  CorpusManifest manifest = ingest_corpus(
      args.root, dialect_from_name(args.default_source), args.seed);
  std::size_t train = 0, test = 0;
  for (const auto& [id, split] : manifest.split_assignment) {
    (split == SplitKind::Train ? train : test) += 1;
  }
  std::printf("ingested %zu pairs (train=%zu test=%zu)\n", manifest.dual,
              train, test);
  std::printf("counts: travis_only=%zu gha_only=%zu dual=%zu\n",
              manifest.travis_only, manifest.gha_only, manifest.dual);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cigrate - migrate CI configurations between Travis CI and "
               "GitHub Actions"};
  app.require_subcommand(1);

  MigrateArgs margs;
  CLI::App* migrate = app.add_subcommand("migrate", "Migrate one config file");
  migrate->add_option("--from", margs.from, "Source dialect (travis|gha)")
      ->required();
  migrate->add_option("--to", margs.to, "Target dialect (travis|gha)")
      ->required();
  migrate->add_option("--input", margs.input, "Input config file")->required();
  migrate->add_option("--output", margs.output, "Output file (default stdout)");
  migrate->add_option("--engine", margs.engine, "rules|llm");
  migrate->add_option("--few-shot", margs.few_shot, "In-context example count");
  migrate->add_option("--selection", margs.selection,
                      "first|random|feature-overlap");
  migrate->add_option("--seed", margs.seed, "Selection seed (random)");
  migrate->add_option("--corpus", margs.corpus_dir, "Corpus for few-shot");
  migrate->add_option("--model", margs.model, "Model name (llm engine)");
  migrate->add_option("--endpoint", margs.endpoint, "Chat endpoint base URL");
  migrate->add_option("--max-tokens", margs.max_tokens, "Completion cap");

  EvalArgs eargs;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score an engine on a corpus");
  eval_cmd->add_option("--corpus", eargs.corpus_dir, "Corpus root")->required();
  eval_cmd->add_option("--direction", eargs.direction,
                       "travis-to-gha|gha-to-travis");
  eval_cmd->add_option("--engine", eargs.engine, "rules|llm");
  eval_cmd->add_option("--few-shot", eargs.few_shot, "In-context example count");
  eval_cmd->add_option("--selection", eargs.selection,
                       "first|random|feature-overlap");
  eval_cmd->add_option("--seed", eargs.seed, "Selection seed (random)");
  eval_cmd->add_option("--trivial-k", eargs.trivial_k,
                       "Trivially-shared n-gram count");
  eval_cmd->add_option("--n-max", eargs.n_max, "Max n-gram order");
  eval_cmd->add_option("--jobs", eargs.jobs, "In-flight request limit");
  eval_cmd->add_option("--report", eargs.report_path, "Report output path");
  eval_cmd->add_option("--model", eargs.model, "Model name (llm engine)");
  eval_cmd->add_option("--endpoint", eargs.endpoint, "Chat endpoint base URL");

  CompareArgs cargs;
  CLI::App* compare = app.add_subcommand("compare",
                                         "Paired test between two reports");
  compare->add_option("--report-a", cargs.report_a, "First report")->required();
  compare->add_option("--report-b", cargs.report_b, "Second report")
      ->required();
  compare->add_option("--metric", cargs.metric, "cosine|crystal_bleu");

  ExportArgs xargs;
  CLI::App* export_cmd =
      app.add_subcommand("export-finetune", "Emit a fine-tune JSONL dataset");
  export_cmd->add_option("--corpus", xargs.corpus_dir, "Corpus root")
      ->required();
  export_cmd->add_option("--direction", xargs.direction,
                         "travis-to-gha|gha-to-travis");
  export_cmd->add_option("--out", xargs.out, "Output path (default stdout)");

  std::string lint_dialect = "auto";
  std::string lint_file;
  CLI::App* lint_cmd = app.add_subcommand("lint", "Structurally validate a config");
  lint_cmd->add_option("--dialect", lint_dialect, "travis|gha|auto");
  lint_cmd->add_option("file", lint_file, "Config file")->required();

  std::string norm_dialect = "auto";
  std::string norm_file;
  CLI::App* norm_cmd = app.add_subcommand("normalize",
                                          "Print the canonical form");
  norm_cmd->add_option("--dialect", norm_dialect, "travis|gha|auto");
  norm_cmd->add_option("file", norm_file, "Config file")->required();

  IngestArgs iargs;
  CLI::App* ingest = app.add_subcommand("ingest",
                                        "Build a manifest for a pairs/ tree");
  ingest->add_option("root", iargs.root, "Corpus root")->required();
  ingest->add_option("--default-source", iargs.default_source, "travis|gha");
  ingest->add_option("--seed", iargs.seed, "Split shuffle seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (migrate->parsed()) return cmd_migrate(margs);
    if (eval_cmd->parsed()) return cmd_eval(eargs);
    if (compare->parsed()) return cmd_compare(cargs);
    if (export_cmd->parsed()) return cmd_export_finetune(xargs);
    if (lint_cmd->parsed()) return cmd_lint(lint_dialect, lint_file);
    if (norm_cmd->parsed()) return cmd_normalize(norm_dialect, norm_file);
    if (ingest->parsed()) return cmd_ingest(iargs);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
