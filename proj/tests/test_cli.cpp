#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cigrate/config.hpp"
#include "cigrate/error.hpp"
#include "cigrate/lint.hpp"
#include "cigrate/normalize.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cigrate;
namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* env = std::getenv("CIGRATE_BIN");
  REQUIRE(env != nullptr);
  return std::string(env);
}

std::string fixtures() {
  const char* env = std::getenv("CIGRATE_FIXTURES");
  REQUIRE(env != nullptr);
  return std::string(env);
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "cigrate_cli_tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const std::string& name, const std::string& contents) {
  fs::path p = work_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << contents;
  return p;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  ++counter;
  fs::path out_path = work_dir() / ("stdout." + std::to_string(counter));
  fs::path err_path = work_dir() / ("stderr." + std::to_string(counter));
  std::string cmd = env_prefix + "\"" + binary() + "\" " + args + " > \"" +
                    out_path.string() + "\" 2> \"" + err_path.string() + "\"";
  int status = std::system(cmd.c_str());
  RunResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

const char* kTravisWithServices =
    "language: python\npython:\n  - \"3.10\"\nservices:\n  - docker\n"
    "script:\n  - pytest\n";

const char* kGhaValid =
    "name: CI\non: push\njobs:\n  build:\n    runs-on: ubuntu-latest\n"
    "    steps:\n      - uses: actions/checkout@v4\n      - run: make\n";

const char* kGhaNoRunsOn =
    "name: CI\non: push\njobs:\n  b:\n    steps:\n      - run: make\n";

}  // namespace

TEST_CASE("migrate with the rule engine prints valid gha yaml") {
  fs::path input = write_file("basic.travis.yml",
                              "language: go\nscript:\n  - go test ./...\n");
  RunResult r = run("migrate --from travis --to gha --input \"" +
                    input.string() + "\"");
  CHECK(r.exit_code == 0);
  RawConfig out = parse_config(r.out, CiDialect::GitHubActions);
  CHECK(lint(out).passed);
  CHECK(r.out.find("jobs:") != std::string::npos);
}

TEST_CASE("migrate writes --output and warnings go to stderr") {
  fs::path input = write_file("services.travis.yml", kTravisWithServices);
  fs::path output = work_dir() / "services.gha.yml";
  RunResult r = run("migrate --from travis --to gha --input \"" +
                    input.string() + "\" --output \"" + output.string() +
                    "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("warning W_DROPPED_KEY at services[0]") !=
        std::string::npos);
  RawConfig out = parse_config(read_file(output), CiDialect::GitHubActions);
  CHECK(lint(out).passed);
}

TEST_CASE("migrate between identical dialects is a domain error") {
  fs::path input = write_file("same.travis.yml", "language: go\nscript: [x]\n");
  RunResult r = run("migrate --from travis --to travis --input \"" +
                    input.string() + "\"");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("malformed yaml input exits with the parse code") {
  fs::path input = write_file("broken.yml", "a: [1, 2\n");
  RunResult r = run("migrate --from travis --to gha --input \"" +
                    input.string() + "\"");
  CHECK(r.exit_code == 2);
}

TEST_CASE("llm engine without a credential exits with the transport code") {
  fs::path input = write_file("llm.travis.yml", "language: go\nscript: [x]\n");
  RunResult r = run("migrate --from travis --to gha --engine llm --endpoint "
                    "http://127.0.0.1:9/v1 --model m --input \"" +
                        input.string() + "\"",
                    "env -u CIGRATE_API_KEY ");
  CHECK(r.exit_code == 3);
}

TEST_CASE("lint passes silently on a valid config") {
  fs::path input = write_file("valid.gha.yml", kGhaValid);
  RunResult r = run("lint --dialect gha \"" + input.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("lint reports diagnostics as severity rule path message") {
  fs::path input = write_file("norunson.gha.yml", kGhaNoRunsOn);
  RunResult r = run("lint --dialect gha \"" + input.string() + "\"");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("Error GHA003 jobs.b ") != std::string::npos);
}

TEST_CASE("lint auto-detects the dialect") {
  fs::path input = write_file("auto.travis.yml",
                              "language: go\nscript:\n  - go build\n");
  RunResult r = run("lint \"" + input.string() + "\"");
  CHECK(r.exit_code == 0);
}

TEST_CASE("lint on malformed yaml exits with the parse code") {
  fs::path input = write_file("broken2.yml", "x: [\n");
  RunResult r = run("lint --dialect gha \"" + input.string() + "\"");
  CHECK(r.exit_code == 2);
}

TEST_CASE("normalize prints the canonical form") {
  fs::path input = write_file("flow.travis.yml",
                              "{script: [go test], language: go}\n");
  RunResult r = run("normalize --dialect travis \"" + input.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "language: go\nscript:\n  - go test\n");
}

TEST_CASE("eval scores the fixture corpus and writes a report") {
  fs::path report = work_dir() / "eval_report.json";
  RunResult r = run("eval --corpus \"" + fixtures() +
                    "/corpus10\" --direction travis-to-gha --engine rules "
                    "--report \"" +
                    report.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("engine=rules") != std::string::npos);
  CHECK(r.out.find("cosine") != std::string::npos);
  CHECK(r.out.find("lint_pass_rate") != std::string::npos);
  REQUIRE(fs::exists(report));
  nlohmann::ordered_json j =
      nlohmann::ordered_json::parse(read_file(report));
  CHECK(j["engine"] == "rules");
  CHECK(j["records"].size() == 4);  // test split, travis sources
  fs::path csv = report;
  csv.replace_extension(".csv");
  CHECK(fs::exists(csv));
}

TEST_CASE("compare of a report with itself finds no difference") {
  fs::path report = work_dir() / "eval_report.json";
  if (!fs::exists(report)) {
    run("eval --corpus \"" + fixtures() +
        "/corpus10\" --direction travis-to-gha --engine rules --report \"" +
        report.string() + "\"");
  }
  RunResult r = run("compare --report-a \"" + report.string() +
                    "\" --report-b \"" + report.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("no detectable difference") != std::string::npos);
  CHECK(r.out.find("n_overlap: 4") != std::string::npos);
}

TEST_CASE("compare with disjoint reports is a domain error") {
  fs::path report = work_dir() / "eval_report.json";
  if (!fs::exists(report)) {
    run("eval --corpus \"" + fixtures() +
        "/corpus10\" --direction travis-to-gha --engine rules --report \"" +
        report.string() + "\"");
  }
  nlohmann::ordered_json j =
      nlohmann::ordered_json::parse(read_file(report));
  for (auto& rec : j["records"]) {
    rec["pair_id"] = std::string(rec["pair_id"].get<std::string>()) + "_x";
  }
  fs::path other = write_file("renamed_report.json", j.dump(2) + "\n");
  RunResult r = run("compare --report-a \"" + report.string() +
                    "\" --report-b \"" + other.string() + "\"");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("E_NO_OVERLAP") != std::string::npos);
}

TEST_CASE("export-finetune writes one record per train pair") {
  fs::path out = work_dir() / "dataset.jsonl";
  RunResult r = run("export-finetune --corpus \"" + fixtures() +
                    "/corpus10\" --direction travis-to-gha --out \"" +
                    out.string() + "\"");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("6 records written") != std::string::npos);
  std::istringstream lines(read_file(out));
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::parse(line);
    CHECK(rec["messages"].size() == 3);
    ++n;
  }
  CHECK(n == 6);
}

TEST_CASE("ingest builds a loadable corpus") {
  fs::path root = work_dir() / "ingest_root";
  fs::remove_all(root);
  for (int i = 1; i <= 3; ++i) {
    fs::path pair = root / "pairs" / ("q" + std::to_string(i));
    fs::create_directories(pair);
    std::ofstream(pair / "travis.yml") << "language: go\nscript: [go test]\n";
    std::ofstream(pair / "gha.yml")
        << "on: push\njobs:\n  b:\n    runs-on: ubuntu-latest\n    steps:\n"
           "      - run: go test\n";
  }
  RunResult r = run("ingest \"" + root.string() + "\" --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ingested 3 pairs") != std::string::npos);
  CHECK(fs::exists(root / "manifest.json"));
  RunResult reload = run("eval --corpus \"" + root.string() +
                         "\" --engine rules");
  CHECK(reload.exit_code == 0);  // 3 pairs split 2/1, so one test pair
}

TEST_CASE("missing corpus directory is a domain error") {
  RunResult r = run("eval --corpus \"" + (work_dir() / "no_such").string() +
                    "\"");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("E_MANIFEST_MISSING") != std::string::npos);
}
