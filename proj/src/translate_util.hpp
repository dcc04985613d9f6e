#pragma once

// Shared tables for the rule-based translator: language/version key maps,
// runner label maps, pinned action refs. Internal to the translator sources.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "cigrate/ir.hpp"

namespace cigrate::detail {

inline constexpr const char* kCheckoutAction = "actions/checkout@v4";
inline constexpr const char* kCacheAction = "actions/cache@v4";

struct LanguageInfo {
  const char* language;     // IR name and matrix dimension name
  const char* travis_lang;  // value of the Travis `language` key
  const char* travis_key;   // Travis version key
  const char* setup_action; // pinned GHA action ref
  const char* version_input;
  const char* default_version;  // used when no version is given anywhere
};

inline const std::vector<LanguageInfo>& language_table() {
  static const std::vector<LanguageInfo> table = {
      {"java", "java", "jdk", "actions/setup-java@v4", "java-version", "17"},
      {"node", "node_js", "node_js", "actions/setup-node@v4", "node-version",
       "20"},
      {"python", "python", "python", "actions/setup-python@v5",
       "python-version", "3.12"},
      {"go", "go", "go", "actions/setup-go@v5", "go-version", "stable"},
      {"rust", "rust", "rust", "dtolnay/rust-toolchain@stable", "toolchain",
       "stable"},
  };
  return table;
}

inline const LanguageInfo* language_by_name(const std::string& name) {
  for (const auto& info : language_table()) {
    if (name == info.language) return &info;
  }
  return nullptr;
}

inline const LanguageInfo* language_by_travis_lang(const std::string& value) {
  std::string v = value;
  if (v == "nodejs") v = "node_js";
  for (const auto& info : language_table()) {
    if (v == info.travis_lang) return &info;
  }
  return nullptr;
}

inline const LanguageInfo* language_by_travis_key(const std::string& key) {
  for (const auto& info : language_table()) {
    if (key == info.travis_key) return &info;
  }
  return nullptr;
}

// Matches refs like "actions/setup-java@v4" or "actions/setup-java".
inline const LanguageInfo* language_by_action_ref(const std::string& ref) {
  const std::string base = ref.substr(0, ref.find('@'));
  for (const auto& info : language_table()) {
    const std::string setup_base =
        std::string(info.setup_action)
            .substr(0, std::string(info.setup_action).find('@'));
    if (base == setup_base) return &info;
  }
  return nullptr;
}

// "openjdk11" → "11", "oraclejdk8" → "8", "11" → "11".
inline std::string strip_version_prefix(const std::string& value) {
  std::size_t i = 0;
  while (i < value.size() &&
         !(std::isdigit(static_cast<unsigned char>(value[i])))) {
    ++i;
  }
  if (i == 0 || i == value.size()) return value;
  return value.substr(i);
}

inline std::optional<RunnerOs> runner_from_travis_os(const std::string& os) {
  if (os == "linux") return RunnerOs::Linux;
  if (os == "osx") return RunnerOs::MacOS;
  if (os == "windows") return RunnerOs::Windows;
  return std::nullopt;
}

inline std::optional<RunnerOs> runner_from_gha_label(const std::string& label) {
  if (label.rfind("ubuntu", 0) == 0) return RunnerOs::Linux;
  if (label.rfind("macos", 0) == 0) return RunnerOs::MacOS;
  if (label.rfind("windows", 0) == 0) return RunnerOs::Windows;
  return std::nullopt;
}

inline const char* gha_label_for(RunnerOs os) {
  switch (os) {
    case RunnerOs::Linux: return "ubuntu-latest";
    case RunnerOs::MacOS: return "macos-latest";
    case RunnerOs::Windows: return "windows-latest";
  }
  return "ubuntu-latest";
}

inline const char* travis_os_for(RunnerOs os) {
  switch (os) {
    case RunnerOs::Linux: return "linux";
    case RunnerOs::MacOS: return "osx";
    case RunnerOs::Windows: return "windows";
  }
  return "linux";
}

// The canonical shell line PackageInstall raises to on the GHA side; the GHA
// lowerer pattern-matches it back so package installs survive round trips.
inline std::string apt_install_command(const std::vector<std::string>& pkgs) {
  std::string cmd = "sudo apt-get update && sudo apt-get install -y";
  for (const auto& p : pkgs) cmd += " " + p;
  return cmd;
}

inline std::optional<std::vector<std::string>> parse_apt_install_command(
    const std::string& cmd) {
  const std::string prefix = "sudo apt-get update && sudo apt-get install -y ";
  if (cmd.rfind(prefix, 0) != 0) return std::nullopt;
  std::vector<std::string> pkgs;
  std::string rest = cmd.substr(prefix.size());
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t space = rest.find(' ', pos);
    if (space == std::string::npos) space = rest.size();
    if (space > pos) pkgs.push_back(rest.substr(pos, space - pos));
    pos = space + 1;
  }
  if (pkgs.empty()) return std::nullopt;
  return pkgs;
}

// "${{ matrix.java }}" → "java".
inline std::optional<std::string> parse_matrix_ref(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != ' ') t += c;
  }
  const std::string open = "${{matrix.";
  if (t.rfind(open, 0) != 0 || t.size() < open.size() + 3) return std::nullopt;
  if (t.substr(t.size() - 2) != "}}") return std::nullopt;
  std::string dim = t.substr(open.size(), t.size() - open.size() - 2);
  if (dim.empty()) return std::nullopt;
  return dim;
}

inline std::string matrix_ref(const std::string& dim) {
  return "${{ matrix." + dim + " }}";
}

// Job ids must match [A-Za-z_][A-Za-z0-9_-]*.
inline std::string sanitize_job_id(const std::string& raw,
                                   const std::string& fallback) {
  std::string id;
  for (char c : raw) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
      id += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!id.empty() && id.back() != '-') {
      id += '-';
    }
  }
  while (!id.empty() && id.back() == '-') id.pop_back();
  if (id.empty()) return fallback;
  if (!std::isalpha(static_cast<unsigned char>(id[0])) && id[0] != '_') {
    id = "j-" + id;
  }
  return id;
}

}  // namespace cigrate::detail
