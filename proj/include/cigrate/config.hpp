#pragma once

#include <string>
#include <string_view>

#include "cigrate/yaml.hpp"

namespace cigrate {

enum class CiDialect { TravisCI, GitHubActions };

const char* dialect_name(CiDialect d);           // "travis" / "gha"
CiDialect dialect_from_name(std::string_view s);  // accepts travis|gha (+ long forms)
CiDialect other_dialect(CiDialect d);

// A parsed CI configuration document. The node tree is fully materialized:
// anchors expanded, comments dropped, root guaranteed to be a mapping.
struct RawConfig {
  CiDialect dialect = CiDialect::TravisCI;
  std::string source_path;  // informational
  YamlNode document;
  size_t byte_length = 0;
};

// Parses one UTF-8 YAML document as a config of the given dialect.
// Errors: E_UTF8, E_YAML_SYNTAX, E_MULTI_DOC, E_DUP_KEY, E_ROOT_NOT_MAPPING.
RawConfig parse_config(std::string_view bytes, CiDialect dialect,
                       std::string source_path = "");

// Canonical YAML bytes; parse_config(serialize_config(c)) reproduces c's tree.
std::string serialize_config(const RawConfig& config);

// Heuristic dialect detection over a root mapping:
//   GitHubActions when the root has `jobs` and (`on` or any job with
//   `runs-on`); TravisCI when the root has a Travis signal key and no
//   `runs-on` appears anywhere. GHA signals win ties.
// Errors: parse errors, E_AMBIGUOUS_DIALECT.
CiDialect detect_dialect(std::string_view bytes);

}  // namespace cigrate
