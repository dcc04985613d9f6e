#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cigrate {

// A fully materialized YAML document node. Mappings preserve key order and
// reject duplicate keys; scalars carry the source text plus an inferred kind.
// Formatting (flow vs block style, quoting, anchors, comments) is not
// represented: it is resolved at parse time and reconstructed canonically at
// serialization time.
class YamlNode {
 public:
  enum class Kind { Mapping, Sequence, Scalar };
  enum class ScalarKind { String, Int, Float, Bool, Null };

  using Entry = std::pair<std::string, YamlNode>;

  YamlNode() : kind_(Kind::Mapping) {}

  static YamlNode mapping() { return YamlNode(); }
  static YamlNode sequence() {
    YamlNode n;
    n.kind_ = Kind::Sequence;
    return n;
  }
  static YamlNode scalar(std::string text, ScalarKind kind) {
    YamlNode n;
    n.kind_ = Kind::Scalar;
    n.text_ = std::move(text);
    n.scalar_kind_ = kind;
    return n;
  }
  static YamlNode str(std::string text) {
    return scalar(std::move(text), ScalarKind::String);
  }
  static YamlNode boolean(bool v) {
    return scalar(v ? "true" : "false", ScalarKind::Bool);
  }
  static YamlNode null() { return scalar("null", ScalarKind::Null); }

  // Infers the scalar kind of a plain (unquoted) scalar and builds the node.
  static YamlNode plain_scalar(std::string text);

  Kind kind() const { return kind_; }
  bool is_mapping() const { return kind_ == Kind::Mapping; }
  bool is_sequence() const { return kind_ == Kind::Sequence; }
  bool is_scalar() const { return kind_ == Kind::Scalar; }
  bool is_null() const {
    return is_scalar() && scalar_kind_ == ScalarKind::Null;
  }
  bool is_string() const {
    return is_scalar() && scalar_kind_ == ScalarKind::String;
  }

  ScalarKind scalar_kind() const { return scalar_kind_; }
  const std::string& text() const { return text_; }

  // Mapping access. Entries keep insertion order.
  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Entry>& entries() { return entries_; }
  bool has(std::string_view key) const { return find(key) != nullptr; }
  const YamlNode* find(std::string_view key) const;
  YamlNode* find(std::string_view key);
  // Appends or replaces; appending a duplicate key replaces the existing one.
  void set(std::string key, YamlNode value);

  // Sequence access.
  const std::vector<YamlNode>& items() const { return items_; }
  std::vector<YamlNode>& items() { return items_; }
  void push_back(YamlNode item) { items_.push_back(std::move(item)); }

  bool empty() const {
    return is_mapping() ? entries_.empty()
                        : (is_sequence() ? items_.empty() : text_.empty());
  }
  size_t size() const {
    return is_mapping() ? entries_.size() : items_.size();
  }

  // Structural equality: kind, scalar (kind, text) -- null compares by kind
  // only -- mapping order and sequence order are significant.
  bool operator==(const YamlNode& other) const;
  bool operator!=(const YamlNode& other) const { return !(*this == other); }

 private:
  Kind kind_;
  ScalarKind scalar_kind_ = ScalarKind::Null;
  std::string text_;
  std::vector<Entry> entries_;
  std::vector<YamlNode> items_;
};

// Parses a single UTF-8 YAML document into a YamlNode tree. Anchors and
// aliases are expanded, comments dropped. Throws Error with code
// E_YAML_SYNTAX, E_MULTI_DOC, E_DUP_KEY, or E_UTF8.
YamlNode parse_yaml(std::string_view bytes);

// Emits canonical YAML: block style, 2-space indent, keys in stored order,
// scalars quoted only when required, LF endings, trailing newline. Empty
// collections emit inline as {} / []. parse_yaml(serialize_yaml(n)) == n for
// every mapping/sequence root.
std::string serialize_yaml(const YamlNode& node);

// True when `text` can be emitted as a plain scalar without changing its
// meaning or its string kind on re-parse.
bool scalar_needs_quotes(std::string_view text);

bool is_valid_utf8(std::string_view bytes);

}  // namespace cigrate
