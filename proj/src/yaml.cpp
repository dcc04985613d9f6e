#include "cigrate/yaml.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <cctype>
#include <cstring>
#include <set>
#include <sstream>

#include "cigrate/error.hpp"

namespace cigrate {

namespace {

constexpr int kMaxDepth = 256;

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

bool is_int_text(std::string_view s) {
  if (s.empty()) return false;
  if (s[0] == '+' || s[0] == '-') s.remove_prefix(1);
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    for (char c : s.substr(2))
      if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
    return true;
  }
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'o' || s[1] == 'O')) {
    for (char c : s.substr(2))
      if (c < '0' || c > '7') return false;
    return true;
  }
  return is_digits(s);
}

bool is_float_text(std::string_view s) {
  if (s.empty()) return false;
  std::string_view body = s;
  if (body[0] == '+' || body[0] == '-') body.remove_prefix(1);
  if (body == ".inf" || body == ".Inf" || body == ".INF") return true;
  if (body == ".nan" || body == ".NaN" || body == ".NAN") return true;
  // [digits].[digits] or .[digits] or digits, with optional exponent; must
  // contain a '.' or an exponent to count as float rather than int.
  size_t epos = body.find_first_of("eE");
  std::string_view mant = body.substr(0, epos == std::string_view::npos ? body.size() : epos);
  bool has_exp = epos != std::string_view::npos;
  if (has_exp) {
    std::string_view exp = body.substr(epos + 1);
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) exp.remove_prefix(1);
    if (!is_digits(exp)) return false;
  }
  size_t dot = mant.find('.');
  if (dot == std::string_view::npos) {
    return has_exp && is_digits(mant);
  }
  std::string_view ipart = mant.substr(0, dot);
  std::string_view fpart = mant.substr(dot + 1);
  if (ipart.empty() && fpart.empty()) return false;
  if (!ipart.empty() && !is_digits(ipart)) return false;
  if (!fpart.empty() && !is_digits(fpart)) return false;
  return true;
}

bool is_bool_text(std::string_view s) {
  return s == "true" || s == "True" || s == "TRUE" || s == "false" ||
         s == "False" || s == "FALSE";
}

bool is_null_text(std::string_view s) {
  return s.empty() || s == "~" || s == "null" || s == "Null" || s == "NULL";
}

// YAML 1.1 booleans beyond the 1.2 core set. CI configs treat these as
// strings, so the serializer must quote them to keep the string kind stable
// under 1.1-era parsers.
bool is_legacy_bool_text(std::string_view s) {
  static const std::set<std::string_view> kSet = {
      "y", "Y", "n", "N", "yes", "Yes", "YES", "no", "No", "NO",
      "on", "On", "ON", "off", "Off", "OFF"};
  return kSet.count(s) > 0;
}

YamlNode convert(const YAML::Node& n, int depth) {
  if (depth > kMaxDepth)
    throw Error(ErrorCode::YamlSyntax,
                "nesting depth exceeded (recursive alias?)");
  switch (n.Type()) {
    case YAML::NodeType::Null:
      return YamlNode::null();
    case YAML::NodeType::Scalar: {
      const std::string& tag = n.Tag();
      if (tag == "!" || tag == "tag:yaml.org,2002:str")
        return YamlNode::str(n.Scalar());
      return YamlNode::plain_scalar(n.Scalar());
    }
    case YAML::NodeType::Sequence: {
      YamlNode seq = YamlNode::sequence();
      for (const auto& item : n) seq.push_back(convert(item, depth + 1));
      return seq;
    }
    case YAML::NodeType::Map: {
      YamlNode map = YamlNode::mapping();
      for (auto it = n.begin(); it != n.end(); ++it) {
        const YAML::Node& key = it->first;
        if (!key.IsScalar())
          throw Error(ErrorCode::YamlSyntax, "non-scalar mapping key at line " +
                                                 std::to_string(key.Mark().line + 1));
        std::string key_text = key.Scalar();
        if (map.has(key_text))
          throw Error(ErrorCode::DupKey,
                      "duplicate mapping key '" + key_text + "' at line " +
                          std::to_string(key.Mark().line + 1));
        map.entries().emplace_back(std::move(key_text),
                                   convert(it->second, depth + 1));
      }
      return map;
    }
    default:
      throw Error(ErrorCode::YamlSyntax, "undefined node");
  }
}

void append_quoted(const std::string& s, std::string& out) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          static const char* hex = "0123456789abcdef";
          out += "\\u00";
          out += hex[(c >> 4) & 0xf];
          out += hex[c & 0xf];
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

// Quoting needed for structural safety only (keys, which are always strings).
bool structurally_unsafe(std::string_view s) {
  if (s.empty()) return true;
  if (s.front() == ' ' || s.back() == ' ') return true;
  char c0 = s[0];
  if (std::strchr("!&*|>%@`\"'#,[]{}", c0)) return true;
  if ((c0 == '-' || c0 == '?' || c0 == ':') &&
      (s.size() == 1 || s[1] == ' '))
    return true;
  if (s.substr(0, 3) == "---" || s.substr(0, 3) == "...") return true;
  for (size_t i = 0; i < s.size(); ++i) {
    unsigned char c = s[i];
    if (c < 0x20 || c == 0x7f) return true;
    if (c == ':' && (i + 1 == s.size() || s[i + 1] == ' ')) return true;
    if (c == '#' && i > 0 && s[i - 1] == ' ') return true;
  }
  return false;
}

void emit_node(const YamlNode& n, int indent, std::string& out);

void append_scalar(const YamlNode& s, std::string& out) {
  switch (s.scalar_kind()) {
    case YamlNode::ScalarKind::String:
      if (scalar_needs_quotes(s.text()))
        append_quoted(s.text(), out);
      else
        out += s.text();
      break;
    case YamlNode::ScalarKind::Null:
      out += "null";
      break;
    default:
      out += s.text();
  }
}

void append_key(const std::string& key, std::string& out) {
  if (structurally_unsafe(key))
    append_quoted(key, out);
  else
    out += key;
}

void emit_mapping(const YamlNode& m, int indent, std::string& out) {
  for (const auto& [key, value] : m.entries()) {
    out.append(indent, ' ');
    append_key(key, out);
    out += ':';
    if (value.is_scalar()) {
      if (value.is_null()) {
        out += '\n';
      } else {
        out += ' ';
        append_scalar(value, out);
        out += '\n';
      }
    } else if (value.empty()) {
      out += value.is_mapping() ? " {}\n" : " []\n";
    } else {
      out += '\n';
      emit_node(value, indent + 2, out);
    }
  }
}

void emit_sequence(const YamlNode& s, int indent, std::string& out) {
  for (const auto& item : s.items()) {
    if (item.is_scalar()) {
      out.append(indent, ' ');
      out += "- ";
      append_scalar(item, out);
      out += '\n';
    } else if (item.empty()) {
      out.append(indent, ' ');
      out += item.is_mapping() ? "- {}\n" : "- []\n";
    } else if (item.is_mapping()) {
      size_t start = out.size();
      emit_node(item, indent + 2, out);
      out[start + indent] = '-';
      out[start + indent + 1] = ' ';
    } else {
      out.append(indent, ' ');
      out += "-\n";
      emit_node(item, indent + 2, out);
    }
  }
}

void emit_node(const YamlNode& n, int indent, std::string& out) {
  if (n.is_mapping())
    emit_mapping(n, indent, out);
  else if (n.is_sequence())
    emit_sequence(n, indent, out);
  else {
    out.append(indent, ' ');
    append_scalar(n, out);
    out += '\n';
  }
}

}  // namespace

YamlNode YamlNode::plain_scalar(std::string text) {
  ScalarKind kind;
  if (is_null_text(text))
    kind = ScalarKind::Null;
  else if (is_bool_text(text))
    kind = ScalarKind::Bool;
  else if (is_int_text(text))
    kind = ScalarKind::Int;
  else if (is_float_text(text))
    kind = ScalarKind::Float;
  else
    kind = ScalarKind::String;
  return scalar(std::move(text), kind);
}

const YamlNode* YamlNode::find(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

YamlNode* YamlNode::find(std::string_view key) {
  for (auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

void YamlNode::set(std::string key, YamlNode value) {
  if (YamlNode* existing = find(key)) {
    *existing = std::move(value);
    return;
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

bool YamlNode::operator==(const YamlNode& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Scalar:
      if (scalar_kind_ != other.scalar_kind_) return false;
      return scalar_kind_ == ScalarKind::Null || text_ == other.text_;
    case Kind::Sequence:
      return items_ == other.items_;
    case Kind::Mapping:
      return entries_ == other.entries_;
  }
  return false;
}

bool is_valid_utf8(std::string_view bytes) {
  size_t i = 0;
  const size_t n = bytes.size();
  while (i < n) {
    unsigned char c = bytes[i];
    size_t len;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      if (c < 0xc2) return false;  // overlong
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      if (c > 0xf4) return false;  // beyond U+10FFFF
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (size_t j = 1; j < len; ++j)
      if ((static_cast<unsigned char>(bytes[i + j]) & 0xc0) != 0x80)
        return false;
    unsigned char c1 = bytes[i + 1];
    if (c == 0xe0 && c1 < 0xa0) return false;  // overlong 3-byte
    if (c == 0xed && c1 > 0x9f) return false;  // surrogates
    if (c == 0xf0 && c1 < 0x90) return false;  // overlong 4-byte
    if (c == 0xf4 && c1 > 0x8f) return false;
    i += len;
  }
  return true;
}

YamlNode parse_yaml(std::string_view bytes) {
  if (!is_valid_utf8(bytes))
    throw Error(ErrorCode::Utf8, "input is not valid UTF-8");
  std::vector<YAML::Node> docs;
  try {
    std::string buf(bytes);
    docs = YAML::LoadAll(buf);
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::YamlSyntax,
                "line " + std::to_string(e.mark.line + 1) + ", column " +
                    std::to_string(e.mark.column + 1) + ": " + e.msg);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::YamlSyntax, e.what());
  }
  if (docs.size() > 1)
    throw Error(ErrorCode::MultiDoc, "stream contains " +
                                         std::to_string(docs.size()) +
                                         " documents, expected one");
  if (docs.empty()) return YamlNode::null();
  return convert(docs[0], 0);
}

bool scalar_needs_quotes(std::string_view text) {
  if (text.empty()) return true;
  // Quote anything a YAML parser could read back as a non-string.
  if (is_null_text(text) || is_bool_text(text) || is_legacy_bool_text(text) ||
      is_int_text(text) || is_float_text(text))
    return true;
  return structurally_unsafe(text);
}

std::string serialize_yaml(const YamlNode& node) {
  std::string out;
  if (!node.is_scalar() && node.empty())
    return node.is_mapping() ? "{}\n" : "[]\n";
  emit_node(node, 0, out);
  return out;
}

}  // namespace cigrate
