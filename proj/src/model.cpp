#include "depuse/model.hpp"

#include <array>
#include <cctype>

namespace depuse {

namespace {

bool valid_segment(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ':' || std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_on_colon(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

coordinate parse_coordinate(const std::string& text) {
  auto parts = split_on_colon(text);
  if (parts.size() != 3) {
    throw error(errc::malformed_coordinate,
                "coordinate '" + text + "' must have exactly three ':'-separated segments");
  }
  for (const auto& p : parts) {
    if (!valid_segment(p)) {
      throw error(errc::malformed_coordinate,
                  "coordinate '" + text + "' has an empty or whitespace segment");
    }
  }
  return coordinate{parts[0], parts[1], parts[2]};
}

ga parse_ga(const std::string& text) {
  auto parts = split_on_colon(text);
  if (parts.size() != 2) {
    throw error(errc::malformed_coordinate,
                "group:artifact pair '" + text + "' must have exactly two segments");
  }
  for (const auto& p : parts) {
    if (!valid_segment(p)) {
      throw error(errc::malformed_coordinate,
                  "group:artifact pair '" + text + "' has an empty or whitespace segment");
    }
  }
  return ga{parts[0], parts[1]};
}

std::string to_string(dep_scope s) {
  switch (s) {
    case dep_scope::compile: return "compile";
    case dep_scope::test: return "test";
    case dep_scope::provided: return "provided";
    case dep_scope::runtime: return "runtime";
  }
  return "compile";
}

std::optional<dep_scope> scope_from_string(const std::string& s) {
  if (s == "compile") return dep_scope::compile;
  if (s == "test") return dep_scope::test;
  if (s == "provided") return dep_scope::provided;
  if (s == "runtime") return dep_scope::runtime;
  return std::nullopt;
}

std::string to_string(dep_origin o) {
  switch (o) {
    case dep_origin::root: return "root";
    case dep_origin::direct: return "direct";
    case dep_origin::inherited: return "inherited";
    case dep_origin::transitive: return "transitive";
  }
  return "root";
}

std::string encode_label(const usage_label& l) {
  std::string code;
  code += l.status == usage_status::used ? 'u' : 'b';
  switch (l.origin) {
    case dep_origin::direct: code += 'd'; break;
    case dep_origin::inherited: code += 'i'; break;
    case dep_origin::transitive: code += 't'; break;
    case dep_origin::root:
      throw error(errc::usage, "root carries no usage label");
  }
  return code;
}

usage_label decode_label(const std::string& code) {
  static constexpr std::array<const char*, 6> known = {"ud", "ui", "ut", "bd", "bi", "bt"};
  bool ok = false;
  for (const char* k : known) ok = ok || code == k;
  if (!ok) throw error(errc::usage, "unknown usage label code '" + code + "'");
  usage_label l{};
  l.status = code[0] == 'u' ? usage_status::used : usage_status::bloated;
  l.origin = code[1] == 'd'   ? dep_origin::direct
             : code[1] == 'i' ? dep_origin::inherited
                              : dep_origin::transitive;
  return l;
}

bool is_platform_class(const std::string& qualified_name) {
  for (const char* prefix : {"java.", "javax.", "jdk.", "sun."}) {
    if (qualified_name.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

bool looks_like_qualified_class_name(const std::string& s) {
  if (s.empty() || s.size() > 512) return false;
  int segments = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    // each segment: identifier start, then identifier chars
    char c = s[i];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$')) return false;
    ++i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '$')) {
      ++i;
    }
    ++segments;
    if (i == s.size()) break;
    if (s[i] != '.') return false;
    ++i;
    if (i == s.size()) return false;  // trailing dot
  }
  return segments >= 2;
}

}  // namespace depuse
