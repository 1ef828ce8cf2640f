#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace depuse {

// Error codes mirror the failure modes of the public operations. Every
// failure is thrown as depuse::error carrying one of these.
enum class errc {
  malformed_coordinate,
  malformed_xml,
  missing_mandatory_field,
  unsupported_feature,
  unresolved_property,
  duplicate_dependency,
  action_target_missing,
  artifact_not_found,
  parent_cycle,
  unresolved_version,
  malformed_zip,
  bad_magic,
  bad_class_version,
  truncated_pool,
  unknown_pool_tag,
  length_mismatch,
  degenerate_input,
  usage,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// group:artifact pair. Identity for mediation: one version per ga wins in a
// resolved tree.
struct ga {
  std::string group;
  std::string artifact;

  auto operator<=>(const ga&) const = default;
  std::string str() const { return group + ":" + artifact; }
};

// group:artifact:version triple. Versions are opaque tokens, compared for
// equality only.
struct coordinate {
  std::string group;
  std::string artifact;
  std::string version;

  auto operator<=>(const coordinate&) const = default;
  struct ga ga() const { return {group, artifact}; }
  std::string str() const { return group + ":" + artifact + ":" + version; }
};

coordinate parse_coordinate(const std::string& text);
ga parse_ga(const std::string& text);

enum class dep_scope { compile, test, provided, runtime };

std::string to_string(dep_scope s);
std::optional<dep_scope> scope_from_string(const std::string& s);

// One <dependency> declaration. Scope defaults to compile, optional to
// false; the version may be absent until dependency management supplies it.
struct dependency_decl {
  struct ga ga;
  std::optional<std::string> version;
  dep_scope scope = dep_scope::compile;
  bool optional = false;
  std::set<struct ga> exclusions;

  bool operator==(const dependency_decl&) const = default;
};

enum class usage_status { used, bloated };
enum class dep_origin { root, direct, inherited, transitive };

std::string to_string(dep_origin o);

// status x origin for non-root nodes; bijective with the six short codes
// ud/ui/ut/bd/bi/bt.
struct usage_label {
  usage_status status;
  dep_origin origin;

  auto operator<=>(const usage_label&) const = default;
};

std::string encode_label(const usage_label& l);
usage_label decode_label(const std::string& code);

enum class ref_kind { klass, method, field, annotation, string_literal };

// One external reference harvested from a class file. owner is a qualified
// class name in dot form; name/descriptor are present for member kinds only.
struct member_ref {
  std::string owner;
  ref_kind kind = ref_kind::klass;
  std::optional<std::string> name;
  std::optional<std::string> descriptor;

  auto operator<=>(const member_ref&) const = default;
};

// Platform classes are never manifest dependencies; the usage analyzer
// skips them when resolving references against the class index.
bool is_platform_class(const std::string& qualified_name);

// Syntactic check for identifier("."identifier)+ used to pick class-name
// candidates out of string literals.
bool looks_like_qualified_class_name(const std::string& s);

}  // namespace depuse
