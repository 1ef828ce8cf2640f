#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "depuse/model.hpp"

namespace depuse {

// Entry of a <dependencyManagement> section: supplies a version (and records
// scope/exclusions) for version-less declarations further down the
// inheritance chain. Never introduces a dependency by itself.
struct managed_dependency {
  std::string version;
  std::optional<dep_scope> scope;
  std::set<ga> exclusions;

  bool operator==(const managed_dependency&) const = default;
};

// Parsed POM subset. All property placeholders are resolved; parsing fails
// on ones it cannot resolve.
struct manifest {
  coordinate coord;
  std::string packaging = "jar";
  std::optional<coordinate> parent;
  std::vector<dependency_decl> dependencies;
  std::map<ga, managed_dependency> dependency_management;
  std::map<std::string, std::string> properties;
  std::vector<std::string> modules;

  bool operator==(const manifest&) const = default;
};

struct debloat_action {
  enum class action_kind { remove_direct, add_exclusion };

  action_kind kind = action_kind::remove_direct;
  ga target;
  std::optional<ga> via;  // present iff kind == add_exclusion

  auto operator<=>(const debloat_action&) const = default;
};

manifest parse_manifest(const std::string& xml_bytes);

// Rewrites the original POM with the given actions applied: remove-direct
// deletes the matching <dependency>, add-exclusion appends an <exclusion>
// under the via dependency. Untouched content keeps its order; output is
// regenerated canonically (2-space indent, comments dropped).
std::string write_debloated_manifest(const std::string& original_xml,
                                     const manifest& m,
                                     const std::vector<debloat_action>& actions);

}  // namespace depuse
