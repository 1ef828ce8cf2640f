#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "depuse/manifest.hpp"
#include "depuse/model.hpp"
#include "depuse/repo.hpp"
#include "depuse/resolver.hpp"

namespace depuse {

// Classes of one artifact reached by the usage propagation.
struct class_set {
  coordinate owner;
  std::set<std::string> classes;

  bool empty() const { return classes.empty(); }
  bool operator==(const class_set&) const = default;
};

struct dependency_usage {
  ga dep_ga;
  coordinate coord;
  usage_label label{};
  bool forced = false;  // kept as used because of the ignore list
  class_set used_classes;
  std::vector<ga> tree_path;  // root GA first, this node's GA last

  bool operator==(const dependency_usage&) const = default;
};

struct usage_report {
  coordinate root;
  int tree_height = 0;
  bool multi_module = false;
  std::vector<dependency_usage> usages;  // one per non-omitted, non-root node, pre-order
  std::map<std::string, int> counts;     // all six short labels, zero included
  std::vector<debloat_action> actions;
  std::vector<std::string> warnings;

  bool operator==(const usage_report&) const = default;
};

struct analysis_config {
  std::set<dep_scope> scopes{dep_scope::compile};
  std::set<ga> ignore;
};

// Read-only lookup state shared by one analysis: the classpath index and the
// winning summary per class name.
struct analysis_context {
  class_index index;
  std::unordered_map<std::string, const class_summary*> summaries;
  std::vector<std::string> warnings;
};

analysis_context build_analysis_context(const artifact_bundle& root, const resolved_tree& tree,
                                        repository& repo);

// Classes of `target` referenced from `source` through bytecode member
// references or whole string literals, resolved against the class index.
// Platform classes never match.
class_set extract_members(const class_set& source, const coordinate& target,
                          const analysis_context& ctx);

// Per-node propagation along tree paths: each node's part is extracted from
// its parent's part (the root's classes at depth one) and an empty part cuts
// the chain.
struct usage_propagation {
  std::set<coordinate> used;
  std::map<coordinate, class_set> parts;
};

usage_propagation propagate_usage(const artifact_bundle& root, const resolved_tree& tree,
                                  const analysis_context& ctx);

std::set<coordinate> used_dependencies(const artifact_bundle& root, const resolved_tree& tree,
                                       const analysis_context& ctx);

// Labels every non-omitted non-root node used/bloated x direct/inherited/
// transitive. Ignored GAs are forced to used.
usage_report classify(const resolved_tree& tree, const std::set<coordinate>& used,
                      const std::set<ga>& ignore);

// Full pipeline: resolve, scan, propagate, label, and compute debloat
// actions. Exclusions are computed against a re-resolved, re-analyzed tree
// with the bloated-direct declarations removed, so dependencies that
// disappear with them need no action.
usage_report debloat(const artifact_bundle& project, repository& repo,
                     const analysis_config& cfg);

// Actions the root manifest itself can carry out: all removals plus the
// exclusions whose via dependency is declared in it (an exclusion under an
// inherited declaration belongs in the parent manifest).
std::vector<debloat_action> applicable_actions(const usage_report& report, const manifest& m);

}  // namespace depuse
