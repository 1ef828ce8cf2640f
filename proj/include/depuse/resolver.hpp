#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "depuse/manifest.hpp"
#include "depuse/model.hpp"
#include "depuse/repo.hpp"

namespace depuse {

// Node of the resolved dependency tree. At most one non-omitted node exists
// per group:artifact; later occurrences are kept as omitted duplicates with
// no children.
struct resolved_node {
  coordinate coord;
  dep_origin origin = dep_origin::transitive;
  int depth = 0;
  dep_scope scope = dep_scope::compile;
  bool omitted_duplicate = false;
  std::vector<resolved_node> children;
};

struct resolved_tree {
  resolved_node root;
  int height = 0;  // longest root-to-leaf path over non-omitted nodes
};

// Splits the root's effective declarations into its own and the ones
// contributed by the parent chain (nearest ancestor first). Dependency
// management is merged child-over-parent and fills in version-less
// declarations; a GA declared by the manifest itself never reappears in the
// inherited list.
std::pair<std::vector<dependency_decl>, std::vector<dependency_decl>> effective_manifest(
    const manifest& m, repository& repo);

// Breadth-first expansion with nearest-wins mediation (ties broken by
// declaration order). Root-level declarations are kept iff their scope is in
// `scopes`; expansion below the root follows compile-scope, non-optional
// declarations only, minus the exclusions accumulated along the path.
resolved_tree resolve_tree(const manifest& root, repository& repo,
                           const std::set<dep_scope>& scopes);

int tree_height(const resolved_tree& t);

// Pre-order list of non-omitted nodes, root first. This is also the
// classpath order used for class indexing.
std::vector<const resolved_node*> non_omitted_nodes(const resolved_tree& t);

// dependency:tree text rendering, omitted duplicates included.
std::string render_tree(const resolved_tree& t, const std::string& root_packaging = "jar");

}  // namespace depuse
