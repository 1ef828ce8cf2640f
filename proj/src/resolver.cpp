#include "depuse/resolver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace depuse {

namespace {

void merge_management(std::map<ga, managed_dependency>& merged,
                      const std::map<ga, managed_dependency>& ancestor) {
  for (const auto& [key, value] : ancestor) merged.emplace(key, value);  // child wins
}

void apply_management(std::vector<dependency_decl>& decls,
                      const std::map<ga, managed_dependency>& management,
                      const coordinate& owner) {
  for (dependency_decl& decl : decls) {
    if (decl.version) continue;
    if (auto it = management.find(decl.ga); it != management.end()) {
      decl.version = it->second.version;
      continue;
    }
    throw error(errc::unresolved_version,
                "dependency " + decl.ga.str() + " of " + owner.str() +
                    " has no version and no dependencyManagement entry supplies one");
  }
}

}  // namespace

std::pair<std::vector<dependency_decl>, std::vector<dependency_decl>> effective_manifest(
    const manifest& m, repository& repo) {
  std::vector<const manifest*> chain;  // ancestors, nearest first
  std::set<coordinate> visited{m.coord};
  const manifest* current = &m;
  while (current->parent) {
    if (!visited.insert(*current->parent).second) {
      throw error(errc::parent_cycle,
                  "parent chain of " + m.coord.str() + " revisits " + current->parent->str());
    }
    current = &repo.manifest_for(*current->parent);
    chain.push_back(current);
  }

  std::map<ga, managed_dependency> management = m.dependency_management;
  for (const manifest* ancestor : chain) {
    merge_management(management, ancestor->dependency_management);
  }

  std::vector<dependency_decl> own = m.dependencies;
  apply_management(own, management, m.coord);

  std::set<ga> seen;
  for (const dependency_decl& decl : own) seen.insert(decl.ga);

  std::vector<dependency_decl> inherited;
  for (const manifest* ancestor : chain) {
    for (const dependency_decl& decl : ancestor->dependencies) {
      if (!seen.insert(decl.ga).second) continue;
      inherited.push_back(decl);
    }
  }
  apply_management(inherited, management, m.coord);

  return {std::move(own), std::move(inherited)};
}

namespace {

struct arena_node {
  coordinate coord;
  dep_origin origin = dep_origin::transitive;
  int depth = 0;
  dep_scope scope = dep_scope::compile;
  bool omitted = false;
  std::vector<std::size_t> children;
};

struct work_item {
  dependency_decl decl;
  dep_origin origin = dep_origin::transitive;
  int depth = 1;
  std::size_t parent = 0;
  std::set<ga> excluded;  // accumulated along the path above this edge
  std::string path;       // for error reporting
};

resolved_node materialize(const std::vector<arena_node>& arena, std::size_t index) {
  const arena_node& n = arena[index];
  resolved_node out;
  out.coord = n.coord;
  out.origin = n.origin;
  out.depth = n.depth;
  out.scope = n.scope;
  out.omitted_duplicate = n.omitted;
  out.children.reserve(n.children.size());
  for (std::size_t child : n.children) out.children.push_back(materialize(arena, child));
  return out;
}

}  // namespace

resolved_tree resolve_tree(const manifest& root, repository& repo,
                           const std::set<dep_scope>& scopes) {
  std::vector<arena_node> arena;
  arena.push_back({root.coord, dep_origin::root, 0, dep_scope::compile, false, {}});

  auto [own, inherited] = effective_manifest(root, repo);

  std::deque<work_item> queue;
  auto seed = [&](const std::vector<dependency_decl>& decls, dep_origin origin) {
    for (const dependency_decl& decl : decls) {
      if (!scopes.contains(decl.scope)) continue;
      queue.push_back({decl, origin, 1, 0, {}, root.coord.str()});
    }
  };
  seed(own, dep_origin::direct);
  seed(inherited, dep_origin::inherited);

  std::map<ga, std::size_t> claimed;
  while (!queue.empty()) {
    work_item w = std::move(queue.front());
    queue.pop_front();

    coordinate coord{w.decl.ga.group, w.decl.ga.artifact, w.decl.version.value_or("")};
    std::size_t node_index = arena.size();
    bool omitted = claimed.contains(w.decl.ga);
    arena.push_back({coord, w.origin, w.depth, w.decl.scope, omitted, {}});
    arena[w.parent].children.push_back(node_index);
    if (omitted) continue;
    claimed.emplace(w.decl.ga, node_index);

    const manifest* mf = nullptr;
    try {
      mf = &repo.manifest_for(coord);
    } catch (const error& e) {
      if (e.code() != errc::artifact_not_found) throw;
      throw error(errc::artifact_not_found,
                  std::string(e.what()) + " (required via " + w.path + ")");
    }

    std::set<ga> excluded = w.excluded;
    excluded.insert(w.decl.exclusions.begin(), w.decl.exclusions.end());

    auto [child_own, child_inherited] = effective_manifest(*mf, repo);
    auto enqueue_children = [&](const std::vector<dependency_decl>& decls) {
      for (const dependency_decl& decl : decls) {
        if (decl.scope != dep_scope::compile || decl.optional) continue;
        if (excluded.contains(decl.ga)) continue;
        queue.push_back({decl, dep_origin::transitive, w.depth + 1, node_index, excluded,
                         w.path + " > " + coord.str()});
      }
    };
    enqueue_children(child_own);
    enqueue_children(child_inherited);
  }

  resolved_tree tree;
  tree.root = materialize(arena, 0);
  tree.height = tree_height(tree);
  return tree;
}

namespace {

int max_depth(const resolved_node& node) {
  int best = node.omitted_duplicate ? -1 : node.depth;
  for (const resolved_node& child : node.children) best = std::max(best, max_depth(child));
  return best;
}

void collect_non_omitted(const resolved_node& node, std::vector<const resolved_node*>& out) {
  if (!node.omitted_duplicate) out.push_back(&node);
  for (const resolved_node& child : node.children) collect_non_omitted(child, out);
}

void render_children(const resolved_node& node, const std::string& prefix, std::ostream& out) {
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const resolved_node& child = node.children[i];
    bool last = i + 1 == node.children.size();
    out << prefix << (last ? "\\- " : "+- ") << child.coord.group << ":" << child.coord.artifact
        << ":jar:" << child.coord.version << ":" << to_string(child.scope);
    if (child.omitted_duplicate) out << " (omitted for duplicate)";
    out << "\n";
    render_children(child, prefix + (last ? "   " : "|  "), out);
  }
}

}  // namespace

int tree_height(const resolved_tree& t) { return std::max(0, max_depth(t.root)); }

std::vector<const resolved_node*> non_omitted_nodes(const resolved_tree& t) {
  std::vector<const resolved_node*> out;
  collect_non_omitted(t.root, out);
  return out;
}

std::string render_tree(const resolved_tree& t, const std::string& root_packaging) {
  std::ostringstream out;
  out << t.root.coord.group << ":" << t.root.coord.artifact << ":" << root_packaging << ":"
      << t.root.coord.version << "\n";
  render_children(t.root, "", out);
  return out.str();
}

}  // namespace depuse
