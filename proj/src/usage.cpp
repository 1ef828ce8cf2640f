#include "depuse/usage.hpp"

#include <algorithm>
#include <array>

namespace depuse {

namespace {

const std::array<const char*, 6> kLabelCodes = {"ud", "ui", "ut", "bd", "bi", "bt"};

std::set<std::string> all_class_names(const artifact_bundle& bundle) {
  std::set<std::string> names;
  for (const class_summary& cls : bundle.classes) names.insert(cls.name);
  return names;
}

}  // namespace

analysis_context build_analysis_context(const artifact_bundle& root, const resolved_tree& tree,
                                        repository& repo) {
  std::vector<const artifact_bundle*> bundles{&root};
  for (const resolved_node* node : non_omitted_nodes(tree)) {
    if (node->depth == 0) continue;
    const artifact_bundle& bundle = repo.bundle_for(node->coord);
    bundles.push_back(&bundle);
  }

  analysis_context ctx;
  ctx.index = build_class_index(bundles);
  for (const artifact_bundle* bundle : bundles) {
    for (const class_summary& cls : bundle->classes) {
      ctx.summaries.emplace(cls.name, &cls);  // first definition wins, like the index
    }
    for (const std::string& warning : bundle->warnings) {
      ctx.warnings.push_back(bundle->coord.str() + ": " + warning);
    }
  }
  return ctx;
}

class_set extract_members(const class_set& source, const coordinate& target,
                          const analysis_context& ctx) {
  class_set result{target, {}};
  auto consider = [&](const std::string& owner) {
    if (is_platform_class(owner)) return;
    auto it = ctx.index.mapping.find(owner);
    if (it != ctx.index.mapping.end() && it->second == target) result.classes.insert(owner);
  };

  for (const std::string& name : source.classes) {
    auto it = ctx.summaries.find(name);
    if (it == ctx.summaries.end()) continue;
    const class_summary& summary = *it->second;
    for (const member_ref& ref : summary.refs) {
      if (ref.kind == ref_kind::string_literal) continue;
      consider(ref.owner);
    }
    for (const std::string& candidate : summary.string_class_candidates) consider(candidate);
  }
  return result;
}

namespace {

void propagate_node(const resolved_node& node, const class_set& incoming,
                    const analysis_context& ctx, usage_propagation& out) {
  for (const resolved_node& child : node.children) {
    if (child.omitted_duplicate) continue;
    class_set part = incoming.empty() ? class_set{child.coord, {}}
                                      : extract_members(incoming, child.coord, ctx);
    if (!part.empty()) out.used.insert(child.coord);
    propagate_node(child, part, ctx, out);
    out.parts.emplace(child.coord, std::move(part));
  }
}

}  // namespace

usage_propagation propagate_usage(const artifact_bundle& root, const resolved_tree& tree,
                                  const analysis_context& ctx) {
  usage_propagation out;
  class_set root_set{root.coord, all_class_names(root)};
  propagate_node(tree.root, root_set, ctx, out);
  return out;
}

std::set<coordinate> used_dependencies(const artifact_bundle& root, const resolved_tree& tree,
                                       const analysis_context& ctx) {
  return propagate_usage(root, tree, ctx).used;
}

namespace {

void classify_node(const resolved_node& node, std::vector<ga>& path,
                   const std::set<coordinate>& used, const std::set<ga>& ignore,
                   usage_report& report) {
  path.push_back(node.coord.ga());
  if (node.depth > 0) {
    dependency_usage usage;
    usage.dep_ga = node.coord.ga();
    usage.coord = node.coord;
    usage.used_classes.owner = node.coord;
    bool naturally_used = used.contains(node.coord);
    bool ignored = ignore.contains(usage.dep_ga);
    usage.label.status =
        naturally_used || ignored ? usage_status::used : usage_status::bloated;
    usage.forced = ignored && !naturally_used;
    usage.label.origin = node.origin;
    usage.tree_path = path;
    report.usages.push_back(std::move(usage));
  }
  for (const resolved_node& child : node.children) {
    if (child.omitted_duplicate) continue;
    classify_node(child, path, used, ignore, report);
  }
  path.pop_back();
}

}  // namespace

usage_report classify(const resolved_tree& tree, const std::set<coordinate>& used,
                      const std::set<ga>& ignore) {
  usage_report report;
  report.root = tree.root.coord;
  report.tree_height = tree.height;
  for (const char* code : kLabelCodes) report.counts[code] = 0;
  std::vector<ga> path;
  classify_node(tree.root, path, used, ignore, report);
  for (const dependency_usage& usage : report.usages) {
    ++report.counts[encode_label(usage.label)];
  }
  return report;
}

usage_report debloat(const artifact_bundle& project, repository& repo,
                     const analysis_config& cfg) {
  resolved_tree tree = resolve_tree(project.mf, repo, cfg.scopes);
  analysis_context ctx = build_analysis_context(project, tree, repo);
  usage_propagation propagation = propagate_usage(project, tree, ctx);

  usage_report report = classify(tree, propagation.used, cfg.ignore);
  report.multi_module = project.mf.parent.has_value() || !project.mf.modules.empty();
  report.warnings = ctx.warnings;
  for (dependency_usage& usage : report.usages) {
    if (usage.label.status != usage_status::used) continue;
    if (auto it = propagation.parts.find(usage.coord); it != propagation.parts.end()) {
      usage.used_classes = it->second;
    }
  }

  std::set<ga> removed;
  for (const dependency_usage& usage : report.usages) {
    if (usage.label == usage_label{usage_status::bloated, dep_origin::direct}) {
      if (removed.insert(usage.dep_ga).second) {
        report.actions.push_back(
            {debloat_action::action_kind::remove_direct, usage.dep_ga, {}});
      }
    }
  }

  // Exclusions come from a fresh analysis of the tree without the removed
  // declarations: whatever vanished with them needs no exclusion, and
  // whatever is reachable through the remaining used classes stays.
  manifest trimmed = project.mf;
  std::erase_if(trimmed.dependencies,
                [&](const dependency_decl& d) { return removed.contains(d.ga); });
  artifact_bundle post_project = project;
  post_project.mf = trimmed;
  resolved_tree post_tree =
      removed.empty() ? std::move(tree) : resolve_tree(trimmed, repo, cfg.scopes);
  analysis_context post_ctx = build_analysis_context(post_project, post_tree, repo);
  usage_propagation post_propagation = propagate_usage(post_project, post_tree, post_ctx);

  struct exclusion_candidate {
    ga target;
    ga via;
    bool via_inherited;
  };
  std::vector<exclusion_candidate> candidates;
  std::set<std::pair<ga, ga>> seen_exclusions;
  std::vector<const resolved_node*> ancestry;
  auto walk = [&](auto&& self, const resolved_node& node) -> void {
    if (node.depth >= 2 && !post_propagation.used.contains(node.coord) &&
        !cfg.ignore.contains(node.coord.ga())) {
      const resolved_node* top = ancestry[1];  // the depth-1 root of this subtree
      if (seen_exclusions.emplace(node.coord.ga(), top->coord.ga()).second) {
        candidates.push_back({node.coord.ga(), top->coord.ga(),
                              top->origin == dep_origin::inherited});
      }
    }
    ancestry.push_back(&node);
    for (const resolved_node& child : node.children) {
      if (!child.omitted_duplicate) self(self, child);
    }
    ancestry.pop_back();
  };
  walk(walk, post_tree.root);

  // Safety pass, standing in for a rebuild of the project: an exclusion is
  // dropped when the tree without the target would leave some reference from
  // the retained used-class closure unresolvable. Per-path analysis can mark
  // a dependency bloated even though a used class of another branch still
  // resolves against it.
  std::set<ga> dropped;
  for (;;) {
    manifest simulated = trimmed;
    for (const exclusion_candidate& candidate : candidates) {
      if (candidate.via_inherited || dropped.contains(candidate.target)) continue;
      for (dependency_decl& decl : simulated.dependencies) {
        if (decl.ga == candidate.via) decl.exclusions.insert(candidate.target);
      }
    }
    artifact_bundle simulated_project = project;
    simulated_project.mf = simulated;
    resolved_tree final_tree = resolve_tree(simulated, repo, cfg.scopes);
    analysis_context final_ctx = build_analysis_context(simulated_project, final_tree, repo);
    usage_propagation final_propagation =
        propagate_usage(simulated_project, final_tree, final_ctx);

    std::set<std::string> closure;
    for (const class_summary& cls : project.classes) closure.insert(cls.name);
    for (const auto& [coord, part] : final_propagation.parts) {
      if (final_propagation.used.contains(coord)) {
        closure.insert(part.classes.begin(), part.classes.end());
      }
    }

    bool changed = false;
    auto guard = [&](const std::string& target) {
      if (changed || is_platform_class(target)) return;
      if (final_ctx.index.mapping.contains(target)) return;
      auto original = ctx.index.mapping.find(target);
      if (original == ctx.index.mapping.end()) return;  // was never resolvable
      if (dropped.insert(original->second.ga()).second) changed = true;
    };
    for (const std::string& name : closure) {
      auto it = final_ctx.summaries.find(name);
      if (it == final_ctx.summaries.end()) continue;
      for (const member_ref& ref : it->second->refs) {
        if (ref.kind != ref_kind::string_literal) guard(ref.owner);
      }
      for (const std::string& candidate : it->second->string_class_candidates) guard(candidate);
    }
    if (!changed) break;
  }

  std::set<ga> dropped_candidates;
  for (const exclusion_candidate& candidate : candidates) {
    if (dropped.contains(candidate.target)) {
      dropped_candidates.insert(candidate.target);
      continue;
    }
    report.actions.push_back(
        {debloat_action::action_kind::add_exclusion, candidate.target, candidate.via});
    if (candidate.via_inherited) {
      report.warnings.push_back("exclusion of " + candidate.target.str() +
                                " attaches to inherited dependency " + candidate.via.str() +
                                "; it must be applied in the parent manifest");
    }
  }
  for (const ga& g : dropped_candidates) {
    report.warnings.push_back("no exclusion emitted for " + g.str() +
                              "; classes of a retained dependency still reference it");
  }

  return report;
}

std::vector<debloat_action> applicable_actions(const usage_report& report, const manifest& m) {
  auto declared = [&](const ga& g) {
    return std::any_of(m.dependencies.begin(), m.dependencies.end(),
                       [&](const dependency_decl& d) { return d.ga == g; });
  };
  std::vector<debloat_action> out;
  for (const debloat_action& action : report.actions) {
    if (action.kind == debloat_action::action_kind::remove_direct) {
      if (declared(action.target)) out.push_back(action);
    } else if (action.via && declared(*action.via)) {
      out.push_back(action);
    }
  }
  return out;
}

}  // namespace depuse
