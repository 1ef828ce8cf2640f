#include "depuse/manifest.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <sstream>

namespace depuse {

namespace pt = boost::property_tree;

namespace {

constexpr int kXmlFlags = pt::xml_parser::no_comments | pt::xml_parser::trim_whitespace;

pt::ptree read_xml_tree(const std::string& xml_bytes) {
  std::istringstream in(xml_bytes);
  pt::ptree doc;
  try {
    pt::read_xml(in, doc, kXmlFlags);
  } catch (const pt::xml_parser_error& e) {
    throw error(errc::malformed_xml, std::string("malformed XML: ") + e.what());
  }
  return doc;
}

std::string trimmed(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::optional<std::string> child_text(const pt::ptree& node, const char* key) {
  auto child = node.get_child_optional(key);
  if (!child) return std::nullopt;
  return trimmed(child->get_value<std::string>());
}

// Resolves ${...} placeholders. One level of indirection only: a
// substituted value must not itself contain a placeholder.
class interpolator {
 public:
  explicit interpolator(const std::map<std::string, std::string>& properties)
      : properties_(properties) {}

  void set_project_value(const std::string& key, const std::string& value) {
    project_[key] = value;
  }

  std::string resolve(const std::string& raw, const char* context) const {
    std::string out;
    std::size_t i = 0;
    while (i < raw.size()) {
      auto open = raw.find("${", i);
      if (open == std::string::npos) {
        out.append(raw, i, std::string::npos);
        break;
      }
      out.append(raw, i, open - i);
      auto close = raw.find('}', open + 2);
      if (close == std::string::npos) {
        throw error(errc::unresolved_property,
                    std::string("unterminated property reference in ") + context + ": " + raw);
      }
      std::string key = raw.substr(open + 2, close - open - 2);
      std::string value = lookup(key, context);
      if (value.find("${") != std::string::npos) {
        throw error(errc::unresolved_property,
                    "property '" + key + "' expands to another placeholder (" + value +
                        "); one level of indirection is supported");
      }
      out += value;
      i = close + 1;
    }
    return out;
  }

 private:
  std::string lookup(const std::string& key, const char* context) const {
    if (auto it = project_.find(key); it != project_.end()) return it->second;
    if (auto it = properties_.find(key); it != properties_.end()) return it->second;
    throw error(errc::unresolved_property,
                "unresolvable property ${" + key + "} in " + context);
  }

  const std::map<std::string, std::string>& properties_;
  std::map<std::string, std::string> project_;
};

void reject_version_range(const std::string& version, const std::string& where) {
  if (!version.empty() && (version.front() == '[' || version.front() == '(')) {
    throw error(errc::unsupported_feature, "version range '" + version + "' in " + where);
  }
}

dependency_decl parse_dependency_node(const pt::ptree& dep, const interpolator& interp,
                                      const std::string& where) {
  auto group = child_text(dep, "groupId");
  auto artifact = child_text(dep, "artifactId");
  if (!group || group->empty() || !artifact || artifact->empty()) {
    throw error(errc::missing_mandatory_field,
                "dependency in " + where + " lacks groupId or artifactId");
  }
  if (child_text(dep, "classifier")) {
    throw error(errc::unsupported_feature, "classifier on dependency in " + where);
  }

  dependency_decl decl;
  decl.ga.group = interp.resolve(*group, where.c_str());
  decl.ga.artifact = interp.resolve(*artifact, where.c_str());

  if (auto version = child_text(dep, "version")) {
    std::string v = interp.resolve(*version, where.c_str());
    reject_version_range(v, where);
    decl.version = v;
  }
  if (auto scope = child_text(dep, "scope")) {
    auto parsed = scope_from_string(*scope);
    if (!parsed) {
      throw error(errc::unsupported_feature,
                  "dependency scope '" + *scope + "' in " + where + " is not supported");
    }
    decl.scope = *parsed;
  }
  if (auto opt = child_text(dep, "optional")) decl.optional = (*opt == "true");

  if (auto exclusions = dep.get_child_optional("exclusions")) {
    for (const auto& [key, node] : *exclusions) {
      if (key != "exclusion") continue;
      auto eg = child_text(node, "groupId");
      auto ea = child_text(node, "artifactId");
      if (!eg || !ea) {
        throw error(errc::missing_mandatory_field,
                    "exclusion in " + where + " lacks groupId or artifactId");
      }
      decl.exclusions.insert(
          ga{interp.resolve(*eg, where.c_str()), interp.resolve(*ea, where.c_str())});
    }
  }
  return decl;
}

}  // namespace

manifest parse_manifest(const std::string& xml_bytes) {
  pt::ptree doc = read_xml_tree(xml_bytes);
  auto project = doc.get_child_optional("project");
  if (!project) {
    throw error(errc::missing_mandatory_field, "no <project> root element");
  }

  manifest m;

  if (auto parent_node = project->get_child_optional("parent")) {
    auto pg = child_text(*parent_node, "groupId");
    auto pa = child_text(*parent_node, "artifactId");
    auto pv = child_text(*parent_node, "version");
    if (!pg || !pa || !pv) {
      throw error(errc::missing_mandatory_field,
                  "<parent> requires groupId, artifactId and version");
    }
    m.parent = coordinate{*pg, *pa, *pv};
  }

  if (auto props = project->get_child_optional("properties")) {
    for (const auto& [key, node] : *props) {
      if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
      m.properties[key] = trimmed(node.get_value<std::string>());
    }
  }

  interpolator interp(m.properties);

  auto artifact_id = child_text(*project, "artifactId");
  if (!artifact_id || artifact_id->empty()) {
    throw error(errc::missing_mandatory_field, "project has no artifactId");
  }
  auto group_id = child_text(*project, "groupId");
  if (!group_id && m.parent) group_id = m.parent->group;
  if (!group_id || group_id->empty()) {
    throw error(errc::missing_mandatory_field,
                "project has no groupId and none is inherited from <parent>");
  }
  auto version = child_text(*project, "version");
  if (!version && m.parent) version = m.parent->version;
  if (!version || version->empty()) {
    throw error(errc::missing_mandatory_field,
                "project has no version and none is inherited from <parent>");
  }

  m.coord.group = interp.resolve(*group_id, "project coordinates");
  m.coord.artifact = interp.resolve(*artifact_id, "project coordinates");
  m.coord.version = interp.resolve(*version, "project coordinates");
  reject_version_range(m.coord.version, "project version");

  interp.set_project_value("project.groupId", m.coord.group);
  interp.set_project_value("project.artifactId", m.coord.artifact);
  interp.set_project_value("project.version", m.coord.version);

  if (auto packaging = child_text(*project, "packaging"); packaging && !packaging->empty()) {
    m.packaging = interp.resolve(*packaging, "packaging");
  }

  std::string where = m.coord.str();
  if (auto deps = project->get_child_optional("dependencies")) {
    for (const auto& [key, node] : *deps) {
      if (key != "dependency") continue;
      dependency_decl decl = parse_dependency_node(node, interp, where);
      for (const auto& existing : m.dependencies) {
        if (existing.ga == decl.ga && existing.scope == decl.scope) {
          throw error(errc::duplicate_dependency,
                      "duplicate dependency " + decl.ga.str() + " (scope " +
                          to_string(decl.scope) + ") in " + where);
        }
      }
      m.dependencies.push_back(std::move(decl));
    }
  }

  if (auto mgmt = project->get_child_optional("dependencyManagement.dependencies")) {
    for (const auto& [key, node] : *mgmt) {
      if (key != "dependency") continue;
      dependency_decl decl = parse_dependency_node(node, interp, where + " dependencyManagement");
      if (!decl.version) {
        throw error(errc::missing_mandatory_field,
                    "dependencyManagement entry for " + decl.ga.str() + " in " + where +
                        " lacks a version");
      }
      managed_dependency managed;
      managed.version = *decl.version;
      managed.exclusions = decl.exclusions;
      // scope recorded only when spelled out
      if (auto scope_text = child_text(node, "scope")) managed.scope = decl.scope;
      m.dependency_management.emplace(decl.ga, std::move(managed));
    }
  }

  if (auto modules = project->get_child_optional("modules")) {
    for (const auto& [key, node] : *modules) {
      if (key != "module") continue;
      m.modules.push_back(interp.resolve(trimmed(node.get_value<std::string>()), "modules"));
    }
  }

  return m;
}

namespace {

// The DOM keeps raw (pre-interpolation) text, so matching a GA against the
// DOM re-resolves placeholders with the parsed manifest's properties.
class dom_matcher {
 public:
  explicit dom_matcher(const manifest& m) : interp_(m.properties) {
    interp_.set_project_value("project.groupId", m.coord.group);
    interp_.set_project_value("project.artifactId", m.coord.artifact);
    interp_.set_project_value("project.version", m.coord.version);
  }

  bool dependency_matches(const pt::ptree& dep, const ga& target) const {
    auto group = child_text(dep, "groupId");
    auto artifact = child_text(dep, "artifactId");
    if (!group || !artifact) return false;
    return interp_.resolve(*group, "manifest rewrite") == target.group &&
           interp_.resolve(*artifact, "manifest rewrite") == target.artifact;
  }

 private:
  interpolator interp_;
};

bool has_exclusion(const pt::ptree& dep, const ga& target, const dom_matcher& matcher) {
  auto exclusions = dep.get_child_optional("exclusions");
  if (!exclusions) return false;
  for (const auto& [key, node] : *exclusions) {
    if (key == "exclusion" && matcher.dependency_matches(node, target)) return true;
  }
  return false;
}

}  // namespace

std::string write_debloated_manifest(const std::string& original_xml, const manifest& m,
                                     const std::vector<debloat_action>& actions) {
  auto declared = [&](const ga& g) {
    return std::any_of(m.dependencies.begin(), m.dependencies.end(),
                       [&](const dependency_decl& d) { return d.ga == g; });
  };
  for (const auto& action : actions) {
    if (action.kind == debloat_action::action_kind::remove_direct) {
      if (!declared(action.target)) {
        throw error(errc::action_target_missing,
                    "remove-direct target " + action.target.str() + " is not declared in " +
                        m.coord.str());
      }
    } else {
      if (!action.via || !declared(*action.via)) {
        throw error(errc::action_target_missing,
                    "add-exclusion via " + (action.via ? action.via->str() : "<none>") +
                        " is not declared in " + m.coord.str());
      }
    }
  }

  pt::ptree doc = read_xml_tree(original_xml);
  auto project = doc.get_child_optional("project");
  if (!project) throw error(errc::missing_mandatory_field, "no <project> root element");

  dom_matcher matcher(m);
  auto deps = project->get_child_optional("dependencies");

  for (const auto& action : actions) {
    if (!deps) break;
    if (action.kind == debloat_action::action_kind::remove_direct) {
      for (auto it = deps->begin(); it != deps->end();) {
        if (it->first == "dependency" && matcher.dependency_matches(it->second, action.target)) {
          it = deps->erase(it);
        } else {
          ++it;
        }
      }
    } else {
      for (auto& [key, dep] : *deps) {
        if (key != "dependency" || !matcher.dependency_matches(dep, *action.via)) continue;
        if (has_exclusion(dep, action.target, matcher)) continue;
        auto found = dep.find("exclusions");
        pt::ptree& exclusions =
            found != dep.not_found() ? found->second : dep.add_child("exclusions", pt::ptree{});
        pt::ptree exclusion;
        exclusion.add("groupId", action.target.group);
        exclusion.add("artifactId", action.target.artifact);
        exclusions.add_child("exclusion", exclusion);
      }
    }
  }

  std::ostringstream out;
  pt::write_xml(out, doc, pt::xml_writer_settings<std::string>(' ', 2));
  return out.str();
}

}  // namespace depuse
