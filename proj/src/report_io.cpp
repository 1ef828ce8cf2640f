#include "depuse/report_io.hpp"

#include <array>
#include <sstream>

#include <json.hpp>

namespace depuse {

namespace {

using nlohmann::json;

json usage_to_json(const dependency_usage& usage) {
  json j;
  j["ga"] = usage.dep_ga.str();
  j["version"] = usage.coord.version;
  j["label"] = encode_label(usage.label);
  j["forced"] = usage.forced;
  j["usedClasses"] = json::array();
  for (const std::string& cls : usage.used_classes.classes) j["usedClasses"].push_back(cls);
  j["path"] = json::array();
  for (const ga& hop : usage.tree_path) j["path"].push_back(hop.str());
  return j;
}

dependency_usage usage_from_json(const json& j) {
  dependency_usage usage;
  usage.dep_ga = parse_ga(j.at("ga").get<std::string>());
  usage.coord = coordinate{usage.dep_ga.group, usage.dep_ga.artifact,
                           j.at("version").get<std::string>()};
  usage.label = decode_label(j.at("label").get<std::string>());
  usage.forced = j.value("forced", false);
  usage.used_classes.owner = usage.coord;
  for (const auto& cls : j.at("usedClasses")) {
    usage.used_classes.classes.insert(cls.get<std::string>());
  }
  for (const auto& hop : j.at("path")) {
    usage.tree_path.push_back(parse_ga(hop.get<std::string>()));
  }
  return usage;
}

}  // namespace

std::string report_to_json(const usage_report& report) {
  json j;
  j["root"] = report.root.str();
  j["treeHeight"] = report.tree_height;
  j["multiModule"] = report.multi_module;
  j["counts"] = json::object();
  for (const auto& [label, n] : report.counts) j["counts"][label] = n;
  j["usages"] = json::array();
  for (const dependency_usage& usage : report.usages) j["usages"].push_back(usage_to_json(usage));
  j["actions"] = json::array();
  for (const debloat_action& action : report.actions) {
    json a;
    a["kind"] = action.kind == debloat_action::action_kind::remove_direct ? "remove-direct"
                                                                          : "add-exclusion";
    a["target"] = action.target.str();
    if (action.via) a["via"] = action.via->str();
    j["actions"].push_back(a);
  }
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

usage_report report_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  usage_report report;
  report.root = parse_coordinate(j.at("root").get<std::string>());
  report.tree_height = j.at("treeHeight").get<int>();
  report.multi_module = j.at("multiModule").get<bool>();
  for (const auto& [label, n] : j.at("counts").items()) report.counts[label] = n.get<int>();
  for (const auto& usage : j.at("usages")) report.usages.push_back(usage_from_json(usage));
  for (const auto& a : j.at("actions")) {
    debloat_action action;
    action.kind = a.at("kind").get<std::string>() == "remove-direct"
                      ? debloat_action::action_kind::remove_direct
                      : debloat_action::action_kind::add_exclusion;
    action.target = parse_ga(a.at("target").get<std::string>());
    if (a.contains("via")) action.via = parse_ga(a.at("via").get<std::string>());
    report.actions.push_back(std::move(action));
  }
  for (const auto& warning : j.at("warnings")) {
    report.warnings.push_back(warning.get<std::string>());
  }
  return report;
}

std::string report_to_text(const usage_report& report) {
  static constexpr std::array<std::pair<const char*, const char*>, 6> kSections = {{
      {"ud", "used direct"},
      {"ui", "used inherited"},
      {"ut", "used transitive"},
      {"bd", "bloated direct"},
      {"bi", "bloated inherited"},
      {"bt", "bloated transitive"},
  }};

  int used = 0, bloated = 0;
  for (const auto& [label, n] : report.counts) {
    (label[0] == 'u' ? used : bloated) += n;
  }

  std::ostringstream out;
  out << "dependency usage of " << report.root.str() << "\n";
  out << "  tree height " << report.tree_height << ", "
      << (report.multi_module ? "multi-module" : "single-module") << "\n";
  out << "  " << used << " used, " << bloated << " bloated of " << used + bloated
      << " dependencies\n";

  for (const auto& [code, title] : kSections) {
    int n = report.counts.count(code) ? report.counts.at(code) : 0;
    if (n == 0) continue;
    out << title << " (" << n << "):\n";
    for (const dependency_usage& usage : report.usages) {
      if (encode_label(usage.label) != code) continue;
      out << "  " << usage.coord.str();
      if (usage.forced) out << " [kept by ignore list]";
      if (std::size_t n = usage.used_classes.classes.size(); n > 0) {
        out << " [" << n << (n == 1 ? " class used]" : " classes used]");
      }
      out << "\n";
    }
  }

  bool any_bi = false;
  for (const dependency_usage& usage : report.usages) {
    if (usage.label == usage_label{usage_status::bloated, dep_origin::inherited}) {
      if (!any_bi) out << "recommendations:\n";
      any_bi = true;
      out << "  remove " << usage.dep_ga.str() << " from the parent manifest\n";
    }
  }

  if (!report.actions.empty()) {
    out << "actions:\n";
    for (const debloat_action& action : report.actions) {
      if (action.kind == debloat_action::action_kind::remove_direct) {
        out << "  remove direct dependency " << action.target.str() << "\n";
      } else {
        out << "  exclude " << action.target.str() << " via " << action.via->str() << "\n";
      }
    }
  }
  if (!report.warnings.empty()) {
    out << "warnings:\n";
    for (const std::string& warning : report.warnings) out << "  " << warning << "\n";
  }
  return out.str();
}

}  // namespace depuse
