#include "depuse/repo.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "depuse/zip.hpp"

namespace depuse {

namespace {

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

}  // namespace

std::string artifact_path(const coordinate& c, const std::string& suffix) {
  std::string group_dir = c.group;
  for (char& ch : group_dir) {
    if (ch == '.') ch = '/';
  }
  return group_dir + "/" + c.artifact + "/" + c.version + "/" + c.artifact + "-" + c.version +
         suffix;
}

artifact_bundle load_artifact(const std::filesystem::path& repo_root, const coordinate& c) {
  auto pom_path = repo_root / artifact_path(c, ".pom");
  auto pom_bytes = read_file(pom_path);
  if (!pom_bytes) {
    throw error(errc::artifact_not_found,
                "no manifest for " + c.str() + " at " + pom_path.string());
  }

  artifact_bundle bundle;
  bundle.coord = c;
  bundle.mf = parse_manifest(*pom_bytes);

  if (bundle.mf.packaging != "pom") {
    auto jar_path = repo_root / artifact_path(c, ".jar");
    auto jar_bytes = read_file(jar_path);
    if (!jar_bytes) {
      throw error(errc::artifact_not_found,
                  "no archive for " + c.str() + " at " + jar_path.string());
    }
    archive_scan scan = scan_archive(read_zip(*jar_bytes));
    bundle.classes = std::move(scan.classes);
    bundle.warnings = std::move(scan.warnings);
  }
  return bundle;
}

class_index build_class_index(const std::vector<const artifact_bundle*>& bundles) {
  class_index index;
  for (const artifact_bundle* bundle : bundles) {
    for (const class_summary& cls : bundle->classes) {
      auto [it, inserted] = index.mapping.emplace(cls.name, bundle->coord);
      if (!inserted) index.duplicates.emplace_back(cls.name, bundle->coord);
    }
  }
  return index;
}

const manifest& repository::manifest_for(const coordinate& c) {
  if (auto it = manifests_.find(c); it != manifests_.end()) return it->second;
  auto pom_path = root_ / artifact_path(c, ".pom");
  auto pom_bytes = read_file(pom_path);
  if (!pom_bytes) {
    throw error(errc::artifact_not_found,
                "no manifest for " + c.str() + " at " + pom_path.string());
  }
  return manifests_.emplace(c, parse_manifest(*pom_bytes)).first->second;
}

const artifact_bundle& repository::bundle_for(const coordinate& c) {
  if (auto it = bundles_.find(c); it != bundles_.end()) return it->second;
  return bundles_.emplace(c, load_artifact(root_, c)).first->second;
}

}  // namespace depuse
