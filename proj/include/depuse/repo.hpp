#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "depuse/classfile.hpp"
#include "depuse/manifest.hpp"
#include "depuse/model.hpp"

namespace depuse {

// One loaded artifact: its manifest plus the parsed classes of its archive
// (empty for packaging "pom").
struct artifact_bundle {
  coordinate coord;
  manifest mf;
  std::vector<class_summary> classes;
  std::vector<std::string> warnings;
};

// "org/jxls/jxls-poi/1.0.15/jxls-poi-1.0.15.jar" style layout path. suffix
// is ".pom" or ".jar".
std::string artifact_path(const coordinate& c, const std::string& suffix);

artifact_bundle load_artifact(const std::filesystem::path& repo_root, const coordinate& c);

// First provider in classpath order wins; shadowed definitions are kept in
// duplicates so |mapping| + |duplicates| equals the definition total.
struct class_index {
  std::unordered_map<std::string, coordinate> mapping;
  std::vector<std::pair<std::string, coordinate>> duplicates;
};

class_index build_class_index(const std::vector<const artifact_bundle*>& bundles);

// Caching loader over a Maven-layout directory. Manifests and bundles are
// immutable once loaded; the cache only grows.
class repository {
 public:
  explicit repository(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  const manifest& manifest_for(const coordinate& c);
  const artifact_bundle& bundle_for(const coordinate& c);

 private:
  std::filesystem::path root_;
  std::map<coordinate, manifest> manifests_;
  std::map<coordinate, artifact_bundle> bundles_;
};

}  // namespace depuse
