#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "depuse/model.hpp"
#include "depuse/zip.hpp"

namespace depuse {

// Everything the usage analysis needs from one class: what it defines and
// which external classes/members it references. All names are in dot form.
struct class_summary {
  struct defined_member {
    ref_kind kind = ref_kind::field;
    std::string name;
    std::string descriptor;

    auto operator<=>(const defined_member&) const = default;
  };

  std::string name;
  std::optional<std::string> super_name;
  std::vector<std::string> interfaces;
  std::vector<defined_member> defined_members;
  std::set<member_ref> refs;
  std::set<std::string> string_class_candidates;
};

// Decodes the class-file header, the full constant pool, member tables and
// annotation/signature attributes. References are collected at class
// granularity; no method-body instructions are decoded.
class_summary parse_class(const std::string& bytes);

struct archive_scan {
  std::vector<class_summary> classes;
  std::vector<std::string> warnings;  // per-entry parse failures
};

// Parses every ".class" entry; other entries are ignored and per-class
// failures become warnings instead of aborting the archive.
archive_scan scan_archive(const std::vector<zip_entry>& entries);

}  // namespace depuse
