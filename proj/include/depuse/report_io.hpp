#pragma once

#include <string>

#include "depuse/usage.hpp"

namespace depuse {

// Machine form of a usage report. report_from_json(report_to_json(r)) == r.
std::string report_to_json(const usage_report& report);
usage_report report_from_json(const std::string& json_text);

// Human-readable rendering with per-label sections, actions and the
// parent-manifest recommendations for bloated-inherited dependencies.
std::string report_to_text(const usage_report& report);

}  // namespace depuse
