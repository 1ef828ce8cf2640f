#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace depuse {

struct zip_entry {
  std::string name;
  std::string bytes;
};

// Reads all file entries of a ZIP container (stored and deflate methods),
// verifying each entry's CRC-32. Directory entries are skipped.
std::vector<zip_entry> read_zip(const std::string& archive_bytes);

}  // namespace depuse
