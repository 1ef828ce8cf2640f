#include "depuse/zip.hpp"

#include <zlib.h>

#include "depuse/model.hpp"

namespace depuse {

namespace {

constexpr std::uint32_t kEocdSignature = 0x06054b50;
constexpr std::uint32_t kCentralSignature = 0x02014b50;
constexpr std::uint32_t kLocalSignature = 0x04034b50;
constexpr std::size_t kEocdMinSize = 22;
constexpr std::size_t kMaxCommentSize = 65535;

class cursor {
 public:
  cursor(const std::string& data, std::size_t pos) : data_(data), pos_(pos) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(byte() | byte() << 8); }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int shift = 0; shift < 32; shift += 8) v |= static_cast<std::uint32_t>(byte()) << shift;
    return v;
  }

  std::string str(std::size_t n) {
    require(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  void skip(std::size_t n) {
    require(n);
    pos_ += n;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::uint8_t byte() {
    require(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }

  void require(std::size_t n) const {
    if (pos_ + n > data_.size()) {
      throw error(errc::malformed_zip, "truncated ZIP structure");
    }
  }

  const std::string& data_;
  std::size_t pos_;
};

std::size_t find_end_of_central_directory(const std::string& data) {
  if (data.size() < kEocdMinSize) throw error(errc::malformed_zip, "input too small for a ZIP");
  std::size_t scan_limit = data.size() >= kEocdMinSize + kMaxCommentSize
                               ? data.size() - kEocdMinSize - kMaxCommentSize
                               : 0;
  for (std::size_t pos = data.size() - kEocdMinSize;; --pos) {
    cursor c(data, pos);
    if (c.u32() == kEocdSignature) return pos;
    if (pos == scan_limit) break;
  }
  throw error(errc::malformed_zip, "no end-of-central-directory record found");
}

std::string inflate_raw(const std::string& compressed, std::size_t expected_size) {
  std::string out(expected_size, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
    throw error(errc::malformed_zip, "inflateInit failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  bool ok = rc == Z_STREAM_END && zs.total_out == expected_size;
  inflateEnd(&zs);
  if (!ok) throw error(errc::malformed_zip, "deflate stream did not decode cleanly");
  return out;
}

}  // namespace

std::vector<zip_entry> read_zip(const std::string& archive_bytes) {
  std::size_t eocd_pos = find_end_of_central_directory(archive_bytes);
  cursor eocd(archive_bytes, eocd_pos + 4);
  eocd.skip(2 + 2 + 2);  // disk numbers, entries on this disk
  std::uint16_t entry_count = eocd.u16();
  eocd.skip(4);  // central directory size
  std::uint32_t central_offset = eocd.u32();

  std::vector<zip_entry> entries;
  entries.reserve(entry_count);
  cursor central(archive_bytes, central_offset);
  for (std::uint16_t i = 0; i < entry_count; ++i) {
    if (central.u32() != kCentralSignature) {
      throw error(errc::malformed_zip, "bad central directory entry signature");
    }
    central.skip(2 + 2 + 2);  // version made by, version needed, flags
    std::uint16_t method = central.u16();
    central.skip(2 + 2);  // mod time, mod date
    std::uint32_t crc = central.u32();
    std::uint32_t compressed_size = central.u32();
    std::uint32_t uncompressed_size = central.u32();
    std::uint16_t name_len = central.u16();
    std::uint16_t extra_len = central.u16();
    std::uint16_t comment_len = central.u16();
    central.skip(2 + 2 + 4);  // disk start, internal attrs, external attrs
    std::uint32_t local_offset = central.u32();
    std::string name = central.str(name_len);
    central.skip(static_cast<std::size_t>(extra_len) + comment_len);

    if (!name.empty() && name.back() == '/') continue;  // directory entry

    cursor local(archive_bytes, local_offset);
    if (local.u32() != kLocalSignature) {
      throw error(errc::malformed_zip, "bad local header signature for entry " + name);
    }
    local.skip(2 + 2 + 2 + 2 + 2 + 4 + 4 + 4);  // up to and incl. sizes
    std::uint16_t local_name_len = local.u16();
    std::uint16_t local_extra_len = local.u16();
    local.skip(static_cast<std::size_t>(local_name_len) + local_extra_len);

    cursor data(archive_bytes, local.pos());
    std::string raw = data.str(compressed_size);

    zip_entry entry;
    entry.name = std::move(name);
    switch (method) {
      case 0:  // stored
        if (compressed_size != uncompressed_size) {
          throw error(errc::malformed_zip, "stored entry with mismatched sizes: " + entry.name);
        }
        entry.bytes = std::move(raw);
        break;
      case 8:  // deflate
        entry.bytes = inflate_raw(raw, uncompressed_size);
        break;
      default:
        throw error(errc::malformed_zip,
                    "unsupported compression method " + std::to_string(method) + " for entry " +
                        entry.name);
    }

    std::uint32_t actual_crc = static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(entry.bytes.data()),
              static_cast<uInt>(entry.bytes.size())));
    if (actual_crc != crc) {
      throw error(errc::malformed_zip, "CRC mismatch for entry " + entry.name);
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace depuse
