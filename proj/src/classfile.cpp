#include "depuse/classfile.hpp"

#include <cstdint>

namespace depuse {

namespace {

constexpr std::uint32_t kMagic = 0xCAFEBABE;

enum pool_tag : std::uint8_t {
  tag_utf8 = 1,
  tag_integer = 3,
  tag_float = 4,
  tag_long = 5,
  tag_double = 6,
  tag_class = 7,
  tag_string = 8,
  tag_fieldref = 9,
  tag_methodref = 10,
  tag_interface_methodref = 11,
  tag_name_and_type = 12,
  tag_method_handle = 15,
  tag_method_type = 16,
  tag_dynamic = 17,
  tag_invoke_dynamic = 18,
  tag_module = 19,
  tag_package = 20,
};

struct pool_entry {
  std::uint8_t tag = 0;
  std::string utf8;
  std::uint16_t index_a = 0;  // class/name/descriptor index depending on tag
  std::uint16_t index_b = 0;
};

class reader {
 public:
  explicit reader(const std::string& bytes) : data_(bytes) {}

  std::uint8_t u8() {
    require(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }

  std::uint16_t u16() {
    require(2);
    std::uint16_t v = static_cast<std::uint16_t>(
        (static_cast<std::uint8_t>(data_[pos_]) << 8) | static_cast<std::uint8_t>(data_[pos_ + 1]));
    pos_ += 2;
    return v;
  }

  std::uint32_t u32() {
    std::uint32_t hi = u16();
    return (hi << 16) | u16();
  }

  std::string bytes(std::size_t n) {
    require(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  void skip(std::size_t n) {
    require(n);
    pos_ += n;
  }

 private:
  void require(std::size_t n) const {
    if (pos_ + n > data_.size()) {
      throw error(errc::truncated_pool, "class file truncated at offset " + std::to_string(pos_));
    }
  }

  const std::string& data_;
  std::size_t pos_ = 0;
};

std::string dotted(std::string internal) {
  for (char& c : internal) {
    if (c == '/') c = '.';
  }
  return internal;
}

// "[[Ljava/lang/String;" -> "java/lang/String"; primitive arrays -> empty.
std::string unwrap_array(const std::string& name) {
  std::size_t i = 0;
  while (i < name.size() && name[i] == '[') ++i;
  if (i == 0) return name;
  if (i < name.size() && name[i] == 'L' && name.back() == ';') {
    return name.substr(i + 1, name.size() - i - 2);
  }
  return {};
}

// Collects class names out of field/method descriptors and generic
// signatures. Type variables ("TFoo;") and primitives are skipped; a name
// ends at ';' or at '<' for parameterized signature types.
void harvest_descriptor_classes(const std::string& desc, std::set<std::string>& out) {
  std::size_t i = 0;
  while (i < desc.size()) {
    char c = desc[i];
    if (c == 'L') {
      std::size_t j = i + 1;
      while (j < desc.size() && desc[j] != ';' && desc[j] != '<') ++j;
      if (j > i + 1) out.insert(desc.substr(i + 1, j - i - 1));
      i = j + 1;
    } else if (c == 'T') {
      std::size_t j = i + 1;
      while (j < desc.size() && desc[j] != ';') ++j;
      i = j + 1;
    } else {
      ++i;
    }
  }
}

class class_parser {
 public:
  explicit class_parser(const std::string& bytes) : in_(bytes) {}

  class_summary parse() {
    if (in_.u32() != kMagic) {
      throw error(errc::bad_magic, "bad class file magic");
    }
    in_.u16();  // minor
    std::uint16_t major = in_.u16();
    if (major < 45 || major > 69) {
      throw error(errc::bad_class_version,
                  "unsupported class file major version " + std::to_string(major));
    }

    read_constant_pool();

    in_.u16();  // access flags
    std::uint16_t this_class = in_.u16();
    std::uint16_t super_class = in_.u16();
    summary_.name = dotted(class_name_at(this_class));
    if (super_class != 0) summary_.super_name = dotted(class_name_at(super_class));

    std::uint16_t interface_count = in_.u16();
    for (std::uint16_t i = 0; i < interface_count; ++i) {
      summary_.interfaces.push_back(dotted(class_name_at(in_.u16())));
    }

    read_members(ref_kind::field);
    read_members(ref_kind::method);
    read_attributes();

    finish();
    return std::move(summary_);
  }

 private:
  void read_constant_pool() {
    std::uint16_t count = in_.u16();
    pool_.resize(count);
    for (std::uint16_t i = 1; i < count; ++i) {
      pool_entry& e = pool_[i];
      e.tag = in_.u8();
      switch (e.tag) {
        case tag_utf8: e.utf8 = in_.bytes(in_.u16()); break;
        case tag_integer:
        case tag_float: in_.skip(4); break;
        case tag_long:
        case tag_double:
          in_.skip(8);
          ++i;  // occupies two pool slots
          break;
        case tag_class:
        case tag_string:
        case tag_method_type:
        case tag_module:
        case tag_package: e.index_a = in_.u16(); break;
        case tag_fieldref:
        case tag_methodref:
        case tag_interface_methodref:
        case tag_name_and_type:
        case tag_dynamic:
        case tag_invoke_dynamic:
          e.index_a = in_.u16();
          e.index_b = in_.u16();
          break;
        case tag_method_handle:
          in_.u8();
          e.index_a = in_.u16();
          break;
        default:
          throw error(errc::unknown_pool_tag,
                      "unknown constant pool tag " + std::to_string(e.tag) + " at entry " +
                          std::to_string(i));
      }
    }
  }

  const pool_entry& at(std::uint16_t index, std::uint8_t expected_tag) const {
    if (index == 0 || index >= pool_.size() || pool_[index].tag != expected_tag) {
      throw error(errc::truncated_pool,
                  "constant pool index " + std::to_string(index) + " is not tag " +
                      std::to_string(expected_tag));
    }
    return pool_[index];
  }

  const std::string& utf8_at(std::uint16_t index) const { return at(index, tag_utf8).utf8; }

  std::string class_name_at(std::uint16_t index) const {
    return utf8_at(at(index, tag_class).index_a);
  }

  void read_members(ref_kind kind) {
    std::uint16_t count = in_.u16();
    for (std::uint16_t i = 0; i < count; ++i) {
      in_.u16();  // access flags
      std::string name = utf8_at(in_.u16());
      std::string descriptor = utf8_at(in_.u16());
      harvest_descriptor_classes(descriptor, descriptor_classes_);
      summary_.defined_members.push_back({kind, std::move(name), std::move(descriptor)});
      read_attributes();
    }
  }

  void read_attributes() {
    std::uint16_t count = in_.u16();
    for (std::uint16_t i = 0; i < count; ++i) {
      const std::string& name = utf8_at(in_.u16());
      std::uint32_t length = in_.u32();
      if (name == "RuntimeVisibleAnnotations" || name == "RuntimeInvisibleAnnotations") {
        std::uint16_t n = in_.u16();
        for (std::uint16_t a = 0; a < n; ++a) read_annotation();
      } else if (name == "RuntimeVisibleParameterAnnotations" ||
                 name == "RuntimeInvisibleParameterAnnotations") {
        std::uint8_t params = in_.u8();
        for (std::uint8_t p = 0; p < params; ++p) {
          std::uint16_t n = in_.u16();
          for (std::uint16_t a = 0; a < n; ++a) read_annotation();
        }
      } else if (name == "Signature") {
        harvest_descriptor_classes(utf8_at(in_.u16()), descriptor_classes_);
      } else {
        in_.skip(length);
      }
    }
  }

  void read_annotation() {
    const std::string& type_descriptor = utf8_at(in_.u16());
    std::set<std::string> names;
    harvest_descriptor_classes(type_descriptor, names);
    for (const auto& n : names) {
      summary_.refs.insert(member_ref{dotted(n), ref_kind::annotation, {}, {}});
    }
    std::uint16_t pairs = in_.u16();
    for (std::uint16_t p = 0; p < pairs; ++p) {
      in_.u16();  // element name
      read_element_value();
    }
  }

  void read_element_value() {
    std::uint8_t tag = in_.u8();
    switch (tag) {
      case 'B':
      case 'C':
      case 'D':
      case 'F':
      case 'I':
      case 'J':
      case 'S':
      case 'Z':
      case 's': in_.u16(); break;
      case 'e':
        harvest_descriptor_classes(utf8_at(in_.u16()), descriptor_classes_);
        in_.u16();
        break;
      case 'c': harvest_descriptor_classes(utf8_at(in_.u16()), descriptor_classes_); break;
      case '@': read_annotation(); break;
      case '[': {
        std::uint16_t n = in_.u16();
        for (std::uint16_t i = 0; i < n; ++i) read_element_value();
        break;
      }
      default:
        throw error(errc::truncated_pool,
                    "unknown annotation element tag " + std::to_string(tag));
    }
  }

  void add_class_ref(const std::string& internal_name) {
    std::string element = unwrap_array(internal_name);
    if (element.empty()) return;
    summary_.refs.insert(member_ref{dotted(element), ref_kind::klass, {}, {}});
  }

  void finish() {
    for (std::size_t i = 1; i < pool_.size(); ++i) {
      const pool_entry& e = pool_[i];
      switch (e.tag) {
        case tag_class: add_class_ref(utf8_at(e.index_a)); break;
        case tag_string: {
          const std::string& literal = utf8_at(e.index_a);
          if (looks_like_qualified_class_name(literal)) {
            summary_.string_class_candidates.insert(literal);
            summary_.refs.insert(member_ref{literal, ref_kind::string_literal, {}, {}});
          }
          break;
        }
        case tag_fieldref:
        case tag_methodref:
        case tag_interface_methodref: {
          std::string owner = unwrap_array(utf8_at(at(e.index_a, tag_class).index_a));
          const pool_entry& nat = at(e.index_b, tag_name_and_type);
          if (!owner.empty()) {
            summary_.refs.insert(member_ref{dotted(owner),
                                            e.tag == tag_fieldref ? ref_kind::field
                                                                  : ref_kind::method,
                                            utf8_at(nat.index_a), utf8_at(nat.index_b)});
          }
          break;
        }
        case tag_name_and_type:
          harvest_descriptor_classes(utf8_at(e.index_b), descriptor_classes_);
          break;
        case tag_method_type:
          harvest_descriptor_classes(utf8_at(e.index_a), descriptor_classes_);
          break;
        default: break;
      }
    }

    for (const auto& internal : descriptor_classes_) {
      summary_.refs.insert(member_ref{dotted(internal), ref_kind::klass, {}, {}});
    }
    summary_.refs.erase(member_ref{summary_.name, ref_kind::klass, {}, {}});
  }

  reader in_;
  std::vector<pool_entry> pool_;
  std::set<std::string> descriptor_classes_;
  class_summary summary_;
};

}  // namespace

class_summary parse_class(const std::string& bytes) { return class_parser(bytes).parse(); }

archive_scan scan_archive(const std::vector<zip_entry>& entries) {
  archive_scan result;
  for (const auto& entry : entries) {
    if (!entry.name.ends_with(".class")) continue;
    try {
      result.classes.push_back(parse_class(entry.bytes));
    } catch (const error& e) {
      result.warnings.push_back(entry.name + ": " + e.what());
    }
  }
  return result;
}

}  // namespace depuse
