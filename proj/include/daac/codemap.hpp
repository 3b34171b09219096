#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "daac/error.hpp"
#include "daac/utf8.hpp"

namespace daac {

class Dictionary;

// How text is turned into transition labels.
enum class Scheme : std::uint8_t {
  kBytewise = 0,  // UTF-8 bytes
  kCharwise = 1,  // Unicode scalar values
  kMapped = 2,    // scalar values renumbered by descending frequency
};

std::string_view to_string(Scheme s) noexcept;
Scheme parse_scheme(std::string_view name);  // throws ConfigError

// A transition label: a byte, a scalar value, or a mapped code depending on
// the scheme.
using CodeUnit = std::uint32_t;

// Label for text characters that never occur in the dictionary under Mapped.
// Transitions on it always fail.
inline constexpr CodeUnit kInvalidCode = UINT32_MAX;

struct EncodedUnit {
  CodeUnit value;
  std::uint8_t width;  // bytes of the original text consumed

  friend bool operator==(const EncodedUnit&, const EncodedUnit&) = default;
};

// Frequency-ranked code mapping. Entry c holds the rank of code point c among
// the dictionary's characters (0 = most frequent) or kUnmapped.
class MappingTable {
 public:
  static constexpr std::int32_t kUnmapped = -1;

  MappingTable() = default;
  MappingTable(std::vector<std::int32_t> table, std::uint32_t sigma)
      : table_(std::move(table)), sigma_(sigma) {}

  std::int32_t operator()(std::uint32_t cp) const noexcept {
    return cp < table_.size() ? table_[cp] : kUnmapped;
  }

  std::uint32_t sigma() const noexcept { return sigma_; }
  const std::vector<std::int32_t>& table() const noexcept { return table_; }
  std::size_t byte_size() const noexcept {
    return table_.size() * sizeof(std::int32_t);
  }
  bool empty() const noexcept { return table_.empty(); }

  friend bool operator==(const MappingTable&, const MappingTable&) = default;

 private:
  std::vector<std::int32_t> table_;
  std::uint32_t sigma_ = 0;
};

// Counts every code point of every pattern and ranks them: more frequent
// characters get smaller codes, ties go to the smaller code point.
MappingTable build_mapping(const Dictionary& dict);

// Converts text to labels under one scheme. Cheap to copy for Bytewise and
// Charwise; under Mapped it owns the mapping table.
class TextEncoder {
 public:
  TextEncoder() = default;
  explicit TextEncoder(Scheme scheme, MappingTable mapping = {});

  Scheme scheme() const noexcept { return scheme_; }
  const MappingTable& mapping() const noexcept { return mapping_; }

  // Calls f(label, byte_width) for each unit of text. Under Mapped,
  // characters absent from the dictionary are reported as kInvalidCode.
  // Throws EncodingError on malformed UTF-8 (Charwise and Mapped only).
  template <class F>
  void for_each(std::string_view text, F&& f) const;

  std::vector<EncodedUnit> encode(std::string_view text) const;

  // Labels of a dictionary pattern (always valid: patterns define the
  // mapping).
  std::vector<CodeUnit> labels(std::string_view pattern) const;

 private:
  [[noreturn]] static void throw_invalid(std::size_t offset);

  Scheme scheme_ = Scheme::kBytewise;
  MappingTable mapping_;
};

// Occurrences of each label over all pattern code units, indexed by label.
std::vector<std::uint64_t> count_labels(const Dictionary& dict,
                                        const TextEncoder& encoder);

template <class F>
void TextEncoder::for_each(std::string_view text, F&& f) const {
  auto p = reinterpret_cast<const unsigned char*>(text.data());
  const auto begin = p;
  const auto end = p + text.size();
  if (scheme_ == Scheme::kBytewise) {
    for (; p < end; ++p) f(CodeUnit{*p}, std::uint8_t{1});
    return;
  }
  while (p < end) {
    std::uint32_t cp;
    int w = utf8::decode(p, end, cp);
    if (w == 0) throw_invalid(static_cast<std::size_t>(p - begin));
    p += w;
    if (scheme_ == Scheme::kCharwise) {
      f(CodeUnit{cp}, static_cast<std::uint8_t>(w));
    } else {
      std::int32_t m = mapping_(cp);
      f(m < 0 ? kInvalidCode : static_cast<CodeUnit>(m),
        static_cast<std::uint8_t>(w));
    }
  }
}

}  // namespace daac
