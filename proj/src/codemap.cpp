#include "daac/codemap.hpp"

#include <algorithm>
#include <numeric>

#include "daac/dictionary.hpp"

namespace daac {

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::kBytewise: return "bytewise";
    case Scheme::kCharwise: return "charwise";
    case Scheme::kMapped: return "mapped";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "bytewise") return Scheme::kBytewise;
  if (name == "charwise") return Scheme::kCharwise;
  if (name == "mapped") return Scheme::kMapped;
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

MappingTable build_mapping(const Dictionary& dict) {
  std::vector<std::uint64_t> freq;
  for (const std::string& p : dict.patterns()) {
    auto it = reinterpret_cast<const unsigned char*>(p.data());
    const auto end = it + p.size();
    while (it < end) {
      std::uint32_t cp = 0;
      int w = utf8::decode(it, end, cp);
      // Dictionary guarantees valid UTF-8.
      it += w;
      if (cp >= freq.size()) freq.resize(cp + 1, 0);
      ++freq[cp];
    }
  }
  std::vector<std::uint32_t> present;
  for (std::uint32_t c = 0; c < freq.size(); ++c)
    if (freq[c] != 0) present.push_back(c);
  std::stable_sort(present.begin(), present.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return freq[a] > freq[b];
                   });
  std::vector<std::int32_t> table(freq.size(), MappingTable::kUnmapped);
  for (std::size_t rank = 0; rank < present.size(); ++rank)
    table[present[rank]] = static_cast<std::int32_t>(rank);
  return MappingTable(std::move(table),
                      static_cast<std::uint32_t>(present.size()));
}

TextEncoder::TextEncoder(Scheme scheme, MappingTable mapping)
    : scheme_(scheme), mapping_(std::move(mapping)) {
  if (scheme_ != Scheme::kMapped) mapping_ = MappingTable{};
}

void TextEncoder::throw_invalid(std::size_t offset) {
  throw EncodingError("invalid UTF-8 at byte offset " + std::to_string(offset));
}

std::vector<EncodedUnit> TextEncoder::encode(std::string_view text) const {
  std::vector<EncodedUnit> out;
  out.reserve(scheme_ == Scheme::kBytewise ? text.size() : text.size() / 2);
  for_each(text, [&](CodeUnit c, std::uint8_t w) { out.push_back({c, w}); });
  return out;
}

std::vector<CodeUnit> TextEncoder::labels(std::string_view pattern) const {
  std::vector<CodeUnit> out;
  for_each(pattern, [&](CodeUnit c, std::uint8_t) {
    if (c == kInvalidCode)
      throw EncodingError("pattern character missing from the mapping table");
    out.push_back(c);
  });
  return out;
}

std::vector<std::uint64_t> count_labels(const Dictionary& dict,
                                        const TextEncoder& encoder) {
  std::vector<std::uint64_t> freq;
  for (const std::string& p : dict.patterns()) {
    encoder.for_each(p, [&](CodeUnit c, std::uint8_t) {
      if (c >= freq.size()) freq.resize(std::size_t{c} + 1, 0);
      ++freq[c];
    });
  }
  return freq;
}

}  // namespace daac
