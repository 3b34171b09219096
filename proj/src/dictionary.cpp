#include "daac/dictionary.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "daac/error.hpp"
#include "daac/utf8.hpp"

namespace daac {

namespace utf8 {

std::ptrdiff_t count_code_points(std::string_view s) noexcept {
  auto p = reinterpret_cast<const unsigned char*>(s.data());
  const auto end = p + s.size();
  std::ptrdiff_t n = 0;
  while (p < end) {
    std::uint32_t cp = 0;
    int w = decode(p, end, cp);
    if (w == 0) return -1;
    p += w;
    ++n;
  }
  return n;
}

}  // namespace utf8

Dictionary::Dictionary(std::vector<std::string> patterns)
    : patterns_(std::move(patterns)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(patterns_.size());
  byte_len_.reserve(patterns_.size());
  char_len_.reserve(patterns_.size());
  for (std::size_t k = 0; k < patterns_.size(); ++k) {
    const std::string& p = patterns_[k];
    if (p.empty())
      throw DictionaryError("pattern " + std::to_string(k) + " is empty");
    if (!seen.insert(p).second)
      throw DictionaryError("duplicate pattern at index " + std::to_string(k));
    auto chars = utf8::count_code_points(p);
    if (chars < 0)
      throw DictionaryError("pattern " + std::to_string(k) +
                            " is not valid UTF-8");
    if (p.size() > UINT32_MAX)
      throw DictionaryError("pattern " + std::to_string(k) + " is too long");
    byte_len_.push_back(static_cast<std::uint32_t>(p.size()));
    char_len_.push_back(static_cast<std::uint32_t>(chars));
  }
  if (patterns_.empty()) throw DictionaryError("dictionary has no patterns");
  if (patterns_.size() > UINT32_MAX - 1)
    throw DictionaryError("too many patterns");
}

Dictionary Dictionary::parse(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF")
    throw DictionaryError("byte-order mark is not allowed");
  std::vector<std::string> lines;
  std::size_t pos = 0;
  std::size_t line_no = 1;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (line.empty())
      throw DictionaryError("empty line " + std::to_string(line_no));
    if (line.find('\r') != std::string_view::npos)
      throw DictionaryError("CR character on line " + std::to_string(line_no) +
                            " (LF line endings required)");
    lines.emplace_back(line);
    pos = nl + 1;
    ++line_no;
  }
  return Dictionary(std::move(lines));
}

Dictionary Dictionary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DictionaryError("cannot open dictionary " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::ostream& operator<<(std::ostream& os, const Occurrence& occ) {
  return os << '(' << occ.pattern_id << ',' << occ.start << ',' << occ.end
            << ')';
}

void sort_occurrences(std::vector<Occurrence>& occs) {
  std::sort(occs.begin(), occs.end(),
            [](const Occurrence& a, const Occurrence& b) {
              if (a.end != b.end) return a.end < b.end;
              if (a.start != b.start) return a.start < b.start;
              return a.pattern_id < b.pattern_id;
            });
}

}  // namespace daac
