#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace daac {

using PatternId = std::uint32_t;

// An ordered set of unique, non-empty UTF-8 patterns. Pattern ids are the
// 0-based positions in insertion order.
class Dictionary {
 public:
  Dictionary() = default;

  // Throws DictionaryError on an empty or duplicate pattern and on invalid
  // UTF-8.
  explicit Dictionary(std::vector<std::string> patterns);

  // One pattern per LF-terminated line. The final newline is optional. Empty
  // lines, CR characters and a leading byte-order mark are rejected.
  static Dictionary parse(std::string_view text);
  static Dictionary load(const std::filesystem::path& path);

  std::size_t size() const noexcept { return patterns_.size(); }
  bool empty() const noexcept { return patterns_.empty(); }

  const std::string& pattern(PatternId k) const { return patterns_.at(k); }
  const std::vector<std::string>& patterns() const noexcept { return patterns_; }

  std::uint32_t byte_len(PatternId k) const { return byte_len_.at(k); }
  std::uint32_t char_len(PatternId k) const { return char_len_.at(k); }
  const std::vector<std::uint32_t>& byte_lengths() const noexcept {
    return byte_len_;
  }

 private:
  std::vector<std::string> patterns_;
  std::vector<std::uint32_t> byte_len_;
  std::vector<std::uint32_t> char_len_;
};

// One match of pattern `pattern_id` at byte range [start, end) of the text.
struct Occurrence {
  PatternId pattern_id = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

std::ostream& operator<<(std::ostream& os, const Occurrence& occ);

// Sorts by (end, start, pattern_id) so that occurrence lists from different
// matchers can be compared as sets.
void sort_occurrences(std::vector<Occurrence>& occs);

}  // namespace daac
