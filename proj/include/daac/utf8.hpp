#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace daac::utf8 {

// Decodes one scalar value starting at p. Returns the byte width (1..4), or 0
// if the sequence is malformed: truncated, overlong, a surrogate, or above
// U+10FFFF.
inline int decode(const unsigned char* p, const unsigned char* end,
                  std::uint32_t& cp) noexcept {
  const std::size_t avail = static_cast<std::size_t>(end - p);
  if (avail == 0) return 0;
  const unsigned char b0 = p[0];
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  if (b0 < 0xC2) return 0;
  if (b0 < 0xE0) {
    if (avail < 2 || (p[1] & 0xC0) != 0x80) return 0;
    cp = (std::uint32_t(b0 & 0x1F) << 6) | (p[1] & 0x3F);
    return 2;
  }
  if (b0 < 0xF0) {
    if (avail < 3 || (p[1] & 0xC0) != 0x80 || (p[2] & 0xC0) != 0x80) return 0;
    cp = (std::uint32_t(b0 & 0x0F) << 12) | (std::uint32_t(p[1] & 0x3F) << 6) |
         (p[2] & 0x3F);
    if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
    return 3;
  }
  if (b0 < 0xF5) {
    if (avail < 4 || (p[1] & 0xC0) != 0x80 || (p[2] & 0xC0) != 0x80 ||
        (p[3] & 0xC0) != 0x80)
      return 0;
    cp = (std::uint32_t(b0 & 0x07) << 18) | (std::uint32_t(p[1] & 0x3F) << 12) |
         (std::uint32_t(p[2] & 0x3F) << 6) | (p[3] & 0x3F);
    if (cp < 0x10000 || cp > 0x10FFFF) return 0;
    return 4;
  }
  return 0;
}

// Appends the UTF-8 encoding of cp to out. cp must be a scalar value.
template <class String>
void append(String& out, std::uint32_t cp) {
  using Ch = typename String::value_type;
  if (cp < 0x80) {
    out.push_back(static_cast<Ch>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<Ch>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<Ch>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<Ch>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<Ch>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<Ch>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<Ch>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<Ch>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<Ch>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<Ch>(0x80 | (cp & 0x3F)));
  }
}

// Number of code points in s, or -1 if s is not valid UTF-8.
std::ptrdiff_t count_code_points(std::string_view s) noexcept;

inline bool is_valid(std::string_view s) noexcept {
  return count_code_points(s) >= 0;
}

}  // namespace daac::utf8
