#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "daac/double_array.hpp"

namespace daac {

// Archive layout, version 1. All integers little-endian.
//
//   "DAAC"  u32 version
//   u8 scheme  u8 layout  u8 format  u8 store
//   u64 ids  u64 alphabet_size  u64 output_length  u64 pattern_count
//   u64 mapping_length  u64 mapping_sigma  u64 vacant_searches
//   u64 verifications
//   state section:
//     packed basic       ids x {u32 base, u32 check, u32 fail, u32 outpos}
//     packed compact     ids x {u32 base|check<<24, u32 fail, u32 outpos}
//     individual         u32 base[ids], check[ids] (u32 basic, u8 compact),
//                        u32 fail[ids], u32 outpos[ids]
//   output section:
//     simple/shared      u32 output[len], term bits[(len+7)/8] (LSB first),
//                        u32 pattern_bytes[pattern_count]
//     forest             len x {u32 pattern, u32 bytes, u32 parent}
//   mapping section:     i32 table[mapping_length]
inline constexpr char kArchiveMagic[4] = {'D', 'A', 'A', 'C'};
inline constexpr std::uint32_t kArchiveVersion = 1;
inline constexpr std::size_t kArchiveHeaderBytes = 4 + 4 + 4 + 8 * 8;

std::string to_bytes(const DoubleArrayAutomaton& da);
// Returns the number of bytes written. Throws Error if the stream fails.
std::size_t save(const DoubleArrayAutomaton& da, std::ostream& out);
std::size_t save(const DoubleArrayAutomaton& da,
                 const std::filesystem::path& path);

// Throws FormatError (magic, version, tags) or CorruptionError (truncation,
// trailing bytes, broken invariants).
DoubleArrayAutomaton from_bytes(std::string_view bytes);
DoubleArrayAutomaton load(std::istream& in);
DoubleArrayAutomaton load(const std::filesystem::path& path);

}  // namespace daac
