#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "daac/codemap.hpp"
#include "daac/nfa.hpp"
#include "daac/outputs.hpp"

namespace daac {

enum class Layout : std::uint8_t {
  kIndividual = 0,  // BASE, CHECK, FAIL, OUTPOS as four arrays
  kPacked = 1,      // one record per state
};

enum class Format : std::uint8_t {
  kBasic = 0,    // CHECK holds the parent id
  kCompact = 1,  // CHECK holds the incoming label in one byte
};

std::string_view to_string(Layout l) noexcept;
std::string_view to_string(Format f) noexcept;
Layout parse_layout(std::string_view name);
Format parse_format(std::string_view name);

// BASE of a state without outgoing transitions. No internal state is ever
// given this base, so a probe from a leaf can never pass the CHECK test.
inline constexpr std::uint32_t kLeafBase = 0;
// CHECK of vacant ids and of the root under Basic (never a parent id).
inline constexpr std::uint32_t kVacantParent = UINT32_MAX;
// CHECK of vacant ids and of the root under Compact. 0xFF never occurs in
// UTF-8, so it is never a Bytewise label.
inline constexpr std::uint8_t kVacantLabel = 0xFF;

inline constexpr std::uint64_t kMaxCompactIds = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kMaxBasicIds = UINT32_MAX;

// Block size for an alphabet of `alphabet_size` labels: the smallest power of
// two not below it.
std::uint32_t block_size_for(std::uint32_t alphabet_size) noexcept;

inline std::uint32_t block_of(std::uint32_t id, std::uint32_t block) noexcept {
  return id / block;
}

// ---------------------------------------------------------------------------
// State arrays. All four share one interface so the matcher and builder can
// be written once as templates:
//
//   size(), base(i), check(i), fail(i), outpos(i), set_*(i, v),
//   transition(s, c) -> target or kNoState, is_state(i)
// ---------------------------------------------------------------------------

struct PackedBasicRecord {
  std::uint32_t base;
  std::uint32_t check;
  std::uint32_t fail;
  std::uint32_t outpos;
};
static_assert(sizeof(PackedBasicRecord) == 16);

// 3 bytes of base and 1 byte of check share the first word.
struct PackedCompactRecord {
  std::uint32_t base_check;
  std::uint32_t fail;
  std::uint32_t outpos;
};
static_assert(sizeof(PackedCompactRecord) == 12);

class PackedBasicArray {
 public:
  static constexpr Layout kLayout = Layout::kPacked;
  static constexpr Format kFormat = Format::kBasic;
  static constexpr std::size_t kBytesPerState = sizeof(PackedBasicRecord);

  void resize(std::size_t n) {
    records_.resize(n, PackedBasicRecord{kLeafBase, kVacantParent, 0, kNoOutput});
  }
  std::size_t size() const noexcept { return records_.size(); }

  std::uint32_t base(std::size_t i) const noexcept { return records_[i].base; }
  std::uint32_t check(std::size_t i) const noexcept { return records_[i].check; }
  std::uint32_t fail(std::size_t i) const noexcept { return records_[i].fail; }
  std::uint32_t outpos(std::size_t i) const noexcept { return records_[i].outpos; }
  void set_base(std::size_t i, std::uint32_t v) noexcept { records_[i].base = v; }
  void set_check(std::size_t i, std::uint32_t v) noexcept { records_[i].check = v; }
  void set_fail(std::size_t i, std::uint32_t v) noexcept { records_[i].fail = v; }
  void set_outpos(std::size_t i, std::uint32_t v) noexcept { records_[i].outpos = v; }

  bool is_state(std::size_t i) const noexcept {
    return i == 0 || records_[i].check != kVacantParent;
  }

  StateId transition(StateId s, CodeUnit c) const noexcept {
    const StateId t = records_[s].base ^ c;
    return records_[t].check == s ? t : kNoState;
  }

  const std::vector<PackedBasicRecord>& records() const noexcept { return records_; }
  std::vector<PackedBasicRecord>& records() noexcept { return records_; }

 private:
  std::vector<PackedBasicRecord> records_;
};

class PackedCompactArray {
 public:
  static constexpr Layout kLayout = Layout::kPacked;
  static constexpr Format kFormat = Format::kCompact;
  static constexpr std::size_t kBytesPerState = sizeof(PackedCompactRecord);
  static constexpr std::uint32_t kBaseMask = 0x00FFFFFF;

  void resize(std::size_t n) {
    records_.resize(n, PackedCompactRecord{pack(kLeafBase, kVacantLabel), 0,
                                           kNoOutput});
  }
  std::size_t size() const noexcept { return records_.size(); }

  std::uint32_t base(std::size_t i) const noexcept {
    return records_[i].base_check & kBaseMask;
  }
  std::uint32_t check(std::size_t i) const noexcept {
    return records_[i].base_check >> 24;
  }
  std::uint32_t fail(std::size_t i) const noexcept { return records_[i].fail; }
  std::uint32_t outpos(std::size_t i) const noexcept { return records_[i].outpos; }
  void set_base(std::size_t i, std::uint32_t v) noexcept {
    records_[i].base_check = pack(v, check(i));
  }
  void set_check(std::size_t i, std::uint32_t v) noexcept {
    records_[i].base_check = pack(base(i), v);
  }
  void set_fail(std::size_t i, std::uint32_t v) noexcept { records_[i].fail = v; }
  void set_outpos(std::size_t i, std::uint32_t v) noexcept { records_[i].outpos = v; }

  bool is_state(std::size_t i) const noexcept {
    return i == 0 || check(i) != kVacantLabel;
  }

  StateId transition(StateId s, CodeUnit c) const noexcept {
    const StateId t = (records_[s].base_check & kBaseMask) ^ c;
    return (records_[t].base_check >> 24) == c ? t : kNoState;
  }

  const std::vector<PackedCompactRecord>& records() const noexcept { return records_; }
  std::vector<PackedCompactRecord>& records() noexcept { return records_; }

 private:
  static std::uint32_t pack(std::uint32_t base, std::uint32_t check) noexcept {
    return (base & kBaseMask) | (check << 24);
  }
  std::vector<PackedCompactRecord> records_;
};

class IndividualBasicArray {
 public:
  static constexpr Layout kLayout = Layout::kIndividual;
  static constexpr Format kFormat = Format::kBasic;
  static constexpr std::size_t kBytesPerState = 16;

  void resize(std::size_t n) {
    base_.resize(n, kLeafBase);
    check_.resize(n, kVacantParent);
    fail_.resize(n, 0);
    outpos_.resize(n, kNoOutput);
  }
  std::size_t size() const noexcept { return base_.size(); }

  std::uint32_t base(std::size_t i) const noexcept { return base_[i]; }
  std::uint32_t check(std::size_t i) const noexcept { return check_[i]; }
  std::uint32_t fail(std::size_t i) const noexcept { return fail_[i]; }
  std::uint32_t outpos(std::size_t i) const noexcept { return outpos_[i]; }
  void set_base(std::size_t i, std::uint32_t v) noexcept { base_[i] = v; }
  void set_check(std::size_t i, std::uint32_t v) noexcept { check_[i] = v; }
  void set_fail(std::size_t i, std::uint32_t v) noexcept { fail_[i] = v; }
  void set_outpos(std::size_t i, std::uint32_t v) noexcept { outpos_[i] = v; }

  bool is_state(std::size_t i) const noexcept {
    return i == 0 || check_[i] != kVacantParent;
  }

  StateId transition(StateId s, CodeUnit c) const noexcept {
    const StateId t = base_[s] ^ c;
    return check_[t] == s ? t : kNoState;
  }

 private:
  std::vector<std::uint32_t> base_, check_, fail_, outpos_;
};

class IndividualCompactArray {
 public:
  static constexpr Layout kLayout = Layout::kIndividual;
  static constexpr Format kFormat = Format::kCompact;
  static constexpr std::size_t kBytesPerState = 13;

  void resize(std::size_t n) {
    base_.resize(n, kLeafBase);
    check_.resize(n, kVacantLabel);
    fail_.resize(n, 0);
    outpos_.resize(n, kNoOutput);
  }
  std::size_t size() const noexcept { return base_.size(); }

  std::uint32_t base(std::size_t i) const noexcept { return base_[i]; }
  std::uint32_t check(std::size_t i) const noexcept { return check_[i]; }
  std::uint32_t fail(std::size_t i) const noexcept { return fail_[i]; }
  std::uint32_t outpos(std::size_t i) const noexcept { return outpos_[i]; }
  void set_base(std::size_t i, std::uint32_t v) noexcept { base_[i] = v; }
  void set_check(std::size_t i, std::uint32_t v) noexcept {
    check_[i] = static_cast<std::uint8_t>(v);
  }
  void set_fail(std::size_t i, std::uint32_t v) noexcept { fail_[i] = v; }
  void set_outpos(std::size_t i, std::uint32_t v) noexcept { outpos_[i] = v; }

  bool is_state(std::size_t i) const noexcept {
    return i == 0 || check_[i] != kVacantLabel;
  }

  StateId transition(StateId s, CodeUnit c) const noexcept {
    const StateId t = base_[s] ^ c;
    return check_[t] == c ? t : kNoState;
  }

 private:
  std::vector<std::uint32_t> base_;
  std::vector<std::uint8_t> check_;
  std::vector<std::uint32_t> fail_, outpos_;
};

using StateArray = std::variant<IndividualBasicArray, IndividualCompactArray,
                                PackedBasicArray, PackedCompactArray>;

StateArray make_state_array(Layout layout, Format format);

// Counters recorded while the array was built; stored in archives so that
// every reported statistic can be recomputed from a saved automaton.
struct SearchCounters {
  std::uint64_t vacant_searches = 0;
  std::uint64_t verifications = 0;

  friend bool operator==(const SearchCounters&, const SearchCounters&) = default;
};

// A built double-array Aho-Corasick automaton. Immutable; any number of
// threads may match against one instance.
//
// For every real transition s --c--> t:  BASE[s] ^ c == t, and CHECK[t] is s
// (Basic) or c (Compact). Ids are grouped in blocks of block_size() and all
// targets of a state share its BASE's block.
class DoubleArrayAutomaton {
 public:
  DoubleArrayAutomaton() = default;
  DoubleArrayAutomaton(TextEncoder encoder, std::uint32_t alphabet_size,
                       StateArray states, OutputStore outputs,
                       SearchCounters counters);

  Scheme scheme() const noexcept { return encoder_.scheme(); }
  Layout layout() const noexcept;
  Format format() const noexcept;
  StoreKind store_kind() const noexcept { return outputs_.kind(); }

  const TextEncoder& encoder() const noexcept { return encoder_; }
  const MappingTable& mapping() const noexcept { return encoder_.mapping(); }
  const StateArray& states() const noexcept { return states_; }
  const OutputStore& outputs() const noexcept { return outputs_; }
  const SearchCounters& counters() const noexcept { return counters_; }

  std::uint32_t alphabet_size() const noexcept { return alphabet_size_; }
  std::uint32_t block_size() const noexcept { return block_size_; }
  std::size_t num_patterns() const noexcept;

  // |S_BC|, vacant ids included.
  std::size_t num_ids() const noexcept;
  // |S|, the ids holding real states.
  std::size_t num_states() const noexcept;

  // Bytes of BASE, CHECK, FAIL and OUTPOS together.
  std::size_t array_bytes() const noexcept;

 private:
  TextEncoder encoder_;
  std::uint32_t alphabet_size_ = 0;
  std::uint32_t block_size_ = 1;
  StateArray states_;
  OutputStore outputs_;
  SearchCounters counters_;
};

// Calls f(array) with the concrete state array type.
template <class F>
decltype(auto) visit_states(const DoubleArrayAutomaton& da, F&& f) {
  return std::visit(std::forward<F>(f), da.states());
}

}  // namespace daac
