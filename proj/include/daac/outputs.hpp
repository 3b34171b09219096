#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "daac/nfa.hpp"

namespace daac {

// Encoding of the output function h.
enum class StoreKind : std::uint8_t {
  kSimple = 0,  // every output state's set written out in full
  kShared = 1,  // nested sets share the tail of a longer set
  kForest = 2,  // one node per pattern, sets recovered by climbing parents
};

std::string_view to_string(StoreKind k) noexcept;
StoreKind parse_store(std::string_view name);

// OUTPOS value of a state with an empty output set.
inline constexpr std::uint32_t kNoOutput = UINT32_MAX;

// OUTPUT/TERM arrays used by both Simple and Shared. h(s) is the run starting
// at OUTPOS[s] up to and including the first set TERM bit.
struct TermStore {
  std::vector<PatternId> output;
  std::vector<bool> term;
  std::vector<std::uint32_t> pattern_bytes;  // indexed by pattern id

  std::size_t length() const noexcept { return output.size(); }
  std::size_t byte_size() const noexcept {
    return output.size() * sizeof(PatternId) + (term.size() + 7) / 8 +
           pattern_bytes.size() * sizeof(std::uint32_t);
  }

  // f(pattern_id, pattern_byte_length)
  template <class F>
  void for_each(std::uint32_t pos, F&& f) const {
    for (std::size_t i = pos;; ++i) {
      const PatternId k = output[i];
      f(k, pattern_bytes[k]);
      if (term[i]) break;
    }
  }
};

struct ForestNode {
  PatternId pattern;
  std::uint32_t bytes;   // pattern length, so matches need no second lookup
  std::uint32_t parent;  // node index, or the node count for a root

  friend bool operator==(const ForestNode&, const ForestNode&) = default;
};

struct ForestStore {
  std::vector<ForestNode> nodes;

  std::uint32_t sentinel() const noexcept {
    return static_cast<std::uint32_t>(nodes.size());
  }
  std::size_t length() const noexcept { return nodes.size(); }
  std::size_t byte_size() const noexcept {
    return nodes.size() * sizeof(ForestNode);
  }

  template <class F>
  void for_each(std::uint32_t pos, F&& f) const {
    const std::uint32_t root = sentinel();
    for (std::uint32_t i = pos; i != root; i = nodes[i].parent)
      f(nodes[i].pattern, nodes[i].bytes);
  }
};

static_assert(sizeof(ForestNode) == 12);

class OutputStore {
 public:
  OutputStore() = default;
  OutputStore(StoreKind kind, TermStore store)
      : kind_(kind), data_(std::move(store)) {}
  explicit OutputStore(ForestStore store)
      : kind_(StoreKind::kForest), data_(std::move(store)) {}

  StoreKind kind() const noexcept { return kind_; }

  // Entries in OUTPUT: |D| for Forest, the total set length otherwise.
  std::size_t length() const noexcept {
    return std::visit([](const auto& s) { return s.length(); }, data_);
  }
  std::size_t byte_size() const noexcept {
    return std::visit([](const auto& s) { return s.byte_size(); }, data_);
  }

  // The pattern ids of the set starting at pos. kNoOutput yields an empty
  // list; any other position past the end throws std::out_of_range.
  std::vector<PatternId> emit(std::uint32_t pos) const;

  const TermStore* term_store() const noexcept {
    return std::get_if<TermStore>(&data_);
  }
  const ForestStore* forest() const noexcept {
    return std::get_if<ForestStore>(&data_);
  }
  const std::variant<TermStore, ForestStore>& data() const noexcept {
    return data_;
  }

 private:
  StoreKind kind_ = StoreKind::kSimple;
  std::variant<TermStore, ForestStore> data_;
};

// A store plus the OUTPOS value of every state of the source automaton
// (indexed by original state id).
struct BuiltOutputs {
  OutputStore store;
  std::vector<std::uint32_t> outpos;
};

BuiltOutputs build_simple(const ACAutomaton& ac);
BuiltOutputs build_shared(const ACAutomaton& ac);
BuiltOutputs build_forest(const ACAutomaton& ac);
BuiltOutputs build_outputs(const ACAutomaton& ac, StoreKind kind);

}  // namespace daac
