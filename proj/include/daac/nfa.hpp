#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "daac/codemap.hpp"
#include "daac/dictionary.hpp"
#include "daac/match_stats.hpp"

namespace daac {

using StateId = std::uint32_t;

inline constexpr StateId kNoState = UINT32_MAX;
inline constexpr PatternId kNoPattern = UINT32_MAX;

struct Transition {
  CodeUnit label;
  StateId target;
};

// Pattern trie. State 0 is the root and ids are assigned in breadth-first
// order with children visited by increasing label, so a parent always has a
// smaller id than its children.
struct Trie {
  TextEncoder encoder;
  std::vector<std::vector<Transition>> edges;  // sorted by label
  std::vector<PatternId> own_pattern;          // kNoPattern if not output
  std::vector<std::uint32_t> depth;            // in code units
  std::vector<std::uint32_t> pattern_bytes;    // byte length per pattern id
  std::uint32_t alphabet_size = 0;             // max label + 1

  std::size_t num_states() const noexcept { return edges.size(); }
  std::size_t num_patterns() const noexcept { return pattern_bytes.size(); }
  StateId child(StateId s, CodeUnit c) const noexcept;
};

// Trie plus failure function and output sets.
struct ACAutomaton {
  Trie trie;
  std::vector<StateId> fail;  // fail[0] == 0
  // h(s): own pattern first, then the outputs of fail[s] in chain order.
  std::vector<std::vector<PatternId>> outset;

  std::size_t num_states() const noexcept { return trie.num_states(); }
};

Trie build_trie(const Dictionary& dict, TextEncoder encoder);
ACAutomaton build_failures(Trie trie);

// Builds the trie for dict under scheme (deriving the mapping for Mapped) and
// computes failure links.
ACAutomaton build_automaton(const Dictionary& dict, Scheme scheme);

// Extended transition: follows failure links until a transition on c exists,
// returning 0 when the root has none. Labels outside the alphabet restart at
// the root without probing.
StateId delta_star(const ACAutomaton& ac, StateId s, CodeUnit c,
                   MatchStats* stats = nullptr);

// Reports every (possibly overlapping) occurrence, ordered by end offset.
// Throws EncodingError on invalid UTF-8 under code-point schemes.
std::vector<Occurrence> find_overlapping_nfa(const ACAutomaton& ac,
                                             std::string_view text,
                                             MatchStats* stats = nullptr);

// Brute force: compares every pattern at every byte offset.
std::vector<Occurrence> naive_find(const Dictionary& dict,
                                   std::string_view text);

}  // namespace daac
