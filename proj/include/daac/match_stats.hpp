#pragma once

#include <cstdint>

namespace daac {

// Counters for one search. "Visited states" in benchmark tables is
// forward_transitions + failure_hops.
struct MatchStats {
  std::uint64_t forward_transitions = 0;
  std::uint64_t failure_hops = 0;
  std::uint64_t code_units = 0;
  std::uint64_t occurrences = 0;

  std::uint64_t visited_states() const noexcept {
    return forward_transitions + failure_hops;
  }

  MatchStats& operator+=(const MatchStats& o) noexcept {
    forward_transitions += o.forward_transitions;
    failure_hops += o.failure_hops;
    code_units += o.code_units;
    occurrences += o.occurrences;
    return *this;
  }

  friend bool operator==(const MatchStats&, const MatchStats&) = default;
};

}  // namespace daac
