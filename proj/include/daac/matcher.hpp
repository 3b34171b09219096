#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "daac/double_array.hpp"
#include "daac/match_stats.hpp"

namespace daac {

namespace detail {

// delta*(s, c): probe BASE/CHECK, fall back along FAIL, stop at the root.
template <class Array>
inline StateId next_state(const Array& arr, std::uint32_t alphabet_size,
                          StateId s, CodeUnit c, MatchStats& stats) noexcept {
  // Labels no pattern uses (including unmapped characters) cannot match
  // anywhere.
  if (c >= alphabet_size) return 0;
  for (;;) {
    const StateId t = arr.transition(s, c);
    if (t != kNoState) {
      ++stats.forward_transitions;
      return t;
    }
    if (s == 0) return 0;
    s = arr.fail(s);
    ++stats.failure_hops;
  }
}

template <class Array, class Store, class Sink>
MatchStats run(const DoubleArrayAutomaton& da, const Array& arr,
               const Store& store, std::string_view text, Sink& sink) {
  MatchStats stats;
  const std::uint32_t alphabet = da.alphabet_size();
  StateId s = 0;
  std::size_t end = 0;
  da.encoder().for_each(text, [&](CodeUnit c, std::uint8_t width) {
    s = next_state(arr, alphabet, s, c, stats);
    ++stats.code_units;
    end += width;
    const std::uint32_t pos = arr.outpos(s);
    if (pos == kNoOutput) return;
    store.for_each(pos, [&](PatternId k, std::uint32_t len) {
      ++stats.occurrences;
      sink(Occurrence{k, end - len, end});
    });
  });
  return stats;
}

}  // namespace detail

// One application of the extended transition function on the double array.
StateId next_state(const DoubleArrayAutomaton& da, StateId s, CodeUnit c,
                   MatchStats* stats = nullptr);

// Calls sink(const Occurrence&) for every occurrence in text, in order of
// end offset. Throws EncodingError on invalid UTF-8 under code-point schemes.
template <class Sink>
MatchStats for_each_match(const DoubleArrayAutomaton& da,
                          std::string_view text, Sink&& sink) {
  return std::visit(
      [&](const auto& arr) {
        return std::visit(
            [&](const auto& store) {
              return detail::run(da, arr, store, text, sink);
            },
            da.outputs().data());
      },
      da.states());
}

std::vector<Occurrence> find_overlapping(const DoubleArrayAutomaton& da,
                                         std::string_view text,
                                         MatchStats* stats = nullptr);

}  // namespace daac
