#include "daac/matcher.hpp"

namespace daac {

StateId next_state(const DoubleArrayAutomaton& da, StateId s, CodeUnit c,
                   MatchStats* stats) {
  MatchStats local;
  const StateId t = visit_states(da, [&](const auto& arr) {
    return detail::next_state(arr, da.alphabet_size(), s, c, local);
  });
  if (stats) *stats += local;
  return t;
}

std::vector<Occurrence> find_overlapping(const DoubleArrayAutomaton& da,
                                         std::string_view text,
                                         MatchStats* stats) {
  std::vector<Occurrence> out;
  MatchStats st =
      for_each_match(da, text, [&](const Occurrence& o) { out.push_back(o); });
  if (stats) *stats += st;
  return out;
}

}  // namespace daac
