#include "daac/nfa.hpp"

#include <algorithm>
#include <cstring>

namespace daac {

namespace {

StateId find_edge(const std::vector<Transition>& edges, CodeUnit c) noexcept {
  auto it = std::lower_bound(
      edges.begin(), edges.end(), c,
      [](const Transition& t, CodeUnit label) { return t.label < label; });
  return (it != edges.end() && it->label == c) ? it->target : kNoState;
}

}  // namespace

StateId Trie::child(StateId s, CodeUnit c) const noexcept {
  return find_edge(edges[s], c);
}

Trie build_trie(const Dictionary& dict, TextEncoder encoder) {
  // Insert into a scratch trie, then renumber breadth-first.
  std::vector<std::vector<Transition>> scratch(1);
  std::vector<PatternId> scratch_pattern(1, kNoPattern);
  CodeUnit max_label = 0;
  for (PatternId k = 0; k < dict.size(); ++k) {
    StateId s = 0;
    for (CodeUnit c : encoder.labels(dict.pattern(k))) {
      max_label = std::max(max_label, c);
      auto& es = scratch[s];
      auto it = std::lower_bound(
          es.begin(), es.end(), c,
          [](const Transition& t, CodeUnit label) { return t.label < label; });
      if (it != es.end() && it->label == c) {
        s = it->target;
        continue;
      }
      const auto next = static_cast<StateId>(scratch.size());
      es.insert(it, Transition{c, next});
      scratch.emplace_back();
      scratch_pattern.push_back(kNoPattern);
      s = next;
    }
    scratch_pattern[s] = k;
  }

  const std::size_t n = scratch.size();
  std::vector<StateId> order;
  order.reserve(n);
  std::vector<StateId> new_id(n);
  order.push_back(0);
  new_id[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Transition& t : scratch[order[i]]) {
      new_id[t.target] = static_cast<StateId>(order.size());
      order.push_back(t.target);
    }
  }

  Trie trie;
  trie.edges.resize(n);
  trie.own_pattern.resize(n);
  trie.depth.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const StateId old = order[i];
    trie.own_pattern[i] = scratch_pattern[old];
    auto& out = trie.edges[i];
    out.reserve(scratch[old].size());
    for (const Transition& t : scratch[old]) {
      out.push_back({t.label, new_id[t.target]});
      trie.depth[new_id[t.target]] = trie.depth[i] + 1;
    }
  }
  trie.pattern_bytes = dict.byte_lengths();
  trie.alphabet_size = dict.empty() ? 0 : max_label + 1;
  trie.encoder = std::move(encoder);
  return trie;
}

ACAutomaton build_failures(Trie trie) {
  ACAutomaton ac;
  const std::size_t n = trie.num_states();
  ac.fail.assign(n, 0);
  ac.outset.assign(n, {});
  // Ids are breadth-first, so iterating by id visits parents first.
  for (StateId s = 0; s < n; ++s) {
    if (s != 0 && trie.own_pattern[s] != kNoPattern) {
      auto& out = ac.outset[s];
      const auto& inherited = ac.outset[ac.fail[s]];
      out.reserve(inherited.size() + 1);
      out.push_back(trie.own_pattern[s]);
      out.insert(out.end(), inherited.begin(), inherited.end());
    } else if (s != 0) {
      ac.outset[s] = ac.outset[ac.fail[s]];
    }
    for (const Transition& t : trie.edges[s]) {
      StateId f = 0;
      if (s != 0) {
        StateId u = ac.fail[s];
        for (;;) {
          StateId v = find_edge(trie.edges[u], t.label);
          if (v != kNoState) {
            f = v;
            break;
          }
          if (u == 0) break;
          u = ac.fail[u];
        }
      }
      ac.fail[t.target] = f;
    }
  }
  ac.trie = std::move(trie);
  return ac;
}

ACAutomaton build_automaton(const Dictionary& dict, Scheme scheme) {
  MappingTable mapping;
  if (scheme == Scheme::kMapped) mapping = build_mapping(dict);
  return build_failures(build_trie(dict, TextEncoder(scheme, std::move(mapping))));
}

StateId delta_star(const ACAutomaton& ac, StateId s, CodeUnit c,
                   MatchStats* stats) {
  if (c >= ac.trie.alphabet_size) return 0;
  for (;;) {
    StateId t = find_edge(ac.trie.edges[s], c);
    if (t != kNoState) {
      if (stats) ++stats->forward_transitions;
      return t;
    }
    if (s == 0) return 0;
    s = ac.fail[s];
    if (stats) ++stats->failure_hops;
  }
}

std::vector<Occurrence> find_overlapping_nfa(const ACAutomaton& ac,
                                             std::string_view text,
                                             MatchStats* stats) {
  std::vector<Occurrence> out;
  StateId s = 0;
  std::size_t end = 0;
  MatchStats local;
  ac.trie.encoder.for_each(text, [&](CodeUnit c, std::uint8_t width) {
    s = delta_star(ac, s, c, &local);
    ++local.code_units;
    end += width;
    for (PatternId k : ac.outset[s])
      out.push_back({k, end - ac.trie.pattern_bytes[k], end});
  });
  local.occurrences = out.size();
  if (stats) *stats += local;
  return out;
}

std::vector<Occurrence> naive_find(const Dictionary& dict,
                                   std::string_view text) {
  std::vector<Occurrence> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    for (PatternId k = 0; k < dict.size(); ++k) {
      const std::string& p = dict.pattern(k);
      if (p.size() <= text.size() - i &&
          std::memcmp(text.data() + i, p.data(), p.size()) == 0)
        out.push_back({k, i, i + p.size()});
    }
  }
  return out;
}

}  // namespace daac
