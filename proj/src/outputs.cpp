#include "daac/outputs.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "daac/error.hpp"

namespace daac {

namespace {

// For every state, the nearest output state in its failure closure
// (itself included), or kNoState.
std::vector<StateId> nearest_outputs(const ACAutomaton& ac) {
  const std::size_t n = ac.num_states();
  std::vector<StateId> nearest(n, kNoState);
  for (StateId s = 1; s < n; ++s) {
    nearest[s] = ac.trie.own_pattern[s] != kNoPattern ? s : nearest[ac.fail[s]];
  }
  return nearest;
}

TermStore empty_term_store(const ACAutomaton& ac) {
  TermStore store;
  store.pattern_bytes = ac.trie.pattern_bytes;
  return store;
}

void append_set(TermStore& store, const std::vector<PatternId>& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    store.output.push_back(set[i]);
    store.term.push_back(i + 1 == set.size());
  }
}

void inherit_positions(const std::vector<StateId>& nearest,
                       std::vector<std::uint32_t>& outpos) {
  for (std::size_t s = 0; s < nearest.size(); ++s)
    if (nearest[s] != kNoState) outpos[s] = outpos[nearest[s]];
}

}  // namespace

std::string_view to_string(StoreKind k) noexcept {
  switch (k) {
    case StoreKind::kSimple: return "simple";
    case StoreKind::kShared: return "shared";
    case StoreKind::kForest: return "forest";
  }
  return "?";
}

StoreKind parse_store(std::string_view name) {
  if (name == "simple") return StoreKind::kSimple;
  if (name == "shared") return StoreKind::kShared;
  if (name == "forest") return StoreKind::kForest;
  throw ConfigError("unknown output store '" + std::string(name) + "'");
}

std::vector<PatternId> OutputStore::emit(std::uint32_t pos) const {
  std::vector<PatternId> out;
  if (pos == kNoOutput) return out;
  if (pos >= length())
    throw std::out_of_range("output position " + std::to_string(pos) +
                            " out of range");
  std::visit(
      [&](const auto& s) {
        s.for_each(pos, [&](PatternId k, std::uint32_t) { out.push_back(k); });
      },
      data_);
  return out;
}

BuiltOutputs build_simple(const ACAutomaton& ac) {
  const std::size_t n = ac.num_states();
  TermStore store = empty_term_store(ac);
  std::vector<std::uint32_t> outpos(n, kNoOutput);
  for (StateId s = 1; s < n; ++s) {
    if (ac.trie.own_pattern[s] == kNoPattern) continue;
    outpos[s] = static_cast<std::uint32_t>(store.output.size());
    append_set(store, ac.outset[s]);
  }
  inherit_positions(nearest_outputs(ac), outpos);
  return {OutputStore(StoreKind::kSimple, std::move(store)), std::move(outpos)};
}

BuiltOutputs build_shared(const ACAutomaton& ac) {
  const std::size_t n = ac.num_states();
  const auto nearest = nearest_outputs(ac);
  TermStore store = empty_term_store(ac);
  std::vector<std::uint32_t> outpos(n, kNoOutput);

  std::vector<StateId> outputs;
  for (StateId s = 1; s < n; ++s)
    if (ac.trie.own_pattern[s] != kNoPattern) outputs.push_back(s);
  // Largest sets first: a nested set is then always placed as the tail of a
  // set that contains it.
  std::stable_sort(outputs.begin(), outputs.end(), [&](StateId a, StateId b) {
    return ac.outset[a].size() > ac.outset[b].size();
  });

  for (StateId s : outputs) {
    if (outpos[s] != kNoOutput) continue;
    const auto base = static_cast<std::uint32_t>(store.output.size());
    append_set(store, ac.outset[s]);
    // outset[s] lists the own patterns of F(s) in chain order, so entry i
    // starts the set of the i-th output state on the chain.
    std::uint32_t i = 0;
    for (StateId o = s; o != kNoState && outpos[o] == kNoOutput;
         o = nearest[ac.fail[o]], ++i) {
      outpos[o] = base + i;
    }
  }
  inherit_positions(nearest, outpos);
  return {OutputStore(StoreKind::kShared, std::move(store)), std::move(outpos)};
}

BuiltOutputs build_forest(const ACAutomaton& ac) {
  const std::size_t n = ac.num_states();
  const auto nearest = nearest_outputs(ac);
  ForestStore forest;
  forest.nodes.reserve(ac.trie.num_patterns());
  std::vector<std::uint32_t> outpos(n, kNoOutput);
  const auto sentinel = static_cast<std::uint32_t>(ac.trie.num_patterns());
  for (StateId s = 1; s < n; ++s) {
    const PatternId k = ac.trie.own_pattern[s];
    if (k == kNoPattern) continue;
    outpos[s] = static_cast<std::uint32_t>(forest.nodes.size());
    // The parent has a smaller depth, hence a smaller id, hence a node
    // already.
    const StateId up = nearest[ac.fail[s]];
    forest.nodes.push_back(
        {k, ac.trie.pattern_bytes[k], up == kNoState ? sentinel : outpos[up]});
  }
  inherit_positions(nearest, outpos);
  return {OutputStore(std::move(forest)), std::move(outpos)};
}

BuiltOutputs build_outputs(const ACAutomaton& ac, StoreKind kind) {
  switch (kind) {
    case StoreKind::kSimple: return build_simple(ac);
    case StoreKind::kShared: return build_shared(ac);
    case StoreKind::kForest: return build_forest(ac);
  }
  throw ConfigError("unknown output store");
}

}  // namespace daac
