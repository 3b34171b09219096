#include "daac/builder.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <deque>
#include <sstream>

#include "daac/error.hpp"

namespace daac {

std::string_view to_string(VacantStrategy v) noexcept {
  switch (v) {
    case VacantStrategy::kChain: return "chain";
    case VacantStrategy::kSkipForward: return "skip-forward";
    case VacantStrategy::kSkipDense: return "skip-dense";
  }
  return "?";
}

std::string_view to_string(TraversalOrder o) noexcept {
  switch (o) {
    case TraversalOrder::kLexBfs: return "lex-bfs";
    case TraversalOrder::kFreqBfs: return "freq-bfs";
    case TraversalOrder::kLexDfs: return "lex-dfs";
    case TraversalOrder::kFreqDfs: return "freq-dfs";
  }
  return "?";
}

VacantStrategy parse_vacant(std::string_view name) {
  if (name == "chain") return VacantStrategy::kChain;
  if (name == "skip-forward") return VacantStrategy::kSkipForward;
  if (name == "skip-dense") return VacantStrategy::kSkipDense;
  throw ConfigError("unknown vacant strategy '" + std::string(name) + "'");
}

TraversalOrder parse_order(std::string_view name) {
  if (name == "lex-bfs") return TraversalOrder::kLexBfs;
  if (name == "freq-bfs") return TraversalOrder::kFreqBfs;
  if (name == "lex-dfs") return TraversalOrder::kLexDfs;
  if (name == "freq-dfs") return TraversalOrder::kFreqDfs;
  throw ConfigError("unknown traversal order '" + std::string(name) + "'");
}

void BuildConfig::validate() const {
  if (format == Format::kCompact && scheme != Scheme::kBytewise)
    throw ConfigError("compact format requires the bytewise scheme");
  if (vacant == VacantStrategy::kSkipForward && skip_blocks == 0)
    throw ConfigError("skip-forward needs L >= 1");
  if (!(dense_threshold >= 0.0 && dense_threshold <= 1.0))
    throw ConfigError("skip-dense threshold must lie in [0, 1]");
}

std::string BuildConfig::describe() const {
  std::ostringstream os;
  os << to_string(scheme) << '/' << to_string(layout) << '/'
     << to_string(format) << '/' << to_string(store) << '/' << to_string(vacant);
  if (vacant == VacantStrategy::kSkipForward) os << "(L=" << skip_blocks << ')';
  if (vacant == VacantStrategy::kSkipDense) os << "(tau=" << dense_threshold << ')';
  os << '/' << to_string(order);
  return os.str();
}

// ---------------------------------------------------------------------------
// VacantList

VacantList::VacantList(std::uint32_t block_size, std::uint64_t max_ids)
    : block_size_(block_size), max_ids_(max_ids) {}

void VacantList::add_block() {
  const std::uint64_t first = vacant_.size();
  if (first + block_size_ > max_ids_)
    throw CapacityError("double array exceeds " + std::to_string(max_ids_) +
                        " ids");
  const auto lo = static_cast<std::uint32_t>(first);
  const std::uint32_t hi = lo + block_size_;
  vacant_.resize(hi, true);
  next_.resize(hi);
  prev_.resize(hi);
  for (std::uint32_t i = lo; i < hi; ++i) {
    prev_[i] = i == lo ? tail_ : i - 1;
    next_[i] = i + 1 == hi ? kNone : i + 1;
  }
  if (tail_ == kNone) {
    head_ = lo;
  } else {
    next_[tail_] = lo;
  }
  tail_ = hi - 1;
  block_head_.push_back(lo);
  block_vacant_.push_back(block_size_);
  num_vacant_ += block_size_;
}

void VacantList::occupy(std::uint32_t id) {
  assert(is_vacant(id));
  const std::uint32_t p = prev_[id];
  const std::uint32_t n = next_[id];
  if (p == kNone) head_ = n; else next_[p] = n;
  if (n == kNone) tail_ = p; else prev_[n] = p;
  vacant_[id] = false;
  const std::uint32_t block = id / block_size_;
  if (block_head_[block] == id)
    block_head_[block] = (n != kNone && n / block_size_ == block) ? n : kNone;
  --block_vacant_[block];
  --num_vacant_;
}

std::vector<std::uint32_t> VacantList::to_vector() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = head_; q != kNone; q = next_[q]) out.push_back(q);
  return out;
}

// ---------------------------------------------------------------------------
// BaseFinder

BaseFinder::BaseFinder(const BuildConfig& config, std::uint32_t block_size)
    : config_(config),
      vacant_(block_size, config.format == Format::kCompact ? kMaxCompactIds
                                                            : kMaxBasicIds) {
  grow();
  vacant_.occupy(0);
  if (config_.vacant == VacantStrategy::kSkipDense &&
      static_cast<double>(vacant_.vacant_in_block(0)) <
          config_.dense_threshold * block_size)
    close_block(0);
}

void BaseFinder::grow() {
  vacant_.add_block();
  const std::uint32_t block = vacant_.num_blocks() - 1;
  if (config_.format == Format::kCompact) used_base_.resize(vacant_.size(), false);
  if (config_.vacant == VacantStrategy::kSkipDense) {
    open_.push_back(true);
    open_next_.push_back(VacantList::kNone);
    open_prev_.push_back(open_tail_);
    if (open_tail_ == VacantList::kNone) open_head_ = block;
    else open_next_[open_tail_] = block;
    open_tail_ = block;
  }
}

void BaseFinder::close_block(std::uint32_t block) {
  if (!open_[block]) return;
  open_[block] = false;
  const std::uint32_t p = open_prev_[block];
  const std::uint32_t n = open_next_[block];
  if (p == VacantList::kNone) open_head_ = n; else open_next_[p] = n;
  if (n == VacantList::kNone) open_tail_ = p; else open_prev_[n] = p;
}

bool BaseFinder::admissible(std::uint32_t base,
                            std::span<const CodeUnit> labels) const {
  if (base == kLeafBase) return false;
  if (config_.format == Format::kCompact && base_used(base)) return false;
  for (CodeUnit c : labels)
    if (!vacant_.is_vacant(base ^ c)) return false;
  return true;
}

bool BaseFinder::try_candidate(std::uint32_t q,
                               std::span<const CodeUnit> labels,
                               std::uint32_t& found) {
  const std::uint32_t base = q ^ labels[0];
  ++verifications_;
  if (!admissible(base, labels)) return false;
  found = base;
  return true;
}

std::optional<std::uint32_t> BaseFinder::search(
    std::span<const CodeUnit> labels) {
  std::uint32_t found = 0;
  switch (config_.vacant) {
    case VacantStrategy::kChain:
      for (std::uint32_t q = vacant_.head(); q != VacantList::kNone;
           q = vacant_.next(q))
        if (try_candidate(q, labels, found)) return found;
      break;
    case VacantStrategy::kSkipForward: {
      const std::uint32_t blocks = vacant_.num_blocks();
      std::uint32_t block =
          blocks > config_.skip_blocks ? blocks - config_.skip_blocks : 0;
      std::uint32_t q = VacantList::kNone;
      for (; block < blocks && q == VacantList::kNone; ++block)
        q = vacant_.block_head(block);
      // The list is sorted, so everything after q is in the window too.
      for (; q != VacantList::kNone; q = vacant_.next(q))
        if (try_candidate(q, labels, found)) return found;
      break;
    }
    case VacantStrategy::kSkipDense: {
      const std::uint32_t bs = vacant_.block_size();
      for (std::uint32_t block = open_head_; block != VacantList::kNone;
           block = open_next_[block]) {
        for (std::uint32_t q = vacant_.block_head(block);
             q != VacantList::kNone && q / bs == block; q = vacant_.next(q))
          if (try_candidate(q, labels, found)) return found;
      }
      break;
    }
  }
  return std::nullopt;
}

std::uint32_t BaseFinder::find_base(std::span<const CodeUnit> labels) {
  assert(!labels.empty());
  ++searches_;
  if (hook_) {
    for (;;) {
      if (auto base = hook_(*this, labels)) return *base;
      grow();
    }
  }
  if (auto base = search(labels)) return *base;
  // A fresh block accepts any label set at its first vacant id.
  for (;;) {
    grow();
    const std::uint32_t lo = vacant_.size() - vacant_.block_size();
    std::uint32_t found = 0;
    for (std::uint32_t q = lo; q != VacantList::kNone; q = vacant_.next(q))
      if (try_candidate(q, labels, found)) return found;
  }
}

void BaseFinder::place(std::uint32_t base, std::span<const CodeUnit> labels) {
  const std::uint32_t block = base / vacant_.block_size();
  for (CodeUnit c : labels) vacant_.occupy(base ^ c);
  if (config_.format == Format::kCompact) used_base_[base] = true;
  if (config_.vacant == VacantStrategy::kSkipDense &&
      static_cast<double>(vacant_.vacant_in_block(block)) <
          config_.dense_threshold * vacant_.block_size())
    close_block(block);
}

// ---------------------------------------------------------------------------
// build

namespace {

// Occurrences of each label over all patterns, recovered from the trie: an
// edge into t is traversed once per pattern in t's subtree.
std::vector<std::uint64_t> trie_label_counts(const Trie& trie) {
  const std::size_t n = trie.num_states();
  std::vector<std::uint64_t> below(n, 0);
  std::vector<std::uint64_t> freq(trie.alphabet_size, 0);
  for (std::size_t s = n; s-- > 0;) {
    below[s] += trie.own_pattern[s] != kNoPattern;
    for (const Transition& t : trie.edges[s]) {
      below[s] += below[t.target];
      freq[t.label] += below[t.target];
    }
  }
  return freq;
}

template <class Array>
void fill_states(Array& arr, std::size_t num_ids,
                 const std::vector<std::uint32_t>& base,
                 const std::vector<std::uint32_t>& check,
                 const std::vector<StateId>& origin,
                 const std::vector<StateId>& new_id, const ACAutomaton& ac,
                 const std::vector<std::uint32_t>& outpos) {
  arr.resize(num_ids);
  for (std::size_t i = 0; i < num_ids; ++i) {
    const StateId s = origin[i];
    if (s == kNoState) continue;
    arr.set_base(i, base[i]);
    if (i != 0) arr.set_check(i, check[i]);
    arr.set_fail(i, s == 0 ? 0 : new_id[ac.fail[s]]);
    arr.set_outpos(i, outpos[s]);
  }
}

}  // namespace

BuildResult build(const ACAutomaton& ac, const BuildConfig& config,
                  const BuildHooks& hooks) {
  config.validate();
  if (ac.trie.encoder.scheme() != config.scheme)
    throw ConfigError("automaton was built with scheme " +
                      std::string(to_string(ac.trie.encoder.scheme())) +
                      ", config asks for " +
                      std::string(to_string(config.scheme)));
  const auto start = std::chrono::steady_clock::now();

  const std::uint32_t alphabet = ac.trie.alphabet_size;
  if (config.format == Format::kCompact && alphabet > kVacantLabel)
    throw ConfigError("compact format needs labels below 0xFF");
  const std::uint32_t block = block_size_for(alphabet);

  std::vector<std::uint64_t> freq;
  if (is_freq(config.order)) freq = trie_label_counts(ac.trie);

  BaseFinder finder(config, block);
  if (hooks.base_search) finder.set_search_hook(hooks.base_search);

  const std::size_t n = ac.num_states();
  std::vector<StateId> new_id(n, kNoState);
  new_id[0] = 0;
  std::vector<std::uint32_t> da_base, da_check;
  std::vector<StateId> da_origin;
  auto ensure_size = [&](std::size_t size) {
    if (da_base.size() < size) {
      da_base.resize(size, kLeafBase);
      da_check.resize(size, 0);
      da_origin.resize(size, kNoState);
    }
  };
  ensure_size(finder.vacant().size());
  da_origin[0] = 0;

  std::deque<StateId> work{0};
  std::vector<Transition> edges;
  std::vector<CodeUnit> labels;
  const bool dfs = is_dfs(config.order);
  while (!work.empty()) {
    StateId s;
    if (dfs) {
      s = work.back();
      work.pop_back();
    } else {
      s = work.front();
      work.pop_front();
    }
    const StateId s_new = new_id[s];
    edges = ac.trie.edges[s];
    if (edges.empty()) continue;  // base stays kLeafBase
    if (!freq.empty()) {
      std::stable_sort(edges.begin(), edges.end(),
                       [&](const Transition& a, const Transition& b) {
                         return freq[a.label] > freq[b.label];
                       });
    }
    labels.clear();
    for (const Transition& t : edges) labels.push_back(t.label);

    const std::uint32_t base = finder.find_base(labels);
    finder.place(base, labels);
    ensure_size(finder.vacant().size());
    da_base[s_new] = base;
    for (const Transition& t : edges) {
      const StateId t_new = base ^ t.label;
      new_id[t.target] = t_new;
      da_origin[t_new] = t.target;
      da_check[t_new] = config.format == Format::kBasic ? s_new : t.label;
    }
    if (dfs) {
      for (auto it = edges.rbegin(); it != edges.rend(); ++it)
        work.push_back(it->target);
    } else {
      for (const Transition& t : edges) work.push_back(t.target);
    }
  }

  // Drop trailing blocks that hold no state.
  const VacantList& vl = finder.vacant();
  std::uint32_t blocks = vl.num_blocks();
  while (blocks > 1 && vl.vacant_in_block(blocks - 1) == block) --blocks;
  const std::size_t num_ids = std::size_t{blocks} * block;

  BuiltOutputs outputs = build_outputs(ac, config.store);
  StateArray states = make_state_array(config.layout, config.format);
  std::visit(
      [&](auto& arr) {
        fill_states(arr, num_ids, da_base, da_check, da_origin, new_id, ac,
                    outputs.outpos);
      },
      states);

  DoubleArrayAutomaton da(ac.trie.encoder, alphabet, std::move(states),
                          std::move(outputs.store),
                          SearchCounters{finder.searches(), finder.verifications()});
  BuildStats stats = compute_stats(da);
  stats.build_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return {std::move(da), stats};
}

BuildResult build(const Dictionary& dict, const BuildConfig& config) {
  config.validate();
  return build(build_automaton(dict, config.scheme), config);
}

BuildStats compute_stats(const DoubleArrayAutomaton& da) {
  BuildStats st;
  st.ids = da.num_ids();
  std::size_t internal = 0;
  visit_states(da, [&](const auto& arr) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr.is_state(i)) continue;
      ++st.states;
      internal += arr.base(i) != kLeafBase;
    }
  });
  st.vacant_ids = st.ids - st.states;
  st.vacant_proportion =
      st.ids == 0 ? 0.0 : static_cast<double>(st.vacant_ids) / st.ids;
  st.vacant_searches = da.counters().vacant_searches;
  st.verifications = da.counters().verifications;
  st.verifications_per_search =
      st.vacant_searches == 0
          ? 0.0
          : static_cast<double>(st.verifications) / st.vacant_searches;
  st.avg_out_transitions =
      internal == 0 ? 0.0 : static_cast<double>(st.states - 1) / internal;
  st.alphabet_size = da.alphabet_size();
  st.block_size = da.block_size();
  st.array_bytes = da.array_bytes();
  st.output_length = da.outputs().length();
  st.output_bytes = da.outputs().byte_size();
  st.mapping_bytes = da.mapping().byte_size();
  st.total_bytes = st.array_bytes + st.output_bytes + st.mapping_bytes;
  return st;
}

}  // namespace daac
