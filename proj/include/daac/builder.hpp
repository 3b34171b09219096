#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "daac/double_array.hpp"
#include "daac/nfa.hpp"

namespace daac {

enum class VacantStrategy : std::uint8_t {
  kChain = 0,        // every vacant id, in increasing order
  kSkipForward = 1,  // only the last L blocks
  kSkipDense = 2,    // only blocks whose vacant fraction is at least tau
};

enum class TraversalOrder : std::uint8_t {
  kLexBfs = 0,
  kFreqBfs = 1,
  kLexDfs = 2,
  kFreqDfs = 3,
};

std::string_view to_string(VacantStrategy v) noexcept;
std::string_view to_string(TraversalOrder o) noexcept;
VacantStrategy parse_vacant(std::string_view name);
TraversalOrder parse_order(std::string_view name);

inline bool is_dfs(TraversalOrder o) noexcept {
  return o == TraversalOrder::kLexDfs || o == TraversalOrder::kFreqDfs;
}
inline bool is_freq(TraversalOrder o) noexcept {
  return o == TraversalOrder::kFreqBfs || o == TraversalOrder::kFreqDfs;
}

// Technique selection. The defaults are the fastest Bytewise combination.
struct BuildConfig {
  Scheme scheme = Scheme::kBytewise;
  Layout layout = Layout::kPacked;
  Format format = Format::kCompact;
  StoreKind store = StoreKind::kForest;
  VacantStrategy vacant = VacantStrategy::kSkipForward;
  std::uint32_t skip_blocks = 16;  // L for SkipForward
  double dense_threshold = 0.1;    // tau for SkipDense
  TraversalOrder order = TraversalOrder::kLexDfs;

  // Throws ConfigError: Compact needs Bytewise, L >= 1, tau in [0, 1].
  void validate() const;
  std::string describe() const;
};

// Doubly linked list of vacant ids, kept in increasing order, plus per-block
// bookkeeping. The array only grows by whole blocks.
class VacantList {
 public:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  explicit VacantList(std::uint32_t block_size,
                      std::uint64_t max_ids = kMaxBasicIds);

  std::uint32_t block_size() const noexcept { return block_size_; }
  std::uint32_t size() const noexcept {
    return static_cast<std::uint32_t>(vacant_.size());
  }
  std::uint32_t num_blocks() const noexcept {
    return static_cast<std::uint32_t>(block_vacant_.size());
  }
  std::size_t num_vacant() const noexcept { return num_vacant_; }

  // Appends a fully vacant block. Throws CapacityError past max_ids.
  void add_block();
  // Marks a vacant id as used.
  void occupy(std::uint32_t id);

  bool is_vacant(std::uint32_t id) const noexcept {
    return id < vacant_.size() && vacant_[id];
  }
  std::uint32_t head() const noexcept { return head_; }
  std::uint32_t next(std::uint32_t id) const noexcept { return next_[id]; }
  std::uint32_t prev(std::uint32_t id) const noexcept { return prev_[id]; }
  // Smallest vacant id inside the block, or kNone.
  std::uint32_t block_head(std::uint32_t block) const noexcept {
    return block_head_[block];
  }
  std::uint32_t vacant_in_block(std::uint32_t block) const noexcept {
    return block_vacant_[block];
  }

  // Walks the links; for invariant checks.
  std::vector<std::uint32_t> to_vector() const;

 private:
  std::uint32_t block_size_;
  std::uint64_t max_ids_;
  std::vector<bool> vacant_;
  std::vector<std::uint32_t> next_, prev_;
  std::vector<std::uint32_t> block_head_, block_vacant_;
  std::uint32_t head_ = kNone, tail_ = kNone;
  std::size_t num_vacant_ = 0;
};

// Finds BASE values. Starts with one block whose id 0 (the root) is occupied;
// base value kLeafBase is never handed out.
class BaseFinder {
 public:
  // An alternative candidate enumeration used in place of the configured
  // strategy (tests plug in a brute-force scan here). Returns nullopt when
  // nothing in the current array fits; the finder then adds a block and asks
  // again.
  using SearchHook = std::function<std::optional<std::uint32_t>(
      const BaseFinder&, std::span<const CodeUnit>)>;

  BaseFinder(const BuildConfig& config, std::uint32_t block_size);

  void set_search_hook(SearchHook hook) { hook_ = std::move(hook); }

  // labels: non-empty, distinct, each below the block size, in scan order.
  // The first label drives candidate generation: each vacant q proposes
  // base q ^ labels[0]. Grows the array until a base exists.
  std::uint32_t find_base(std::span<const CodeUnit> labels);

  // Occupies base ^ c for each label and records base as used.
  void place(std::uint32_t base, std::span<const CodeUnit> labels);

  // True if every base ^ c is vacant and base is admissible (not the leaf
  // base; unused under Compact).
  bool admissible(std::uint32_t base, std::span<const CodeUnit> labels) const;

  bool base_used(std::uint32_t base) const noexcept {
    return base < used_base_.size() && used_base_[base];
  }
  const VacantList& vacant() const noexcept { return vacant_; }
  std::uint64_t searches() const noexcept { return searches_; }
  std::uint64_t verifications() const noexcept { return verifications_; }
  bool block_open(std::uint32_t block) const noexcept {
    return block < open_.size() && open_[block];
  }

 private:
  void grow();
  bool try_candidate(std::uint32_t q, std::span<const CodeUnit> labels,
                     std::uint32_t& found);
  std::optional<std::uint32_t> search(std::span<const CodeUnit> labels);
  void close_block(std::uint32_t block);

  BuildConfig config_;
  VacantList vacant_;
  std::vector<bool> used_base_;
  // SkipDense: open (sparse) blocks, linked in increasing order.
  std::vector<bool> open_;
  std::vector<std::uint32_t> open_next_, open_prev_;
  std::uint32_t open_head_ = VacantList::kNone, open_tail_ = VacantList::kNone;
  std::uint64_t searches_ = 0;
  std::uint64_t verifications_ = 0;
  SearchHook hook_;
};

struct BuildStats {
  std::size_t states = 0;            // |S|
  std::size_t ids = 0;               // |S_BC|
  std::size_t vacant_ids = 0;
  double vacant_proportion = 0;      // vacant_ids / ids
  std::uint64_t vacant_searches = 0;
  std::uint64_t verifications = 0;   // candidate bases tested
  double verifications_per_search = 0;
  double avg_out_transitions = 0;    // per internal state
  std::uint32_t alphabet_size = 0;
  std::uint32_t block_size = 0;
  std::size_t array_bytes = 0;       // BASE+CHECK+FAIL+OUTPOS
  std::size_t output_length = 0;     // entries in OUTPUT
  std::size_t output_bytes = 0;
  std::size_t mapping_bytes = 0;
  std::size_t total_bytes = 0;
  double build_ms = 0;               // not recomputable from an archive
};

// Everything except build_ms, derived from the automaton alone.
BuildStats compute_stats(const DoubleArrayAutomaton& da);

struct BuildResult {
  DoubleArrayAutomaton automaton;
  BuildStats stats;
};

struct BuildHooks {
  BaseFinder::SearchHook base_search;
};

// Lays out ac as a double array. ac must have been built with
// config.scheme. Throws ConfigError or CapacityError.
BuildResult build(const ACAutomaton& ac, const BuildConfig& config,
                  const BuildHooks& hooks = {});

// Dictionary in, automaton out.
BuildResult build(const Dictionary& dict, const BuildConfig& config);

}  // namespace daac
