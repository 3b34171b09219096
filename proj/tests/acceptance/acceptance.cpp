// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "daac/builder.hpp"
#include "daac/matcher.hpp"
#include "daac/serialize.hpp"
#include "testing.hpp"

using namespace daac;
using daac::testing::sorted;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
  bool pass = true;
  std::string detail;
};

// Every match run made anywhere in the suite feeds the visit-bound check.
struct VisitLedger {
  std::uint64_t runs = 0;
  std::uint64_t violations = 0;
  double worst_ratio = 0;  // visited states per code unit
} g_visits;

void record_visits(const MatchStats& st) {
  ++g_visits.runs;
  if (st.visited_states() > 2 * st.code_units) ++g_visits.violations;
  if (st.code_units != 0)
    g_visits.worst_ratio = std::max(
        g_visits.worst_ratio, double(st.visited_states()) / double(st.code_units));
}

std::vector<Occurrence> match(const DoubleArrayAutomaton& da, std::string_view text,
                              MatchStats* out = nullptr) {
  MatchStats st;
  auto occ = find_overlapping(da, text, &st);
  record_visits(st);
  if (out) *out += st;
  return occ;
}

std::vector<Occurrence> match_nfa(const ACAutomaton& ac, std::string_view text) {
  MatchStats st;
  auto occ = find_overlapping_nfa(ac, text, &st);
  record_visits(st);
  return occ;
}

// Text mixing whole patterns, pattern prefixes and random characters, so
// that large alphabets still produce matches.
std::string mixed_text(std::mt19937_64& rng, const Dictionary& d,
                       const std::vector<std::uint32_t>& alphabet, std::size_t pieces) {
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<std::size_t> pick(0, d.size() - 1);
  std::string text;
  for (std::size_t i = 0; i < pieces; ++i) {
    const int k = kind(rng);
    if (k < 3) {
      text += d.pattern(pick(rng));
    } else if (k < 5) {
      const std::string& p = d.pattern(pick(rng));
      std::size_t cut = std::uniform_int_distribution<std::size_t>(0, p.size())(rng);
      while (cut > 0 && (static_cast<unsigned char>(p[cut]) & 0xC0) == 0x80) --cut;
      text += p.substr(0, cut);
    } else {
      text += testing::random_string(rng, alphabet, 1);
    }
  }
  return text;
}

// Zipf-distributed characters drawn from a fixed set of code points.
struct ZipfChars {
  std::vector<std::uint32_t> cps;
  std::discrete_distribution<std::size_t> dist;

  ZipfChars(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi, std::size_t n) {
    std::set<std::uint32_t> chosen;
    std::uniform_int_distribution<std::uint32_t> cp(lo, hi);
    while (chosen.size() < n) chosen.insert(cp(rng));
    cps.assign(chosen.begin(), chosen.end());
    std::shuffle(cps.begin(), cps.end(), rng);  // rank order
    std::vector<double> w(n);
    for (std::size_t r = 0; r < n; ++r) w[r] = 1.0 / double(r + 1);
    dist = std::discrete_distribution<std::size_t>(w.begin(), w.end());
  }
  std::string word(std::mt19937_64& rng, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) utf8::append(s, cps[dist(rng)]);
    return s;
  }
  Dictionary dictionary(std::mt19937_64& rng, std::size_t n, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::set<std::string> seen;
    std::vector<std::string> words;
    while (words.size() < n) {
      std::string w = word(rng, len(rng));
      if (seen.insert(w).second) words.push_back(std::move(w));
    }
    return Dictionary(std::move(words));
  }
};

template <class F>
std::size_t count_block_violations(const DoubleArrayAutomaton& da, F&& on_state) {
  std::size_t bad = 0;
  const std::uint32_t A = da.alphabet_size(), B = da.block_size();
  visit_states(da, [&](const auto& arr) {
    for (std::size_t s = 0; s < arr.size(); ++s) {
      if (!arr.is_state(s)) continue;
      on_state();
      const std::uint32_t base = arr.base(s);
      for (std::uint32_t c = 0; c < A; ++c) bad += (base ^ c) / B != base / B;
    }
  });
  return bad;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------

Result golden_example() {
  const auto t0 = Clock::now();
  Dictionary d(testing::kSample);
  const std::vector<Occurrence> expected = {{0, 0, 2}, {1, 1, 2}, {3, 1, 4}, {5, 4, 6}};
  Result r;
  std::size_t configs = 0;
  for (const BuildConfig& cfg : testing::all_configs()) {
    ++configs;
    BuildResult b = build(d, cfg);
    if (sorted(match(b.automaton, "abacdd")) != expected) {
      r.pass = false;
      r.detail += " mismatch@" + cfg.describe();
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 1.0) r.pass = false;
  r.detail = std::to_string(configs) + " configs, " + fmt("%.3f s", secs) + r.detail;
  return r;
}

struct OracleRun {
  Result equivalence;
  Result blocks;
};

OracleRun oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const std::vector<std::uint32_t> small = {'a', 'b', 'c', 'd'};
  const auto large = testing::code_point_range(0x600, 3000);
  const auto all = testing::all_configs();
  std::vector<BuildConfig> subset;
  for (std::size_t i = 0; i < 12; ++i) {
    BuildConfig c = all[8 * i + (3 * i) % 8];
    c.store = static_cast<StoreKind>(i % 3);
    subset.push_back(c);
  }

  std::size_t mismatches = 0, comparisons = 0, occurrences = 0, states_checked = 0;
  std::size_t violations = 0, automata = 0;
  double block_secs = 0;
  for (int round = 0; round < 200; ++round) {
    const auto& alphabet = round % 2 ? large : small;
    Dictionary d = testing::random_dictionary(rng, alphabet, 500, 8);
    std::vector<std::string> texts;
    for (int t = 0; t < 20; ++t)
      texts.push_back(round % 2 ? mixed_text(rng, d, alphabet, 40)
                                : testing::random_string(rng, alphabet, 120));
    std::vector<std::vector<Occurrence>> naive;
    for (const auto& t : texts) naive.push_back(sorted(naive_find(d, t)));
    std::map<Scheme, ACAutomaton> acs;
    for (const BuildConfig& cfg : subset) {
      auto it = acs.find(cfg.scheme);
      if (it == acs.end()) {
        it = acs.emplace(cfg.scheme, build_automaton(d, cfg.scheme)).first;
        for (std::size_t t = 0; t < texts.size(); ++t) {
          ++comparisons;
          mismatches += sorted(match_nfa(it->second, texts[t])) != naive[t];
        }
      }
      BuildResult b = build(it->second, cfg);
      for (std::size_t t = 0; t < texts.size(); ++t) {
        auto got = sorted(match(b.automaton, texts[t]));
        ++comparisons;
        occurrences += got.size();
        mismatches += got != naive[t];
      }
      const auto t1 = Clock::now();
      ++automata;
      violations += count_block_violations(b.automaton, [&] { ++states_checked; });
      block_secs += seconds_since(t1);
    }
  }
  const double secs = seconds_since(t0) - block_secs;
  OracleRun out;
  out.equivalence.pass = mismatches == 0 && secs < 60.0;
  out.equivalence.detail = std::to_string(comparisons) + " comparisons, " +
                           std::to_string(mismatches) + " mismatches, " +
                           std::to_string(occurrences) + " occurrences, " +
                           fmt("%.1f s", secs);
  out.blocks.pass = violations == 0;
  out.blocks.detail = std::to_string(automata) + " automata, " +
                       std::to_string(states_checked) + " states x all labels, " +
                       std::to_string(violations) + " violations";
  return out;
}

Result failure_golden() {
  ACAutomaton ac = build_automaton(Dictionary(testing::kSample), Scheme::kBytewise);
  const std::vector<StateId> fail = {0, 0, 0, 0, 2, 1, 2, 3, 4, 0};
  Result r;
  r.pass = ac.num_states() == 10 && ac.fail == fail &&
           ac.outset[8] == std::vector<PatternId>{2, 0, 1} &&
           ac.outset[9] == std::vector<PatternId>{3};
  std::ostringstream os;
  os << "f =";
  for (StateId f : ac.fail) os << ' ' << f;
  os << "; h(8) = {";
  for (PatternId k : ac.outset[8]) os << char('A' + k);
  os << "}, h(9) = {";
  for (PatternId k : ac.outset[9]) os << char('A' + k);
  os << '}';
  r.detail = os.str();
  return r;
}

Result chain_equals_naive() {
  std::mt19937_64 rng(77);
  const auto latin = testing::code_point_range('a', 6);
  const auto wide = testing::code_point_range(0x600, 200);
  std::size_t builds = 0, differing = 0;
  for (int round = 0; round < 50; ++round) {
    Dictionary d = testing::random_dictionary(rng, round % 2 ? wide : latin, 300, 8);
    for (int variant = 0; variant < 3; ++variant) {
      BuildConfig cfg;
      cfg.vacant = VacantStrategy::kChain;
      cfg.format = variant == 0 ? Format::kCompact : Format::kBasic;
      cfg.scheme = variant == 2 ? Scheme::kMapped : Scheme::kBytewise;
      ACAutomaton ac = build_automaton(d, cfg.scheme);
      testing::NaiveScan naive(cfg.format == Format::kCompact);
      BuildResult a = build(ac, cfg);
      BuildResult b = build(ac, cfg, BuildHooks{naive.hook()});
      ++builds;
      bool same = a.automaton.num_ids() == b.automaton.num_ids();
      if (same) {
        visit_states(a.automaton, [&](const auto& x) {
          using A = std::decay_t<decltype(x)>;
          const auto& y = std::get<A>(b.automaton.states());
          for (std::size_t i = 0; i < x.size() && same; ++i)
            same = x.base(i) == y.base(i) && x.check(i) == y.check(i);
        });
      }
      differing += !same;
    }
  }
  return {differing == 0, std::to_string(builds) + " builds over 50 dictionaries, " +
                              std::to_string(differing) + " differ"};
}

Result compact_ratio() {
  std::mt19937_64 rng(99);
  ZipfChars cjk(rng, 0x4E00, 0x9FFF, 2000);
  std::vector<std::pair<std::string, Dictionary>> dicts;
  dicts.emplace_back("sample", Dictionary(testing::kSample));
  dicts.emplace_back("latin", testing::random_dictionary(
                                  rng, testing::code_point_range('a', 26), 5000, 10));
  dicts.emplace_back("cjk", cjk.dictionary(rng, 20000, 4));
  Result r;
  std::ostringstream os;
  for (auto& [name, d] : dicts) {
    for (VacantStrategy v : {VacantStrategy::kChain, VacantStrategy::kSkipForward,
                             VacantStrategy::kSkipDense}) {
      BuildConfig compact, basic;
      compact.vacant = basic.vacant = v;
      basic.format = Format::kBasic;
      ACAutomaton ac = build_automaton(d, Scheme::kBytewise);
      const auto c = build(ac, compact).stats;
      const auto b = build(ac, basic).stats;
      const bool ok = 4 * c.array_bytes == 3 * b.array_bytes;
      r.pass &= ok;
      os << ' ' << name << '/' << to_string(v) << '=' << double(c.array_bytes) / b.array_bytes;
      if (!ok) os << "(ids " << c.ids << " vs " << b.ids << ')';
    }
  }
  r.detail = "compact/basic:" + os.str();
  return r;
}

Result output_stores() {
  std::mt19937_64 rng(123);
  std::size_t dicts = 0, forest_bad = 0, shared_bad = 0, match_bad = 0;
  double ratio_sum = 0;
  for (int round = 0; round < 100; ++round) {
    const auto alphabet = testing::code_point_range('a', 3 + round % 4);
    Dictionary d = testing::random_dictionary(rng, alphabet, 500, 8);
    ACAutomaton ac = build_automaton(d, Scheme::kBytewise);
    std::size_t len[3];
    std::vector<std::vector<Occurrence>> results[3];
    std::vector<std::string> texts;
    for (int t = 0; t < 5; ++t) texts.push_back(testing::random_string(rng, alphabet, 200));
    for (int k = 0; k < 3; ++k) {
      BuildConfig cfg;
      cfg.store = static_cast<StoreKind>(k);
      BuildResult b = build(ac, cfg);
      len[k] = b.stats.output_length;
      for (const auto& t : texts) results[k].push_back(sorted(match(b.automaton, t)));
    }
    ++dicts;
    forest_bad += len[2] != d.size();
    shared_bad += len[1] > len[0];
    match_bad += results[0] != results[1] || results[1] != results[2];
    ratio_sum += double(len[1]) / len[0];
  }
  return {forest_bad + shared_bad + match_bad == 0,
          std::to_string(dicts) + " dictionaries; forest!=|D|: " +
              std::to_string(forest_bad) + ", shared>simple: " + std::to_string(shared_bad) +
              ", differing matches: " + std::to_string(match_bad) +
              fmt(", mean shared/simple %.3f", ratio_sum / dicts)};
}

Result scheme_trend() {
  std::mt19937_64 rng(2718);
  ZipfChars cjk(rng, 0x4E00, 0x9FFF, 3000);
  Dictionary d = cjk.dictionary(rng, 10000, 4);
  std::vector<std::string> texts;
  for (int i = 0; i < 300; ++i) {
    std::string line;
    for (int piece = 0; piece < 12; ++piece) {
      if (piece % 3 == 0) line += d.pattern(rng() % d.size());
      else line += cjk.word(rng, 2);
    }
    texts.push_back(std::move(line));
  }
  std::map<Scheme, MatchStats> stats;
  std::map<Scheme, double> vacancy;
  std::map<Scheme, std::size_t> occurrences;
  for (Scheme s : {Scheme::kBytewise, Scheme::kCharwise, Scheme::kMapped}) {
    BuildConfig cfg;
    cfg.scheme = s;
    cfg.format = Format::kBasic;
    cfg.layout = Layout::kPacked;
    cfg.vacant = VacantStrategy::kChain;
    cfg.order = TraversalOrder::kLexDfs;
    BuildResult b = build(d, cfg);
    vacancy[s] = b.stats.vacant_proportion;
    for (const auto& t : texts) occurrences[s] += match(b.automaton, t, &stats[s]).size();
  }
  const double ratio = double(stats[Scheme::kCharwise].forward_transitions) /
                       double(stats[Scheme::kBytewise].forward_transitions);
  const bool same = occurrences[Scheme::kBytewise] == occurrences[Scheme::kCharwise] &&
                    occurrences[Scheme::kCharwise] == occurrences[Scheme::kMapped];
  Result r;
  r.pass = ratio >= 0.30 && ratio <= 0.70 &&
           vacancy[Scheme::kMapped] < vacancy[Scheme::kCharwise] && same;
  r.detail = fmt("charwise/bytewise forward transitions %.3f", ratio) +
             fmt("; vacant proportion charwise %.3f", vacancy[Scheme::kCharwise]) +
             fmt(", mapped %.3f", vacancy[Scheme::kMapped]) +
             fmt(", bytewise %.3f", vacancy[Scheme::kBytewise]);
  return r;
}

Result serialization() {
  std::mt19937_64 rng(31337);
  const auto alphabet = testing::code_point_range(0x3B1, 8);
  Dictionary d = testing::random_dictionary(rng, alphabet, 2000, 6);
  std::size_t configs = 0, bad_match = 0, bad_bytes = 0;
  for (const BuildConfig& base : testing::all_configs()) {
    if (base.vacant != VacantStrategy::kSkipForward || base.order != TraversalOrder::kLexDfs)
      continue;
    for (StoreKind store : {StoreKind::kSimple, StoreKind::kShared, StoreKind::kForest}) {
      BuildConfig cfg = base;
      cfg.store = store;
      BuildResult b = build(d, cfg);
      std::stringstream first, second;
      save(b.automaton, first);
      save(b.automaton, second);
      bad_bytes += first.str() != second.str() ||
                   to_bytes(build(d, cfg).automaton) != first.str();
      DoubleArrayAutomaton back = load(first);
      std::mt19937_64 trng(configs);
      for (int t = 0; t < 100; ++t) {
        std::string text = mixed_text(trng, d, alphabet, 20);
        bad_match += match(back, text) != match(b.automaton, text);
      }
      ++configs;
    }
  }
  return {bad_match == 0 && bad_bytes == 0,
          std::to_string(configs) + " configs x 100 texts, " + std::to_string(bad_match) +
              " differing outputs, " + std::to_string(bad_bytes) + " nondeterministic saves"};
}

// Japanese-like words of up to six kana/kanji. Long words leave most
// internal states with a single child, so nearly every low BASE value gets
// used and the vacant ids left behind accept only labels that hardly occur.
Result vacant_acceleration() {
  std::mt19937_64 rng(4242);
  ZipfChars ja(rng, 0x3040, 0x9FFF, 3000);
  Dictionary d = ja.dictionary(rng, 200000, 6);
  ACAutomaton ac = build_automaton(d, Scheme::kBytewise);
  BuildConfig chain, skip, basic;
  chain.vacant = basic.vacant = VacantStrategy::kChain;
  basic.format = Format::kBasic;
  skip.vacant = VacantStrategy::kSkipForward;
  skip.skip_blocks = 16;
  const auto c = build(ac, chain).stats;
  const auto s = build(ac, skip).stats;
  const auto b = build(ac, basic).stats;
  const double ratio = s.verifications_per_search / c.verifications_per_search;
  return {ratio <= 0.1,
          std::to_string(d.size()) + " patterns, " + std::to_string(c.states) +
              " states; compact chain " + fmt("%.2f", c.verifications_per_search) +
              fmt(" (basic chain %.2f)", b.verifications_per_search) +
              fmt(", skip-forward(L=16) %.2f verifications/search", s.verifications_per_search) +
              fmt(", ratio %.4f", ratio) + fmt(", vacant proportion %.4f", c.vacant_proportion) +
              fmt(" vs %.4f", s.vacant_proportion)};
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  int failed = 0;
  auto report = [&](int id, const char* name, const Result& r) {
    std::printf("[%s] %2d %s: %s\n", r.pass ? "PASS" : "FAIL", id, name, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  };
  report(1, "golden example", golden_example());
  OracleRun oracle = oracle_equivalence();
  report(2, "oracle equivalence", oracle.equivalence);
  report(3, "failure function golden", failure_golden());
  report(4, "block invariant", oracle.blocks);
  report(5, "chain equals naive scan", chain_equals_naive());
  report(6, "compact memory ratio", compact_ratio());
  report(7, "output stores", output_stores());
  Result trend = scheme_trend();
  Result serial = serialization();
  Result accel = vacant_acceleration();
  const double total = seconds_since(t0);
  Result visits{g_visits.violations == 0,
                std::to_string(g_visits.runs) + " match runs, " +
                    std::to_string(g_visits.violations) + " over 2n" +
                    fmt(", worst visits per code unit %.3f", g_visits.worst_ratio)};
  report(8, "visit bound", visits);
  report(9, "scheme trend", trend);
  report(10, "serialization", serial);
  accel.pass &= total < 300.0;
  accel.detail += fmt("; suite %.1f s", total);
  report(11, "vacant search acceleration", accel);
  return failed;
}
