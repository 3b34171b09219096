#include <random>

#include "doctest.h"
#include "daac/builder.hpp"
#include "daac/error.hpp"
#include "daac/matcher.hpp"
#include "testing.hpp"

using namespace daac;

TEST_CASE("sample occurrences under every configuration and store") {
  Dictionary d(testing::kSample);
  const std::vector<Occurrence> expected = {{0, 0, 2}, {1, 1, 2}, {3, 1, 4}, {5, 4, 6}};
  for (StoreKind store : {StoreKind::kSimple, StoreKind::kShared, StoreKind::kForest})
    for (const BuildConfig& cfg : testing::all_configs(store)) {
      CAPTURE(cfg.describe());
      BuildResult r = build(d, cfg);
      MatchStats st;
      CHECK(testing::sorted(find_overlapping(r.automaton, "abacdd", &st)) == expected);
      CHECK(st.code_units == 6);
      CHECK(st.occurrences == 4);
      CHECK(find_overlapping(r.automaton, "").empty());
    }
}

TEST_CASE("next_state mirrors delta star through the id translation") {
  Dictionary d(testing::kSample);
  for (const BuildConfig& cfg : testing::all_configs()) {
    ACAutomaton ac = build_automaton(d, cfg.scheme);
    BuildResult r = build(ac, cfg);
    // Recover the id translation by replaying each state's path.
    std::vector<StateId> image(ac.num_states(), 0);
    for (StateId s = 0; s < ac.num_states(); ++s)
      for (const Transition& e : ac.trie.edges[s])
        image[e.target] = next_state(r.automaton, image[s], e.label);
    for (StateId s = 0; s < ac.num_states(); ++s)
      for (CodeUnit c = 0; c < ac.trie.alphabet_size + 2; ++c) {
        MatchStats a, b;
        CHECK(next_state(r.automaton, image[s], c, &a) == image[delta_star(ac, s, c, &b)]);
        CHECK(a == b);
      }
    // "ab" --a--> "ba". Under Mapped the trie ids differ from the drawing.
    auto state_of = [&](std::string_view word) {
      StateId s = 0;
      for (CodeUnit c : ac.trie.encoder.labels(word)) s = ac.trie.child(s, c);
      return s;
    };
    const CodeUnit a = ac.trie.encoder.labels("a")[0];
    CHECK(next_state(r.automaton, image[state_of("ab")], a) == image[state_of("ba")]);
  }
}

TEST_CASE("unmapped characters restart at the root without probing") {
  BuildConfig cfg;
  cfg.scheme = Scheme::kMapped;
  cfg.format = Format::kBasic;
  BuildResult r = build(Dictionary(testing::kSample), cfg);
  MatchStats st;
  auto occ = find_overlapping(r.automaton, "ab\xE4\xB8\x96" "b", &st);
  const std::vector<Occurrence> expected = {{0, 0, 2}, {1, 1, 2}, {1, 5, 6}};
  CHECK(testing::sorted(occ) == expected);
  CHECK(st.code_units == 4);
  CHECK(st.failure_hops == 0);
  CHECK(st.forward_transitions == 3);
}

TEST_CASE("occurrences carry byte offsets under every scheme") {
  Dictionary d({"\xE4\xB8\x96\xE7\x95\x8C", "\xE7\x95\x8C", "a"});
  const std::string text = "a\xE4\xB8\x96\xE7\x95\x8C" "a";
  const auto expected = testing::sorted(naive_find(d, text));
  for (Scheme scheme : {Scheme::kBytewise, Scheme::kCharwise, Scheme::kMapped}) {
    BuildConfig cfg;
    cfg.scheme = scheme;
    if (scheme != Scheme::kBytewise) cfg.format = Format::kBasic;
    BuildResult r = build(d, cfg);
    CHECK(testing::sorted(find_overlapping(r.automaton, text)) == expected);
  }
  BuildConfig cfg;
  cfg.scheme = Scheme::kCharwise;
  cfg.format = Format::kBasic;
  BuildResult r = build(d, cfg);
  CHECK_THROWS_AS(find_overlapping(r.automaton, "\xE4\xB8"), EncodingError);
}

TEST_CASE("bytewise makes more forward transitions than charwise on multibyte text") {
  std::mt19937_64 rng(41);
  const auto cjk = testing::code_point_range(0x4E00, 30);
  const auto ascii = testing::code_point_range('a', 4);
  for (int round = 0; round < 5; ++round) {
    for (bool multibyte : {true, false}) {
      const auto& alphabet = multibyte ? cjk : ascii;
      Dictionary d = testing::random_dictionary(rng, alphabet, 200, 4);
      const std::string text = testing::random_string(rng, alphabet, 500);
      BuildConfig bytes, chars;
      bytes.format = chars.format = Format::kBasic;
      chars.scheme = Scheme::kCharwise;
      MatchStats sb, sc;
      find_overlapping(build(d, bytes).automaton, text, &sb);
      find_overlapping(build(d, chars).automaton, text, &sc);
      if (multibyte) CHECK(sb.forward_transitions >= sc.forward_transitions);
      else CHECK(sb.forward_transitions == sc.forward_transitions);
      CHECK(sb.occurrences == sc.occurrences);
    }
  }
}

TEST_CASE("double array counters equal the instrumented nfa") {
  std::mt19937_64 rng(43);
  const auto latin = testing::code_point_range('a', 3);
  for (int round = 0; round < 20; ++round) {
    Dictionary d = testing::random_dictionary(rng, latin, 60, 6);
    BuildConfig cfg;
    cfg.format = Format::kBasic;
    ACAutomaton ac = build_automaton(d, cfg.scheme);
    BuildResult r = build(ac, cfg);
    const std::string text = testing::random_string(rng, latin, 300);
    MatchStats a, b;
    auto x = find_overlapping(r.automaton, text, &a);
    auto y = find_overlapping_nfa(ac, text, &b);
    CHECK(a == b);
    CHECK(testing::sorted(x) == testing::sorted(y));
    CHECK(a.visited_states() <= 2 * a.code_units);
  }
}
