#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "daac/builder.hpp"
#include "daac/error.hpp"
#include "daac/matcher.hpp"
#include "daac/serialize.hpp"
#include "daac/utf8.hpp"

namespace daac::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_stats(std::ostream& out, const BuildConfig* cfg, const BuildStats& st,
                 bool with_time) {
  if (cfg) out << "config\t" << cfg->describe() << '\n';
  out << "states\t" << st.states << '\n'
      << "ids\t" << st.ids << '\n'
      << "vacant_ids\t" << st.vacant_ids << '\n'
      << "vacant_proportion\t" << st.vacant_proportion << '\n'
      << "vacant_searches\t" << st.vacant_searches << '\n'
      << "verifications\t" << st.verifications << '\n'
      << "verifications_per_search\t" << st.verifications_per_search << '\n'
      << "avg_out_transitions\t" << st.avg_out_transitions << '\n'
      << "alphabet_size\t" << st.alphabet_size << '\n'
      << "block_size\t" << st.block_size << '\n'
      << "array_bytes\t" << st.array_bytes << '\n'
      << "output_length\t" << st.output_length << '\n'
      << "output_bytes\t" << st.output_bytes << '\n'
      << "mapping_bytes\t" << st.mapping_bytes << '\n'
      << "total_bytes\t" << st.total_bytes << '\n';
  if (with_time) out << "build_ms\t" << st.build_ms << '\n';
}

void print_occurrences(std::ostream& out, const std::vector<Occurrence>& occs) {
  for (const Occurrence& o : occs)
    out << o.pattern_id << '\t' << o.start << '\t' << o.end << '\n';
}

void print_match_stats(std::ostream& out, const MatchStats& st) {
  out << "occurrences\t" << st.occurrences << '\n'
      << "code_units\t" << st.code_units << '\n'
      << "forward_transitions\t" << st.forward_transitions << '\n'
      << "failure_hops\t" << st.failure_hops << '\n'
      << "visited_states\t" << st.visited_states() << '\n';
}

// ---------------------------------------------------------------------------
// bench

struct Axes {
  std::string scheme, layout, format, vacant, order, store;
};

struct Cell {
  BuildConfig config;
  BuildStats stats;
  double match_ms = 0;
  MatchStats match;
  double basic_ratio = 0;
};

template <class T, class Parse>
std::vector<T> axis(const std::string& given, bool grid,
                    std::initializer_list<T> all, T fallback, Parse parse) {
  if (!given.empty()) {
    std::vector<T> out;
    for (const auto& name : split_commas(given)) out.push_back(parse(name));
    return out;
  }
  if (grid) return all;
  return {fallback};
}

std::vector<BuildConfig> expand(const Axes& a, bool grid, std::uint32_t L,
                                double tau) {
  const BuildConfig def;
  auto schemes = axis<Scheme>(a.scheme, grid,
                              {Scheme::kBytewise, Scheme::kCharwise, Scheme::kMapped},
                              def.scheme, parse_scheme);
  auto layouts = axis<Layout>(a.layout, grid, {Layout::kIndividual, Layout::kPacked},
                              def.layout, parse_layout);
  auto formats = axis<Format>(a.format, grid, {Format::kBasic, Format::kCompact},
                              def.format, parse_format);
  auto vacants = axis<VacantStrategy>(
      a.vacant, grid,
      {VacantStrategy::kChain, VacantStrategy::kSkipForward, VacantStrategy::kSkipDense},
      def.vacant, parse_vacant);
  auto orders = axis<TraversalOrder>(
      a.order, grid,
      {TraversalOrder::kLexBfs, TraversalOrder::kFreqBfs, TraversalOrder::kLexDfs,
       TraversalOrder::kFreqDfs},
      def.order, parse_order);
  auto stores = axis<StoreKind>(
      a.store, grid, {StoreKind::kSimple, StoreKind::kShared, StoreKind::kForest},
      def.store, parse_store);
  const bool explicit_compact =
      !a.format.empty() && a.format.find("compact") != std::string::npos;
  std::vector<BuildConfig> out;
  for (Scheme s : schemes)
    for (Layout l : layouts)
      for (Format f : formats)
        for (VacantStrategy v : vacants)
          for (TraversalOrder o : orders)
            for (StoreKind k : stores) {
              BuildConfig c;
              c.scheme = s;
              c.layout = l;
              c.format = f;
              c.vacant = v;
              c.order = o;
              c.store = k;
              c.skip_blocks = L;
              c.dense_threshold = tau;
              if (f == Format::kCompact && s != Scheme::kBytewise) {
                // A grid silently skips the invalid corner; an explicit
                // single request is an error.
                if (explicit_compact && schemes.size() == 1 && formats.size() == 1)
                  c.validate();
                continue;
              }
              c.validate();
              out.push_back(c);
            }
  return out;
}

Cell run_cell(const Dictionary& dict, const std::vector<std::string_view>& lines,
              const BuildConfig& cfg, int runs) {
  Cell cell;
  cell.config = cfg;
  BuildResult r = build(dict, cfg);
  cell.stats = r.stats;
  double total_ms = 0;
  for (int run = 0; run < runs; ++run) {
    MatchStats st;
    const auto t0 = Clock::now();
    for (std::string_view line : lines)
      st += for_each_match(r.automaton, line, [](const Occurrence&) {});
    total_ms += std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    cell.match = st;
  }
  cell.match_ms = total_ms / runs;
  return cell;
}

int cmd_bench(const std::string& dict_path, const std::string& corpus_path,
              int runs, bool grid, const Axes& axes, std::uint32_t L, double tau,
              unsigned threads, std::ostream& out) {
  const Dictionary dict = Dictionary::load(dict_path);
  const std::string corpus = read_file(corpus_path);
  const auto lines = split_lines(corpus);
  const auto configs = expand(axes, grid, L, tau);

  std::vector<Cell> cells(configs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < configs.size();) {
      try {
        cells[i] = run_cell(dict, lines, configs[i], runs);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, configs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // Array bytes relative to the Packed+Basic build with the same scheme,
  // strategy and order.
  std::map<std::string, std::size_t> basic_bytes;
  auto key = [](const BuildConfig& c) {
    return std::string(to_string(c.scheme)) + '/' + std::string(to_string(c.vacant)) +
           '/' + std::string(to_string(c.order));
  };
  for (const Cell& c : cells)
    if (c.config.format == Format::kBasic && c.config.layout == Layout::kPacked)
      basic_bytes.emplace(key(c.config), c.stats.array_bytes);
  for (Cell& c : cells) {
    auto it = basic_bytes.find(key(c.config));
    if (it == basic_bytes.end()) {
      BuildConfig b = c.config;
      b.format = Format::kBasic;
      b.layout = Layout::kPacked;
      it = basic_bytes.emplace(key(b), build(dict, b).stats.array_bytes).first;
    }
    c.basic_ratio = static_cast<double>(c.stats.array_bytes) / it->second;
  }

  out << "scheme\tlayout\tformat\tvacant\torder\tstore\tbuild_ms\tmatch_ms\tstates"
         "\tids\tvacant_proportion\tverifications_per_search\tarray_bytes"
         "\tarray_ratio_vs_basic\toutput_bytes\tmapping_bytes\ttotal_bytes"
         "\tvisited_states\tforward_transitions\tfailure_hops\toccurrences\n";
  out << std::setprecision(6);
  for (const Cell& c : cells) {
    const BuildConfig& k = c.config;
    out << to_string(k.scheme) << '\t' << to_string(k.layout) << '\t'
        << to_string(k.format) << '\t' << to_string(k.vacant) << '\t'
        << to_string(k.order) << '\t' << to_string(k.store) << '\t'
        << c.stats.build_ms << '\t' << c.match_ms << '\t' << c.stats.states << '\t'
        << c.stats.ids << '\t' << c.stats.vacant_proportion << '\t'
        << c.stats.verifications_per_search << '\t' << c.stats.array_bytes << '\t'
        << c.basic_ratio << '\t' << c.stats.output_bytes << '\t'
        << c.stats.mapping_bytes << '\t' << c.stats.total_bytes << '\t'
        << c.match.visited_states() << '\t' << c.match.forward_transitions << '\t'
        << c.match.failure_hops << '\t' << c.match.occurrences << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// gen-corpus

std::uint64_t seed_from_env() {
  const char* s = std::getenv("DAAC_SEED");
  if (!s || !*s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError(std::string("DAAC_SEED is not an integer: ") + s);
  }
}

int cmd_gen_corpus(const std::string& dict_path, const std::string& corpus_path,
                   std::size_t patterns, std::size_t lines, std::size_t line_len,
                   const std::string& alphabet_name, std::size_t alphabet_size,
                   std::size_t max_len, std::ostream& out) {
  std::uint32_t first;
  if (alphabet_name == "ascii") {
    first = 'a';
    alphabet_size = std::min<std::size_t>(alphabet_size, 26);
  } else if (alphabet_name == "cjk") {
    first = 0x4E00;
  } else {
    throw ConfigError("unknown alphabet '" + alphabet_name + "' (ascii, cjk)");
  }
  if (alphabet_size == 0 || max_len == 0) throw ConfigError("empty alphabet or length");
  std::mt19937_64 rng(seed_from_env());
  std::vector<double> weights(alphabet_size);
  for (std::size_t r = 0; r < alphabet_size; ++r) weights[r] = 1.0 / double(r + 1);
  std::discrete_distribution<std::size_t> zipf(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  auto random_word = [&](std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) utf8::append(s, first + std::uint32_t(zipf(rng)));
    return s;
  };

  std::set<std::string> seen;
  std::ofstream d(dict_path, std::ios::binary);
  if (!d) throw Error("cannot open " + dict_path);
  std::size_t written = 0;
  for (std::size_t tries = 0; written < patterns && tries < patterns * 50; ++tries) {
    std::string w = random_word(len(rng));
    if (!seen.insert(w).second) continue;
    d << w << '\n';
    ++written;
  }
  std::ofstream c(corpus_path, std::ios::binary);
  if (!c) throw Error("cannot open " + corpus_path);
  for (std::size_t i = 0; i < lines; ++i) c << random_word(line_len) << '\n';
  out << "patterns\t" << written << '\n' << "lines\t" << lines << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double-array Aho-Corasick automata"};
  app.require_subcommand(1);

  // build
  std::string dict_path, out_path, archive_path, text_path, corpus_path;
  std::string scheme = "bytewise", layout = "packed", format = "compact",
              vacant = "skip-forward", order = "lex-dfs", store = "forest";
  std::uint32_t L = 16;
  double tau = 0.1;
  auto* b = app.add_subcommand("build", "Build an automaton and write an archive");
  b->add_option("--dict", dict_path, "Dictionary file, one pattern per line")->required();
  b->add_option("--out", out_path, "Archive to write")->required();
  b->add_option("--scheme", scheme, "bytewise, charwise or mapped");
  b->add_option("--layout", layout, "individual or packed");
  b->add_option("--format", format, "basic or compact");
  b->add_option("--vacant", vacant, "chain, skip-forward or skip-dense");
  b->add_option("--L", L, "Blocks searched by skip-forward");
  b->add_option("--tau", tau, "Vacancy threshold for skip-dense");
  b->add_option("--order", order, "lex-bfs, freq-bfs, lex-dfs or freq-dfs");
  b->add_option("--store", store, "simple, shared or forest");

  bool count_only = false;
  auto* m = app.add_subcommand("match", "Report occurrences using an archive");
  m->add_option("--archive", archive_path)->required();
  m->add_option("--text", text_path, "Text file searched as one string")->required();
  m->add_flag("--count", count_only, "Print totals and match counters only");

  auto* n = app.add_subcommand("naive", "Brute-force oracle matcher");
  n->add_option("--dict", dict_path)->required();
  n->add_option("--text", text_path)->required();

  auto* s = app.add_subcommand("stats", "Recompute build statistics from an archive");
  s->add_option("--archive", archive_path)->required();

  int runs = 10;
  bool grid = false;
  unsigned threads = 1;
  Axes axes;
  auto* be = app.add_subcommand("bench", "Build and time configurations over a corpus");
  be->add_option("--dict", dict_path)->required();
  be->add_option("--corpus", corpus_path, "One search text per line")->required();
  be->add_option("--runs", runs, "Timed matching runs per configuration")
      ->check(CLI::PositiveNumber);
  be->add_flag("--grid", grid, "Cross every axis not given explicitly");
  be->add_option("--scheme", axes.scheme, "Comma-separated list");
  be->add_option("--layout", axes.layout, "Comma-separated list");
  be->add_option("--format", axes.format, "Comma-separated list");
  be->add_option("--vacant", axes.vacant, "Comma-separated list");
  be->add_option("--order", axes.order, "Comma-separated list");
  be->add_option("--store", axes.store, "Comma-separated list");
  be->add_option("--L", L);
  be->add_option("--tau", tau);
  be->add_option("--threads", threads, "Grid cells built in parallel")
      ->check(CLI::PositiveNumber);

  std::size_t patterns = 1000, lines = 1000, line_len = 40, alphabet_size = 26,
              max_len = 6;
  std::string alphabet = "ascii";
  auto* g = app.add_subcommand("gen-corpus",
                               "Write a random dictionary and corpus (seed: DAAC_SEED)");
  g->add_option("--dict", dict_path)->required();
  g->add_option("--corpus", corpus_path)->required();
  g->add_option("--patterns", patterns);
  g->add_option("--lines", lines);
  g->add_option("--line-length", line_len);
  g->add_option("--alphabet", alphabet, "ascii or cjk");
  g->add_option("--alphabet-size", alphabet_size);
  g->add_option("--max-length", max_len);

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*b) {
      BuildConfig cfg;
      cfg.scheme = parse_scheme(scheme);
      cfg.layout = parse_layout(layout);
      cfg.format = parse_format(format);
      cfg.vacant = parse_vacant(vacant);
      cfg.order = parse_order(order);
      cfg.store = parse_store(store);
      cfg.skip_blocks = L;
      cfg.dense_threshold = tau;
      cfg.validate();
      BuildResult r = build(Dictionary::load(dict_path), cfg);
      const std::size_t bytes = save(r.automaton, std::filesystem::path(out_path));
      print_stats(out, &cfg, r.stats, true);
      out << "archive_bytes\t" << bytes << '\n';
    } else if (*m) {
      DoubleArrayAutomaton da = load(std::filesystem::path(archive_path));
      const std::string text = read_file(text_path);
      MatchStats st;
      if (count_only) {
        st = for_each_match(da, text, [](const Occurrence&) {});
        print_match_stats(out, st);
      } else {
        print_occurrences(out, find_overlapping(da, text, &st));
      }
    } else if (*n) {
      auto occs = naive_find(Dictionary::load(dict_path), read_file(text_path));
      sort_occurrences(occs);
      print_occurrences(out, occs);
    } else if (*s) {
      DoubleArrayAutomaton da = load(std::filesystem::path(archive_path));
      out << "scheme\t" << to_string(da.scheme()) << '\n'
          << "layout\t" << to_string(da.layout()) << '\n'
          << "format\t" << to_string(da.format()) << '\n'
          << "store\t" << to_string(da.store_kind()) << '\n';
      print_stats(out, nullptr, compute_stats(da), false);
    } else if (*be) {
      return cmd_bench(dict_path, corpus_path, runs, grid, axes, L, tau, threads, out);
    } else if (*g) {
      return cmd_gen_corpus(dict_path, corpus_path, patterns, lines, line_len, alphabet,
                            alphabet_size, max_len, out);
    }
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

}  // namespace daac::cli
