#include "daac/serialize.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "daac/error.hpp"

namespace daac {

namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void raw(const char* p, std::size_t n) { buf_.append(p, n); }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  void need(std::uint64_t n) const {
    if (n > remaining()) throw CorruptionError("archive is truncated");
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= std::uint32_t(static_cast<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= std::uint64_t(static_cast<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto v = bytes_.substr(pos_, n);
    pos_ += n;
    return v;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

struct Header {
  Scheme scheme;
  Layout layout;
  Format format;
  StoreKind store;
  std::uint64_t ids, alphabet, output_length, patterns, mapping_length,
      mapping_sigma, searches, verifications;
};

void write_states(Writer& w, const PackedBasicArray& a) {
  for (const auto& r : a.records()) {
    w.u32(r.base);
    w.u32(r.check);
    w.u32(r.fail);
    w.u32(r.outpos);
  }
}

void write_states(Writer& w, const PackedCompactArray& a) {
  for (const auto& r : a.records()) {
    w.u32(r.base_check);
    w.u32(r.fail);
    w.u32(r.outpos);
  }
}

template <class Array>
void write_individual(Writer& w, const Array& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) w.u32(a.base(i));
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (Array::kFormat == Format::kCompact) {
      w.u8(static_cast<std::uint8_t>(a.check(i)));
    } else {
      w.u32(a.check(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) w.u32(a.fail(i));
  for (std::size_t i = 0; i < n; ++i) w.u32(a.outpos(i));
}

void write_states(Writer& w, const IndividualBasicArray& a) { write_individual(w, a); }
void write_states(Writer& w, const IndividualCompactArray& a) { write_individual(w, a); }

void write_outputs(Writer& w, const TermStore& s) {
  for (PatternId k : s.output) w.u32(k);
  const std::size_t n = s.term.size();
  for (std::size_t i = 0; i < n; i += 8) {
    std::uint8_t byte = 0;
    for (std::size_t j = 0; j < 8 && i + j < n; ++j)
      if (s.term[i + j]) byte |= std::uint8_t(1u << j);
    w.u8(byte);
  }
  for (std::uint32_t b : s.pattern_bytes) w.u32(b);
}

void write_outputs(Writer& w, const ForestStore& s) {
  for (const ForestNode& node : s.nodes) {
    w.u32(node.pattern);
    w.u32(node.bytes);
    w.u32(node.parent);
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw CorruptionError("size overflow");
  return a * b;
}

template <class Array>
Array read_individual(Reader& r, std::size_t n) {
  Array a;
  a.resize(n);
  for (std::size_t i = 0; i < n; ++i) a.set_base(i, r.u32());
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (Array::kFormat == Format::kCompact) {
      a.set_check(i, r.u8());
    } else {
      a.set_check(i, r.u32());
    }
  }
  for (std::size_t i = 0; i < n; ++i) a.set_fail(i, r.u32());
  for (std::size_t i = 0; i < n; ++i) a.set_outpos(i, r.u32());
  return a;
}

StateArray read_states(Reader& r, const Header& h) {
  const std::size_t n = h.ids;
  if (h.layout == Layout::kPacked) {
    if (h.format == Format::kBasic) {
      r.need(checked_mul(n, 16));
      PackedBasicArray a;
      a.records().resize(n);
      for (auto& rec : a.records()) {
        rec.base = r.u32();
        rec.check = r.u32();
        rec.fail = r.u32();
        rec.outpos = r.u32();
      }
      return a;
    }
    r.need(checked_mul(n, 12));
    PackedCompactArray a;
    a.records().resize(n);
    for (auto& rec : a.records()) {
      rec.base_check = r.u32();
      rec.fail = r.u32();
      rec.outpos = r.u32();
    }
    return a;
  }
  if (h.format == Format::kBasic) {
    r.need(checked_mul(n, 16));
    return read_individual<IndividualBasicArray>(r, n);
  }
  r.need(checked_mul(n, 13));
  return read_individual<IndividualCompactArray>(r, n);
}

OutputStore read_outputs(Reader& r, const Header& h) {
  const std::size_t len = h.output_length;
  if (h.store == StoreKind::kForest) {
    if (len != h.patterns)
      throw CorruptionError("forest length differs from pattern count");
    r.need(checked_mul(len, 12));
    ForestStore f;
    f.nodes.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
      ForestNode& node = f.nodes[i];
      node.pattern = r.u32();
      node.bytes = r.u32();
      node.parent = r.u32();
      if (node.pattern >= h.patterns)
        throw CorruptionError("forest node with unknown pattern id");
      // Parents always precede children, which also rules out cycles.
      if (node.parent != len && node.parent >= i)
        throw CorruptionError("forest parent link out of order");
    }
    return OutputStore(std::move(f));
  }
  r.need(checked_mul(len, 4));
  TermStore s;
  s.output.resize(len);
  for (auto& k : s.output) {
    k = r.u32();
    if (k >= h.patterns) throw CorruptionError("output entry with unknown pattern id");
  }
  const std::string_view bits = r.raw((len + 7) / 8);
  s.term.resize(len);
  for (std::size_t i = 0; i < len; ++i)
    s.term[i] = (static_cast<std::uint8_t>(bits[i / 8]) >> (i % 8)) & 1u;
  if (len != 0 && !s.term[len - 1])
    throw CorruptionError("output store does not end with a terminal");
  r.need(checked_mul(h.patterns, 4));
  s.pattern_bytes.resize(h.patterns);
  for (auto& b : s.pattern_bytes) b = r.u32();
  return OutputStore(h.store, std::move(s));
}

// Structural checks that keep matching memory-safe and terminating, plus
// transition-equation spot checks on a sample of states.
template <class Array>
void validate_states(const Array& a, const Header& h, std::size_t output_len) {
  const std::size_t n = a.size();
  const std::uint32_t block = block_size_for(static_cast<std::uint32_t>(h.alphabet));
  std::vector<bool> base_seen;
  if constexpr (Array::kFormat == Format::kCompact) base_seen.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.outpos(i) != kNoOutput && a.outpos(i) >= output_len)
      throw CorruptionError("OUTPOS out of range at id " + std::to_string(i));
    if (!a.is_state(i)) continue;
    if (a.fail(i) >= n || (i != 0 && !a.is_state(a.fail(i))))
      throw CorruptionError("FAIL does not point at a state at id " +
                            std::to_string(i));
    const std::uint32_t base = a.base(i);
    if (base >= n)
      throw CorruptionError("BASE out of range at id " + std::to_string(i));
    if constexpr (Array::kFormat == Format::kCompact) {
      if (i != 0 && a.check(i) >= h.alphabet)
        throw CorruptionError("CHECK label out of range at id " + std::to_string(i));
      if (base != kLeafBase) {
        if (base_seen[base])
          throw CorruptionError("duplicate BASE value " + std::to_string(base));
        base_seen[base] = true;
      }
    } else {
      if (i != 0 && (a.check(i) >= n || !a.is_state(a.check(i))))
        throw CorruptionError("CHECK parent out of range at id " + std::to_string(i));
    }
  }
  // Failure chains must reach the root. Resolve them iteratively with
  // three-colour marking.
  std::vector<std::uint8_t> mark(n, 0);  // 0 new, 1 on path, 2 done
  mark[0] = 2;
  std::vector<std::uint32_t> path;
  for (std::size_t i = 1; i < n; ++i) {
    if (!a.is_state(i) || mark[i] == 2) continue;
    path.clear();
    std::uint32_t s = static_cast<std::uint32_t>(i);
    while (mark[s] == 0) {
      mark[s] = 1;
      path.push_back(s);
      s = a.fail(s);
    }
    if (mark[s] == 1) throw CorruptionError("cycle in failure links");
    for (std::uint32_t p : path) mark[p] = 2;
  }
  // Spot-check the transition equation on up to 1024 evenly spaced ids.
  const std::size_t stride = n > 1024 ? n / 1024 : 1;
  for (std::size_t t = 1; t < n; t += stride) {
    if (!a.is_state(t)) continue;
    if constexpr (Array::kFormat == Format::kBasic) {
      const std::uint32_t parent = a.check(t);
      const std::uint32_t label = a.base(parent) ^ static_cast<std::uint32_t>(t);
      if (a.base(parent) == kLeafBase || label >= h.alphabet ||
          a.transition(parent, label) != t)
        throw CorruptionError("transition equation violated at id " +
                              std::to_string(t));
    } else {
      const std::uint32_t base = static_cast<std::uint32_t>(t) ^ a.check(t);
      if (base / block != t / block || base == kLeafBase || !base_seen[base])
        throw CorruptionError("transition equation violated at id " +
                              std::to_string(t));
    }
  }
}

}  // namespace

std::string to_bytes(const DoubleArrayAutomaton& da) {
  Writer w;
  w.raw(kArchiveMagic, 4);
  w.u32(kArchiveVersion);
  w.u8(static_cast<std::uint8_t>(da.scheme()));
  w.u8(static_cast<std::uint8_t>(da.layout()));
  w.u8(static_cast<std::uint8_t>(da.format()));
  w.u8(static_cast<std::uint8_t>(da.store_kind()));
  w.u64(da.num_ids());
  w.u64(da.alphabet_size());
  w.u64(da.outputs().length());
  w.u64(da.num_patterns());
  w.u64(da.mapping().table().size());
  w.u64(da.mapping().sigma());
  w.u64(da.counters().vacant_searches);
  w.u64(da.counters().verifications);
  visit_states(da, [&](const auto& a) { write_states(w, a); });
  std::visit([&](const auto& s) { write_outputs(w, s); }, da.outputs().data());
  for (std::int32_t v : da.mapping().table()) w.u32(static_cast<std::uint32_t>(v));
  return w.take();
}

std::size_t save(const DoubleArrayAutomaton& da, std::ostream& out) {
  const std::string bytes = to_bytes(da);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed to write archive");
  return bytes.size();
}

std::size_t save(const DoubleArrayAutomaton& da,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  std::size_t n = save(da, out);
  out.flush();
  if (!out) throw Error("failed to write " + path.string());
  return n;
}

DoubleArrayAutomaton from_bytes(std::string_view bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kArchiveMagic, 4) != 0)
    throw FormatError("not a DAAC archive (bad magic)");
  Reader r(bytes);
  r.raw(4);
  const std::uint32_t version = r.u32();
  if (version != kArchiveVersion)
    throw FormatError("unsupported archive version " + std::to_string(version));

  Header h{};
  const std::uint8_t scheme = r.u8(), layout = r.u8(), format = r.u8(),
                     store = r.u8();
  if (scheme > 2 || layout > 1 || format > 1 || store > 2)
    throw FormatError("unknown configuration tag in archive header");
  h.scheme = static_cast<Scheme>(scheme);
  h.layout = static_cast<Layout>(layout);
  h.format = static_cast<Format>(format);
  h.store = static_cast<StoreKind>(store);
  if (h.format == Format::kCompact && h.scheme != Scheme::kBytewise)
    throw FormatError("compact archive with a non-bytewise scheme");
  h.ids = r.u64();
  h.alphabet = r.u64();
  h.output_length = r.u64();
  h.patterns = r.u64();
  h.mapping_length = r.u64();
  h.mapping_sigma = r.u64();
  h.searches = r.u64();
  h.verifications = r.u64();

  const std::uint64_t max_ids =
      h.format == Format::kCompact ? kMaxCompactIds : kMaxBasicIds;
  if (h.alphabet == 0 || h.alphabet > 0x110000)
    throw CorruptionError("alphabet size out of range");
  if (h.format == Format::kCompact && h.alphabet > kVacantLabel)
    throw CorruptionError("compact alphabet exceeds one byte");
  const std::uint32_t block = block_size_for(static_cast<std::uint32_t>(h.alphabet));
  if (h.ids == 0 || h.ids > max_ids || h.ids % block != 0)
    throw CorruptionError("state count is not a positive multiple of the block size");
  if (h.patterns == 0 || h.patterns >= UINT32_MAX || h.output_length >= UINT32_MAX)
    throw CorruptionError("pattern or output count out of range");
  if ((h.scheme == Scheme::kMapped) != (h.mapping_length != 0))
    throw CorruptionError("mapping table present iff the scheme is mapped");
  if (h.scheme == Scheme::kMapped &&
      (h.mapping_sigma != h.alphabet || h.mapping_length > 0x110000))
    throw CorruptionError("mapping table does not match the alphabet");

  StateArray states = read_states(r, h);
  OutputStore outputs = read_outputs(r, h);
  r.need(checked_mul(h.mapping_length, 4));
  std::vector<std::int32_t> table(h.mapping_length);
  for (auto& v : table) {
    v = static_cast<std::int32_t>(r.u32());
    if (v < MappingTable::kUnmapped || v >= static_cast<std::int64_t>(h.mapping_sigma))
      throw CorruptionError("mapping entry out of range");
  }
  if (r.remaining() != 0) throw CorruptionError("trailing bytes after archive");

  std::visit([&](const auto& a) { validate_states(a, h, outputs.length()); },
             states);

  TextEncoder encoder(h.scheme,
                      MappingTable(std::move(table),
                                   static_cast<std::uint32_t>(h.mapping_sigma)));
  return DoubleArrayAutomaton(std::move(encoder),
                              static_cast<std::uint32_t>(h.alphabet),
                              std::move(states), std::move(outputs),
                              SearchCounters{h.searches, h.verifications});
}

DoubleArrayAutomaton load(std::istream& in) {
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return from_bytes(bytes);
}

DoubleArrayAutomaton load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open archive " + path.string());
  return load(in);
}

}  // namespace daac
