#include "daac/double_array.hpp"

#include <bit>
#include <string>

#include "daac/error.hpp"

namespace daac {

std::string_view to_string(Layout l) noexcept {
  return l == Layout::kPacked ? "packed" : "individual";
}

std::string_view to_string(Format f) noexcept {
  return f == Format::kCompact ? "compact" : "basic";
}

Layout parse_layout(std::string_view name) {
  if (name == "individual") return Layout::kIndividual;
  if (name == "packed") return Layout::kPacked;
  throw ConfigError("unknown layout '" + std::string(name) + "'");
}

Format parse_format(std::string_view name) {
  if (name == "basic") return Format::kBasic;
  if (name == "compact") return Format::kCompact;
  throw ConfigError("unknown format '" + std::string(name) + "'");
}

std::uint32_t block_size_for(std::uint32_t alphabet_size) noexcept {
  return alphabet_size <= 1 ? 1 : std::bit_ceil(alphabet_size);
}

StateArray make_state_array(Layout layout, Format format) {
  if (layout == Layout::kPacked) {
    if (format == Format::kCompact) return PackedCompactArray{};
    return PackedBasicArray{};
  }
  if (format == Format::kCompact) return IndividualCompactArray{};
  return IndividualBasicArray{};
}

DoubleArrayAutomaton::DoubleArrayAutomaton(TextEncoder encoder,
                                           std::uint32_t alphabet_size,
                                           StateArray states,
                                           OutputStore outputs,
                                           SearchCounters counters)
    : encoder_(std::move(encoder)),
      alphabet_size_(alphabet_size),
      block_size_(block_size_for(alphabet_size)),
      states_(std::move(states)),
      outputs_(std::move(outputs)),
      counters_(counters) {}

Layout DoubleArrayAutomaton::layout() const noexcept {
  return std::visit([](const auto& a) { return a.kLayout; }, states_);
}

Format DoubleArrayAutomaton::format() const noexcept {
  return std::visit([](const auto& a) { return a.kFormat; }, states_);
}

std::size_t DoubleArrayAutomaton::num_patterns() const noexcept {
  if (const auto* f = outputs_.forest()) return f->nodes.size();
  return outputs_.term_store()->pattern_bytes.size();
}

std::size_t DoubleArrayAutomaton::num_ids() const noexcept {
  return std::visit([](const auto& a) { return a.size(); }, states_);
}

std::size_t DoubleArrayAutomaton::num_states() const noexcept {
  return std::visit(
      [](const auto& a) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < a.size(); ++i) n += a.is_state(i);
        return n;
      },
      states_);
}

std::size_t DoubleArrayAutomaton::array_bytes() const noexcept {
  return std::visit(
      [](const auto& a) { return a.size() * a.kBytesPerState; }, states_);
}

}  // namespace daac
