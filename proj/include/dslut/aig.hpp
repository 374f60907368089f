#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dslut {

/// Edge to an AIG node with an optional inversion: 2·node + complement.
class AigLit {
public:
  constexpr AigLit() = default;
  constexpr AigLit(std::uint32_t node, bool complemented)
      : raw_(node << 1 | static_cast<std::uint32_t>(complemented)) {}

  static constexpr AigLit from_raw(std::uint32_t raw) {
    AigLit l;
    l.raw_ = raw;
    return l;
  }

  constexpr std::uint32_t node() const { return raw_ >> 1; }
  constexpr bool complemented() const { return raw_ & 1u; }
  constexpr std::uint32_t raw() const { return raw_; }
  constexpr AigLit operator!() const { return from_raw(raw_ ^ 1u); }

  friend constexpr bool operator==(AigLit, AigLit) = default;

private:
  std::uint32_t raw_ = 0;
};

struct AndNode {
  AigLit fanin0;
  AigLit fanin1;
};

/// Combinational and-inverter graph.
///
/// Node 0 is constant false, nodes 1..num_inputs() are primary inputs
/// (latch outputs included), and AND nodes follow in topological order, so
/// every fanin id is strictly smaller than its node's id. Latch next-state
/// functions are appended to the outputs.
class Aig {
public:
  Aig() = default;
  explicit Aig(std::uint32_t num_inputs) : num_inputs_(num_inputs) {}

  std::uint32_t num_inputs() const { return num_inputs_; }
  std::uint32_t num_ands() const { return static_cast<std::uint32_t>(ands_.size()); }
  std::uint32_t num_nodes() const { return 1 + num_inputs_ + num_ands(); }
  std::uint32_t num_latches() const { return num_latches_; }

  bool is_constant(std::uint32_t node) const { return node == 0; }
  bool is_input(std::uint32_t node) const { return node >= 1 && node <= num_inputs_; }
  bool is_and(std::uint32_t node) const { return node > num_inputs_ && node < num_nodes(); }

  AigLit input(std::uint32_t index) const { return AigLit(1 + index, false); }
  const AndNode& and_node(std::uint32_t node) const { return ands_[node - num_inputs_ - 1]; }
  std::span<const AigLit> outputs() const { return outputs_; }

  /// Appends AND(a, b); both fanins must already exist.
  AigLit add_and(AigLit a, AigLit b);
  void add_output(AigLit lit);
  void set_num_latches(std::uint32_t n) { num_latches_ = n; }

  friend bool operator==(const Aig& a, const Aig& b);

private:
  std::uint32_t num_inputs_ = 0;
  std::uint32_t num_latches_ = 0;
  std::vector<AndNode> ands_;
  std::vector<AigLit> outputs_;
};

/// Parses ASCII ("aag") or binary ("aig") AIGER. Symbols and comments are
/// ignored. Throws ParseError with a line number on malformed input.
Aig parse_aiger(std::string_view text);
Aig read_aiger_file(const std::string& path);

/// ASCII AIGER of the combinational view (latches are already inputs/outputs).
std::string write_aiger(const Aig& aig);

std::vector<bool> simulate(const Aig& aig, const std::vector<bool>& inputs);

/// 64 patterns at once: bit j of inputs[i] is input i in pattern j. Returns
/// one word per node.
std::vector<std::uint64_t> simulate_words(const Aig& aig, std::span<const std::uint64_t> inputs);

/// depth(constant) = depth(input) = 0, depth(AND) = 1 + max fanin depth.
std::vector<int> levels(const Aig& aig);

} // namespace dslut
