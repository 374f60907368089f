#pragma once

#include "dslut/bit_assignment.hpp"
#include "dslut/match.hpp"
#include "dslut/mux_tree.hpp"
#include "dslut/sat.hpp"
#include "dslut/truth_table.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dslut {

/// Single-output gate-level model of a programmable cell over k pins and
/// c configuration bits. Gates refer to earlier gates only.
struct PlbGate {
  enum class Kind { Pin, Config, Xor, Mux } kind;
  int a = 0; ///< Pin: pin index; Config: config index; Xor: operand; Mux: select
  int b = 0; ///< Xor: operand; Mux: input taken when select = 0
  int c = 0; ///< Mux: input taken when select = 1
};

struct PlbCircuit {
  int num_pins = 0;
  int num_config = 0;
  std::vector<PlbGate> gates;
  int output = 0;

  bool eval(const std::vector<bool>& config, std::uint32_t minterm) const;
  /// All 2^k outputs at once; bit m is eval(config, m).
  std::uint64_t table(const std::vector<bool>& config) const;
};

/// Pruned MUX tree plus (optionally) one XOR per pin for the PINVs.
/// Config layout: PINV bits 0..k-1 first when present, then SRAM bits.
PlbCircuit encode_plb(const BitAssignment& ba, const MuxTree& tree, bool with_pinv);

/// Tseitin CNF asserting output == value for the given pin minterm, added to
/// `cnf`. Config bit i is CNF variable i + 1 (the first num_config variables
/// must already exist); pins are substituted as constants and folded.
void encode_minterm(const PlbCircuit& plb, std::uint32_t minterm, bool value, Cnf& cnf);

struct CegarStats {
  int iterations = 0;
  std::uint64_t decisions = 0;
};

/// Counterexample-guided search for a configuration with
/// plb(config, m) == table bit m on every minterm in `care`. Each round
/// solves for a config consistent with the collected minterms, verifies it
/// exhaustively, and adds the first failing care minterm.
std::optional<std::vector<bool>> cegar_match(const PlbCircuit& plb, std::uint64_t table,
                                             std::uint64_t care, CegarStats* stats = nullptr);
inline std::optional<std::vector<bool>> cegar_match(const PlbCircuit& plb, const TruthTable& f,
                                                    CegarStats* stats = nullptr) {
  return cegar_match(plb, f.bits(), TruthTable::mask(f.num_vars()), stats);
}

/// CNF of the first CEGAR round (the first care minterm only), for external solvers.
Cnf cegar_initial_cnf(const PlbCircuit& plb, std::uint64_t table, std::uint64_t care);

/// Same pin-map enumeration as match(), with PINVs and SRAM found by CEGAR.
std::optional<MatchSolution> cegar_match_pins(const BitAssignment& ba, const TruthTable& f,
                                              CegarStats* stats = nullptr);

} // namespace dslut
