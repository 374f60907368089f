#pragma once

#include "dslut/bit_assignment.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dslut {

/// Child of a MUX: another MUX node or an SRAM bit.
struct MuxRef {
  bool leaf = true;
  std::uint32_t id = 0; ///< node index, or SRAM bit id for leaves

  friend bool operator==(const MuxRef&, const MuxRef&) = default;
  friend auto operator<=>(const MuxRef&, const MuxRef&) = default;
};

/// 2:1 MUX selected by input `level`; child0 is taken when the select is 0.
struct MuxNode {
  int level = 0;
  MuxRef child0, child1;
};

struct MuxStats {
  int surviving = 0;        ///< MUX nodes left in the DAG
  int pruned_identical = 0; ///< full-tree MUXes removed for equal children
  int pruned_strash = 0;    ///< full-tree MUXes merged into an existing node
  int transistors() const { return 2 * surviving; }
};

/// Shared DAG of 2:1 MUXes; input i drives every level-i select, input 0
/// nearest the SRAM leaves. Nodes are stored children first.
struct MuxTree {
  int num_inputs = 0;
  int num_bits = 0;
  std::vector<MuxNode> nodes;
  MuxRef root;
  MuxStats stats;
};

/// Full 2^k-leaf tree over the bit assignment. With `prune`, each full-tree
/// MUX is built bottom-up and either collapses into its child (equal
/// children), reuses an existing node with the same (level, child0, child1),
/// or survives; the result is the fixpoint of both rules.
MuxTree build_mux_tree(const BitAssignment& ba, bool prune = true);

/// Output for SRAM contents `sram` (bit j = SRAM bit j) and select lines `minterm`.
bool tree_eval(const MuxTree& tree, std::uint64_t sram, std::uint32_t minterm);

/// Per input i: the largest number of MUX nodes on a root-to-node path that
/// ends at a surviving level-i node (0 if no level-i node survives).
std::vector<int> path_stages(const MuxTree& tree);

struct TransistorReport {
  int transistors = 0;
  int pruned_identical = 0; ///< transistors
  int pruned_strash = 0;    ///< transistors
  int full_tree = 0;        ///< 2(2^k - 1)
};
TransistorReport transistor_report(const MuxTree& tree);

/// Graphviz description: MUX nodes as circles labeled by input, SRAM bits as boxes.
std::string to_dot(const MuxTree& tree);

} // namespace dslut
