#pragma once

#include "dslut/aig.hpp"
#include "dslut/truth_table.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace dslut {

/// A set of at most K nodes separating a root from the primary inputs.
struct Cut {
  std::vector<std::uint32_t> leaves; ///< ascending, no duplicates
  std::uint64_t signature = 0;       ///< OR of 1 << (leaf % 64)
  /// Root function over the leaves; bit p is the value when leaf i = bit i of p.
  std::uint64_t function = 0;
  int depth = 0; ///< 1 + max leaf label; 0 for trivial cuts
  bool admissible = true;

  std::size_t size() const { return leaves.size(); }

  /// Truth table over max(2, |leaves|) variables.
  TruthTable table() const;
};

/// Trivial cut first, then at most C non-trivial cuts in priority order.
using CutSet = std::vector<Cut>;

inline constexpr std::size_t kUnlimitedCuts = std::numeric_limits<std::size_t>::max();

struct CutParams {
  int max_leaves = 6;           ///< K
  std::size_t max_cuts = 8;     ///< C, non-trivial cuts kept per node
};

/// Optional callbacks; any member may be empty.
struct CutHooks {
  /// Decides whether a cut may be used as a cell (LUT mode: always).
  std::function<bool(const Cut&)> admissible;
  /// Every K-feasible merge of two fanin cuts, before dedup and truncation.
  std::function<void(std::uint32_t node, const Cut&)> on_candidate;
  /// Every non-trivial cut that survives into a node's final set.
  std::function<void(std::uint32_t node, const Cut&)> on_retained;
};

struct CutEnumeration {
  std::vector<CutSet> sets;  ///< indexed by node id
  std::vector<int> labels;   ///< best admissible depth per node; kUnmappable if none
  static constexpr int kUnmappable = std::numeric_limits<int>::max() / 2;
};

/// Bottom-up priority-cut enumeration. Candidates of an AND node are the
/// K-feasible unions of one cut per fanin; duplicates and dominated cuts
/// (strict supersets of another candidate) are dropped, the rest are sorted
/// by (admissible first, depth, size, leaves) and truncated to C.
CutEnumeration enumerate_cuts(const Aig& aig, const CutParams& params,
                              const CutHooks& hooks = {});

/// Function of `node` over `leaves` by simulating its cone on all
/// 2^|leaves| patterns. Throws InternalError if the leaves are not a cut.
TruthTable cut_function(const Aig& aig, std::uint32_t node, const std::vector<std::uint32_t>& leaves);

/// True when `a` is a subset of `b` (both sorted).
bool cut_subset(const Cut& a, const Cut& b);

} // namespace dslut
