#pragma once

#include "dslut/aig.hpp"
#include "dslut/bit_assignment.hpp"
#include "dslut/cuts.hpp"
#include "dslut/error.hpp"
#include "dslut/match.hpp"
#include "dslut/truth_table.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dslut {

/// No admissible cut reaches a node that the cover needs.
class UnmappableError : public InternalError {
public:
  using InternalError::InternalError;
};

/// Match results for one bit assignment, memoized per NPN class. Matching is
/// invariant under input permutation/negation and output negation, so the
/// canonical form is a sound key. Thread-safe.
class MatchCache {
public:
  explicit MatchCache(BitAssignment ba);

  const BitAssignment& ba() const { return ba_; }
  bool matches(const TruthTable& fn);
  std::size_t size() const;
  std::size_t lookups() const;
  std::size_t hits() const;

  /// One `hex MATCH|NOMATCH` line per canonical function, ascending.
  std::string write() const;
  /// Adds lines in the write() format; '#' lines are ignored. Entries that
  /// are not canonical, or disagree with an existing entry, are ParseErrors.
  void load(std::string_view text);

private:
  BitAssignment ba_;
  mutable std::mutex lock_;
  std::map<TruthTable, bool> memo_;
  std::size_t lookups_ = 0;
  std::size_t hits_ = 0;
};

struct MapParams {
  int k = 6;
  std::size_t max_cuts = 8; ///< kUnlimitedCuts for exhaustive enumeration
  /// DSLUT mode when set; must have k inputs and a cache for the same assignment.
  MatchCache* cache = nullptr;
};

struct MappedCell {
  std::uint32_t node = 0;
  std::vector<std::uint32_t> leaves; ///< ascending; function variable i = leaves[i]
  TruthTable function;
  std::optional<MatchSolution> config; ///< DSLUT mode only
  int level = 0;
};

struct Mapping {
  int k = 0;
  std::optional<BitAssignment> ba;
  std::vector<MappedCell> cells; ///< ascending node id (topological)
  int max_level = 0;

  std::size_t nplb() const { return cells.size(); }
};

/// Depth-oriented mapping: per-node best depth over admissible cuts (ties:
/// fewer leaves, then lexicographic leaves), then cover extraction from the
/// outputs. Throws UnmappableError if a needed node has no admissible cut.
Mapping map_netlist(const Aig& aig, const MapParams& params);

/// 64 patterns per word: input words in, one word per output out. Cells are
/// evaluated from their truth table (LUT) or through the pruned MUX tree
/// configured by their MatchSolution (DSLUT).
std::vector<std::uint64_t> simulate_mapping(const Aig& aig, const Mapping& mapping,
                                            std::span<const std::uint64_t> inputs);

/// Structural checks: outputs covered, leaves are inputs or cell roots,
/// DSLUT cells carry a configuration that reproduces their function.
void check_mapping(const Aig& aig, const Mapping& mapping);

struct MapReport {
  std::string name;
  double max_level = 0;
  double nplb = 0;
  double area = 0;           ///< nPLB * cell area
  double dap_level = 0;      ///< maxLevel * area
  double dap_delay = 0;      ///< maxLevel * avg delay * area
};

MapReport make_report(std::string name, const Mapping& mapping, double cell_area, double avg_delay);

/// Column-wise geometric mean (0 if any value in a column is 0).
MapReport geomean(std::span<const MapReport> rows, std::string name = "geomean");

} // namespace dslut
