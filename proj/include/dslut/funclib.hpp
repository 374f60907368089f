#pragma once

#include "dslut/aig.hpp"
#include "dslut/truth_table.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dslut {

/// One NPN class of practical functions with its occurrence counters.
struct FuncLibEntry {
  /// Canonical form of the function shrunk to its support, over max(2, nvars) variables.
  TruthTable canon;
  int nvars = 0;
  std::uint64_t n_enum = 0;     ///< K-feasible merges producing this class
  std::uint64_t n_cutset = 0;   ///< cuts retained in a final cut set
  std::uint64_t n_cutbest = 0;  ///< cells of the depth-optimal LUT-K cover

  friend bool operator==(const FuncLibEntry&, const FuncLibEntry&) = default;
};

/// Library keyed by (nvars, canonical table). Iteration order is the file
/// order: nvars ascending, then table ascending.
class FuncLib {
public:
  explicit FuncLib(int max_vars = 6);

  int max_vars() const { return max_vars_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Entry for an arbitrary function (shrunk and canonicalized here).
  FuncLibEntry& entry_for(const TruthTable& fn);
  /// Entry for an already canonical, already shrunk table.
  FuncLibEntry& entry_canonical(int nvars, const TruthTable& canon);
  const FuncLibEntry* find(int nvars, const TruthTable& canon) const;

  /// Adds every counter of `other`; commutative and associative.
  void merge(const FuncLib& other);

  std::vector<FuncLibEntry> entries() const;
  std::vector<FuncLibEntry> entries(int nvars) const;

  friend bool operator==(const FuncLib&, const FuncLib&) = default;

private:
  int max_vars_;
  std::map<std::pair<int, std::uint64_t>, FuncLibEntry> entries_;
};

/// Canonical key of `fn`: (support size, canonical table of the shrunk function).
std::pair<int, TruthTable> library_key(const TruthTable& fn);

std::string write_funclib(const FuncLib& lib);
FuncLib parse_funclib(std::string_view text);
FuncLib read_funclib_file(const std::string& path);

/// Cut enumeration plus LUT-K depth-oriented mapping over every netlist.
/// Netlists are processed independently (`jobs` workers) and merged in
/// input order, so the result does not depend on `jobs`.
FuncLib harvest_library(const std::vector<Aig>& aigs, int max_leaves, std::size_t max_cuts,
                        int jobs = 1);

struct OccurrenceRow {
  FuncLibEntry entry;
  double rate = 0.0;
  double cumulative = 0.0;
};

/// Entries ranked by nOccurCutBest (descending, ties by nvars then table).
/// Rates are relative to the nOccurCutBest sum of the filtered set.
/// `nvars` filters to one support size when set.
std::vector<OccurrenceRow> occurrence_report(const FuncLib& lib, std::optional<int> nvars,
                                             std::size_t top_n);

} // namespace dslut
