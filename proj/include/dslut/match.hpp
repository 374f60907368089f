#pragma once

#include "dslut/bit_assignment.hpp"
#include "dslut/funclib.hpp"
#include "dslut/truth_table.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dslut {

/// Data SRAM contents; bit j is the value of SRAM bit j.
using SramConfig = std::uint64_t;

/// A DSLUT implements `tt` (over exactly its k pins, restricted to `care`)
/// iff no SRAM class contains two care positions with different values.
/// Returns the SRAM contents with don't-care classes at 0.
std::optional<SramConfig> implements_direct(const BitAssignment& ba, const TruthTable& tt,
                                            std::uint64_t care);

/// Configuration realizing a function: which function variable each pin
/// reads (bridged pins repeat a variable), the PINV mask, and the SRAM.
struct MatchSolution {
  std::vector<int> pin_vars;
  std::uint32_t pinv = 0;
  SramConfig sram = 0;

  /// `MATCH pins=<v0,v1,..> pinv=<mask> sram=<bit0 bit1 ..>`
  std::string to_string(const BitAssignment& ba) const;

  friend bool operator==(const MatchSolution&, const MatchSolution&) = default;
};

/// Output of the configured DSLUT when the function inputs spell `minterm`.
bool evaluate_solution(const BitAssignment& ba, const MatchSolution& sol, std::uint32_t minterm);

/// Pin-level target induced by routing: pin j reads shrunk variable pin_map[j].
/// `care` masks the pin vectors where bridged pins agree.
struct PinTarget {
  std::uint64_t table = 0;
  std::uint64_t care = 0;
};
PinTarget induce_pin_target(const TruthTable& shrunk, int num_support, const std::vector<int>& pin_map,
                            int num_pins);

/// Calls visit(pin_map) for every map of `num_pins` pins onto `num_support`
/// variables that uses each variable at least once, in lexicographic order.
/// Stops early when visit returns true; returns whether it stopped.
template <typename Visit>
bool for_each_pin_map(int num_pins, int num_support, Visit&& visit);

/// Boolean matching under routing (permutation and bridging) and input
/// negation. Search order: pin maps lexicographically, then PINV masks
/// ascending; the first hit is returned. Constant functions are realized by
/// setting every SRAM bit to the constant.
std::optional<MatchSolution> match(const BitAssignment& ba, const TruthTable& f);

struct CoverageReport {
  std::size_t matched = 0;
  std::size_t total = 0;
  double weighted_rate = 0.0; ///< matched nOccurCutBest mass / total mass
  double rate() const { return total ? static_cast<double>(matched) / static_cast<double>(total) : 0.0; }
};

/// Matches one canonical representative per class with `nvars` inputs.
/// Constant classes (nvars = 0) are never counted. With `weighted`, the
/// weighted rate uses nOccurCutBest; if the total mass is 0 it falls back to
/// the class-count rate.
CoverageReport coverage(const BitAssignment& ba, const FuncLib& lib, int nvars, bool weighted = true,
                        int jobs = 1);

/// Per-entry match result, evaluated in parallel.
std::vector<bool> match_entries(const BitAssignment& ba, const std::vector<FuncLibEntry>& entries,
                                int jobs = 1);

// ---------------------------------------------------------------------------

template <typename Visit>
bool for_each_pin_map(int num_pins, int num_support, Visit&& visit) {
  std::vector<int> map(static_cast<std::size_t>(num_pins), 0);
  std::vector<int> uses(static_cast<std::size_t>(num_support), 0);
  if (num_support == 0)
    return visit(map);
  // Odometer over [0, s)^k with the last pin varying fastest.
  while (true) {
    std::fill(uses.begin(), uses.end(), 0);
    for (int v : map)
      ++uses[static_cast<std::size_t>(v)];
    if (std::all_of(uses.begin(), uses.end(), [](int u) { return u > 0; }) && visit(map))
      return true;
    int j = num_pins - 1;
    while (j >= 0 && map[static_cast<std::size_t>(j)] == num_support - 1)
      map[static_cast<std::size_t>(j--)] = 0;
    if (j < 0)
      return false;
    ++map[static_cast<std::size_t>(j)];
  }
}

} // namespace dslut
