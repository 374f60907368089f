#pragma once

#include "dslut/bit_assignment.hpp"
#include "dslut/funclib.hpp"
#include "dslut/truth_table.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dslut {

/// Number of distinct position signatures, where the signature of position
/// p is the vector of every table's bit at p. All tables must share k.
std::size_t compute_cost(std::span<const TruthTable> tables);

/// Assignment whose classes are the signature classes of `tables`
/// (ids by first occurrence). Requires a non-empty list.
BitAssignment assignment_from_tables(std::span<const TruthTable> tables);

struct InitResult {
  BitAssignment ba;
  std::vector<TruthTable> chosen; ///< the class member picked for each top function
};

/// Top `num_top` K-input entries by nOccurCutBest (ties: smaller table
/// first). The first is taken as its canonical table; each later one is
/// replaced by the first member of its NPN class (ascending) minimizing the
/// cost of the accumulated list.
InitResult heuristic_init(const FuncLib& lib, int k, std::size_t num_top = 8);

/// Which positions the search must keep apart.
struct DistinctionMap {
  std::vector<int> ext_class;  ///< class id of each position after extension
  std::vector<int> init_class; ///< class id of each position before extension
  bool must_differ(int p, int q) const { return ext_class[static_cast<std::size_t>(p)] != ext_class[static_cast<std::size_t>(q)]; }
  /// Positions whose ext class has other members (the search may move them).
  std::vector<int> splittable() const;
};

struct Extension {
  BitAssignment ba;
  DistinctionMap dm;
  bool applied = false; ///< false when k < 4 (input returned unchanged)
};

/// Gives positions 0..15 pairwise distinct bits so the DSLUT contains a
/// LUT4. The lowest position of each class keeps the class (with any
/// positions >= 16); other positions below 16 get new bits. Ids are then
/// renumbered by first occurrence. For k < 4 nothing changes.
Extension extend_ba(const BitAssignment& ba);
/// Distinction map that only records the given partition (no extension).
DistinctionMap identity_distinctions(const BitAssignment& ba);

/// Coverage objective over library classes with nvars in [min_nvars, k]:
/// matched nOccurCutBest mass over total mass, or the matched class
/// fraction when `weighted` is off or the mass is 0.
double objective(const BitAssignment& ba, const FuncLib& lib, int min_nvars, bool weighted,
                 int jobs = 1);

struct SearchParams {
  int budget = 0;
  std::size_t evals = 0;
  std::uint64_t seed = 0;
  int min_nvars = 5;
  bool weighted = true;
  int jobs = 1;
  /// Called after every 100th evaluation with the best objective so far.
  std::function<void(std::size_t evals_done, double best)> progress;
};

struct SearchResult {
  BitAssignment best;
  double best_objective = 0.0;
  double initial_objective = 0.0;
  std::size_t evaluations = 0;
};

/// Stochastic maximization over refinements of `ext` that respect `dm` and
/// use at most `budget` bits. Every splittable position carries a label in
/// [0, budget - classes(ext)]: 0 keeps its ext class, e > 0 moves it to
/// extra bit e, which belongs to the first ext class (by position) using it.
/// Evaluation 1 is `ext` itself; later ones are 25% uniform random label
/// vectors and 75% guided mutations of the best. The best is replaced only
/// on strict improvement. Throws UsageError if budget < classes(ext).
SearchResult search(const BitAssignment& ext, const DistinctionMap& dm, const FuncLib& lib,
                    const SearchParams& params);

struct GenParams {
  int k = 6;
  int bits = 26;
  std::size_t top_funcs = 8;
  std::size_t evals = 1000;
  std::uint64_t seed = 0;
  bool weighted = true;
  int jobs = 1;
  std::function<void(const std::string&)> log;
};

struct GenResult {
  BitAssignment init, ext, best;
  bool extended = false;
  std::size_t top_used = 0;
  int min_nvars = 2;
  double ext_objective = 0.0;
  double best_objective = 0.0;
};

/// heuristic_init -> extend_ba -> search. Extension runs only when k >= 4
/// and the extended assignment fits the budget. When the top functions
/// alone need more than `bits`, trailing ones are dropped until they fit.
GenResult generate(const FuncLib& lib, const GenParams& params);

} // namespace dslut
