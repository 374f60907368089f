#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dslut {

/// CNF over variables 1..num_vars; literals are DIMACS integers (+v / -v).
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int new_var() { return ++num_vars; }
  void add_clause(std::span<const int> clause) { clauses.emplace_back(clause.begin(), clause.end()); }
  std::string to_dimacs() const;
};

struct SatResult {
  bool satisfiable = false;
  std::vector<bool> model; ///< indexed by variable; entry 0 unused
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
};

/// DPLL with two-watched-literal unit propagation and chronological
/// backtracking. Branches on the lowest unassigned variable, trying false
/// first, so the model returned is the lexicographically smallest one
/// (variable 1 most significant, false < true).
///
/// Incremental: clauses and variables may be added between solve() calls.
/// Each call searches from scratch except that root-level implications of
/// unit clauses are kept.
class DpllSolver {
public:
  DpllSolver() = default;
  explicit DpllSolver(const Cnf& cnf);

  int num_vars() const { return n_; }
  /// Drops all variables and clauses, keeping allocated storage.
  void reset();
  int new_var();
  void add_clause(std::span<const int> clause);
  SatResult solve();

private:
  struct Decision {
    std::size_t trail_size;
    int lit;
    bool flipped;
  };

  bool lit_true(int lit) const;
  bool lit_false(int lit) const;
  bool assign(int lit);
  void undo_to(std::size_t size);
  bool propagate();

  int n_ = 0;
  bool trivially_unsat_ = false;
  std::vector<int> units_;
  // Clauses of two or more literals, stored back to back.
  std::vector<int> lits_;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> size_;
  std::vector<std::vector<std::size_t>> watches_ = std::vector<std::vector<std::size_t>>(2);
  std::vector<signed char> lval_ = std::vector<signed char>(2, -1); ///< per literal index: 1, 0, -1 unassigned
  std::vector<int> trail_;
  std::size_t head_ = 0;
  std::size_t root_size_ = 0; ///< trail prefix implied by unit clauses alone
  std::vector<Decision> decisions_;
  std::vector<int> scratch_;
};

inline SatResult solve_dpll(const Cnf& cnf) { return DpllSolver(cnf).solve(); }

} // namespace dslut
