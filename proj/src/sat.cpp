#include "dslut/sat.hpp"

#include "dslut/error.hpp"

#include <cstdlib>
#include <sstream>

namespace dslut {

std::string Cnf::to_dimacs() const {
  std::ostringstream out;
  out << "p cnf " << num_vars << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) {
    for (int lit : c)
      out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

namespace {

constexpr signed char kUnassigned = -1;

// Literal index: 2v for +v, 2v+1 for -v.
inline std::size_t lit_index(int lit) {
  return lit > 0 ? 2 * static_cast<std::size_t>(lit) : 2 * static_cast<std::size_t>(-lit) + 1;
}

} // namespace

DpllSolver::DpllSolver(const Cnf& cnf) {
  while (n_ < cnf.num_vars)
    new_var();
  for (const auto& c : cnf.clauses)
    add_clause(c);
}

int DpllSolver::new_var() {
  ++n_;
  lval_.resize(2 * static_cast<std::size_t>(n_) + 2, kUnassigned);
  const auto want = 2 * static_cast<std::size_t>(n_) + 2;
  if (watches_.size() < want)
    watches_.resize(want);
  return n_;
}

void DpllSolver::reset() {
  for (std::size_t i = 0; i < 2 * static_cast<std::size_t>(n_) + 2 && i < watches_.size(); ++i)
    watches_[i].clear();
  n_ = 0;
  trivially_unsat_ = false;
  units_.clear();
  lits_.clear();
  start_.clear();
  size_.clear();
  lval_.assign(2, kUnassigned);
  trail_.clear();
  head_ = 0;
  root_size_ = 0;
  decisions_.clear();
}

void DpllSolver::add_clause(std::span<const int> c) {
  for (int lit : c)
    if (lit == 0 || std::abs(lit) > n_)
      throw InternalError("CNF literal " + std::to_string(lit) + " out of range");
  // Simplify against the root-level assignment, which only ever grows:
  // root-false literals can never become true again.
  undo_to(root_size_);
  auto& live = scratch_;
  live.clear();
  for (int lit : c) {
    if (lit_true(lit))
      return;
    if (!lit_false(lit))
      live.push_back(lit);
  }
  if (live.empty()) {
    trivially_unsat_ = true;
  } else if (live.size() == 1) {
    units_.push_back(live[0]);
  } else {
    const auto id = start_.size();
    start_.push_back(static_cast<std::uint32_t>(lits_.size()));
    size_.push_back(static_cast<std::uint32_t>(live.size()));
    lits_.insert(lits_.end(), live.begin(), live.end());
    watches_[lit_index(live[0])].push_back(id);
    watches_[lit_index(live[1])].push_back(id);
  }
}

SatResult DpllSolver::solve() {
  undo_to(root_size_);
  decisions_.clear();
  SatResult r;
  if (trivially_unsat_)
    return r;
  for (int u : units_)
    if (!assign(u)) {
      trivially_unsat_ = true;
      return r;
    }
  units_.clear();
  if (!propagate()) {
    trivially_unsat_ = true;
    return r;
  }
  root_size_ = trail_.size();
  int next = 1;
  while (true) {
    while (next <= n_ && lval_[2 * static_cast<std::size_t>(next)] != kUnassigned)
      ++next;
    if (next > n_) {
      r.satisfiable = true;
      r.model.assign(static_cast<std::size_t>(n_) + 1, false);
      for (int v = 1; v <= n_; ++v)
        r.model[static_cast<std::size_t>(v)] = lval_[2 * static_cast<std::size_t>(v)] == 1;
      return r;
    }
    ++r.decisions;
    decisions_.push_back({trail_.size(), -next, false});
    assign(-next);
    while (!propagate()) {
      ++r.conflicts;
      // Back to the most recent decision whose other branch is untried.
      while (!decisions_.empty() && decisions_.back().flipped)
        decisions_.pop_back();
      if (decisions_.empty())
        return r;
      auto& d = decisions_.back();
      undo_to(d.trail_size);
      d.flipped = true;
      d.lit = -d.lit;
      assign(d.lit);
      next = 1;
    }
  }
}

bool DpllSolver::lit_true(int lit) const { return lval_[lit_index(lit)] == 1; }

bool DpllSolver::lit_false(int lit) const { return lval_[lit_index(lit)] == 0; }

bool DpllSolver::assign(int lit) {
  if (lit_false(lit))
    return false;
  if (lit_true(lit))
    return true;
  lval_[lit_index(lit)] = 1;
  lval_[lit_index(-lit)] = 0;
  trail_.push_back(lit);
  return true;
}

void DpllSolver::undo_to(std::size_t size) {
  while (trail_.size() > size) {
    lval_[lit_index(trail_.back())] = kUnassigned;
    lval_[lit_index(-trail_.back())] = kUnassigned;
    trail_.pop_back();
  }
  head_ = std::min(head_, size);
}

bool DpllSolver::propagate() {
  while (head_ < trail_.size()) {
    const int false_lit = -trail_[head_++];
    auto& ws = watches_[lit_index(false_lit)];
    std::size_t keep = 0;
    bool conflict = false;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const auto id = ws[i];
      if (conflict) {
        ws[keep++] = id;
        continue;
      }
      int* c = lits_.data() + start_[id];
      const std::size_t len = size_[id];
      if (c[0] == false_lit)
        std::swap(c[0], c[1]);
      if (lit_true(c[0])) {
        ws[keep++] = id;
        continue;
      }
      bool moved = false;
      for (std::size_t j = 2; j < len; ++j) {
        if (!lit_false(c[j])) {
          std::swap(c[1], c[j]);
          watches_[lit_index(c[1])].push_back(id);
          moved = true;
          break;
        }
      }
      if (moved)
        continue;
      ws[keep++] = id;
      if (!assign(c[0]))
        conflict = true;
    }
    ws.resize(keep);
    if (conflict)
      return false;
  }
  return true;
}

} // namespace dslut
