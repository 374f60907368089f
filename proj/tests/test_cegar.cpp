#include "dslut/cegar.hpp"
#include "dslut/error.hpp"
#include "dslut/match.hpp"
#include "dslut/mux_tree.hpp"
#include "dslut/sat.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace dslut;
using namespace dslut::test;

namespace {

Cnf random_cnf(Rng& rng, int vars, int clauses, int width) {
  Cnf cnf;
  cnf.num_vars = vars;
  for (int c = 0; c < clauses; ++c) {
    std::vector<int> cl;
    const int w = 1 + static_cast<int>(rng() % static_cast<unsigned>(width));
    for (int i = 0; i < w; ++i) {
      const int v = 1 + static_cast<int>(rng() % static_cast<unsigned>(vars));
      cl.push_back(rng() & 1u ? v : -v);
    }
    cnf.add_clause(cl);
  }
  return cnf;
}

bool satisfies(const Cnf& cnf, const std::vector<bool>& model) {
  for (const auto& cl : cnf.clauses) {
    bool sat = false;
    for (int l : cl)
      sat = sat || (model[static_cast<std::size_t>(std::abs(l))] == (l > 0));
    if (!sat)
      return false;
  }
  return true;
}

/// Lexicographically smallest model (variable 1 most significant, false first).
std::optional<std::vector<bool>> brute_force_lexmin(const Cnf& cnf) {
  const int n = cnf.num_vars;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    std::vector<bool> model(static_cast<std::size_t>(n) + 1, false);
    for (int v = 1; v <= n; ++v)
      model[static_cast<std::size_t>(v)] = (x >> (n - v)) & 1u;
    if (satisfies(cnf, model))
      return model;
  }
  return std::nullopt;
}

std::uint64_t realizable(Rng& rng, const BitAssignment& ba) {
  std::uint64_t bits = 0;
  const auto sram = rng();
  for (unsigned p = 0; p < static_cast<unsigned>(ba.num_positions()); ++p)
    bits |= ((sram >> ba.bit(p)) & 1ull) << p;
  return bits;
}

} // namespace

TEST(Sat, AgreesWithBruteForceAndIsLexMin) {
  Rng rng(41);
  int sat_count = 0;
  for (int i = 0; i < 400; ++i) {
    const int vars = 1 + static_cast<int>(rng() % 10);
    const auto cnf = random_cnf(rng, vars, static_cast<int>(rng() % 30), 3);
    const auto r = solve_dpll(cnf);
    const auto oracle = brute_force_lexmin(cnf);
    ASSERT_EQ(r.satisfiable, oracle.has_value()) << cnf.to_dimacs();
    if (r.satisfiable) {
      ++sat_count;
      EXPECT_TRUE(satisfies(cnf, r.model));
      EXPECT_EQ(r.model, *oracle) << cnf.to_dimacs();
    }
  }
  EXPECT_GT(sat_count, 50);
}

TEST(Sat, EmptyClauseAndTrivialCases) {
  Cnf empty;
  EXPECT_TRUE(solve_dpll(empty).satisfiable);
  Cnf contradiction;
  contradiction.num_vars = 1;
  contradiction.add_clause(std::vector<int>{1});
  contradiction.add_clause(std::vector<int>{-1});
  EXPECT_FALSE(solve_dpll(contradiction).satisfiable);
  Cnf with_empty;
  with_empty.num_vars = 2;
  with_empty.add_clause(std::vector<int>{});
  EXPECT_FALSE(solve_dpll(with_empty).satisfiable);
}

TEST(Sat, IncrementalMatchesFromScratch) {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const int vars = 2 + static_cast<int>(rng() % 8);
    const auto cnf = random_cnf(rng, vars, 20, 3);
    DpllSolver s;
    Cnf prefix;
    prefix.num_vars = vars;
    for (int v = 0; v < vars; ++v)
      s.new_var();
    for (const auto& cl : cnf.clauses) {
      s.add_clause(cl);
      prefix.add_clause(cl);
      const auto r = s.solve();
      const auto oracle = brute_force_lexmin(prefix);
      ASSERT_EQ(r.satisfiable, oracle.has_value());
      if (r.satisfiable)
        ASSERT_EQ(r.model, *oracle);
      else
        break;
    }
    s.reset();
    EXPECT_EQ(s.num_vars(), 0);
  }
}

TEST(Sat, Dimacs) {
  Cnf cnf;
  cnf.num_vars = 2;
  cnf.add_clause(std::vector<int>{1, -2});
  cnf.add_clause(std::vector<int>{2});
  EXPECT_EQ(cnf.to_dimacs(), "p cnf 2 2\n1 -2 0\n2 0\n");
}

TEST(Cegar, CircuitMatchesMuxTreeSemantics) {
  Rng rng(43);
  for (int k = 2; k <= 6; ++k) {
    const auto ba = random_ba(rng, k, 1 + static_cast<int>(rng() % (1u << k)));
    const auto tree = build_mux_tree(ba);
    const auto plb = encode_plb(ba, tree, true);
    ASSERT_EQ(plb.num_pins, k);
    ASSERT_EQ(plb.num_config, k + ba.num_bits());
    for (int i = 0; i < 20; ++i) {
      std::vector<bool> config(static_cast<std::size_t>(plb.num_config));
      std::uint32_t pinv = 0;
      std::uint64_t sram = 0;
      for (int j = 0; j < plb.num_config; ++j) {
        const bool v = rng() & 1u;
        config[static_cast<std::size_t>(j)] = v;
        if (j < k)
          pinv |= static_cast<std::uint32_t>(v) << j;
        else
          sram |= static_cast<std::uint64_t>(v) << (j - k);
      }
      const auto table = plb.table(config);
      for (std::uint32_t m = 0; m < (1u << k); ++m) {
        EXPECT_EQ(plb.eval(config, m), tree_eval(tree, sram, m ^ pinv));
        EXPECT_EQ(((table >> m) & 1u) != 0, plb.eval(config, m));
      }
    }
  }
}

TEST(Cegar, SpecExamples) {
  const BitAssignment a(2, {0, 1, 1, 1});
  const auto plb = encode_plb(a, build_mux_tree(a), true);
  CegarStats stats;
  const auto cfg = cegar_match(plb, TruthTable(2, 0x1), &stats);
  ASSERT_TRUE(cfg);
  EXPECT_EQ(plb.table(*cfg), 0x1u);
  EXPECT_LE(stats.iterations, 4);
  EXPECT_TRUE(implements_direct(a, TruthTable(2, 0x1), 0xF));

  // XOR2 with the identity pin map and no PINV.
  const auto bare = encode_plb(a, build_mux_tree(a), false);
  EXPECT_FALSE(cegar_match(bare, TruthTable(2, 0x6)));
  EXPECT_FALSE(implements_direct(a, TruthTable(2, 0x6), 0xF));
}

TEST(Cegar, AgreesWithImplementsDirectPerCareTable) {
  Rng rng(44);
  for (int k = 2; k <= 5; ++k) {
    const auto ba = random_ba(rng, k, 1 + static_cast<int>(rng() % (1u << k)));
    const auto plb = encode_plb(ba, build_mux_tree(ba), false);
    for (int i = 0; i < 60; ++i) {
      const auto table = i % 2 ? realizable(rng, ba) : rng() & TruthTable::mask(k);
      const auto care = i % 3 ? TruthTable::mask(k) : rng() & TruthTable::mask(k);
      if (care == 0)
        continue;
      CegarStats stats;
      const auto cfg = cegar_match(plb, table, care, &stats);
      const auto direct = implements_direct(ba, TruthTable(k, table), care);
      ASSERT_EQ(cfg.has_value(), direct.has_value());
      EXPECT_LE(stats.iterations, (1 << k) + 1);
      if (cfg) {
        EXPECT_EQ(plb.table(*cfg) & care, table & care);
      }
    }
  }
}

TEST(Cegar, PinMatcherAgreesWithPartitionMatcher) {
  Rng rng(45);
  for (int k = 2; k <= 4; ++k)
    for (int trial = 0; trial < 3; ++trial) {
      const auto ba = random_ba(rng, k, 1 + static_cast<int>(rng() % (1u << k)));
      for (int i = 0; i < 40; ++i) {
        const TruthTable f(k, i % 2 ? realizable(rng, ba) : rng() & TruthTable::mask(k));
        const auto p = match(ba, f);
        const auto c = cegar_match_pins(ba, f);
        ASSERT_EQ(p.has_value(), c.has_value()) << write_bit_assignment(ba) << f.to_hex();
        if (!c)
          continue;
        for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(f.num_bits()); ++x)
          ASSERT_EQ(evaluate_solution(ba, *c, x), f.bit(x));
      }
    }
}

TEST(Cegar, InitialCnfIsSatisfiableForRealizableTarget) {
  Rng rng(46);
  const auto ba = random_ba(rng, 4, 7);
  const auto plb = encode_plb(ba, build_mux_tree(ba), true);
  const auto cnf = cegar_initial_cnf(plb, realizable(rng, ba), TruthTable::mask(4));
  EXPECT_GT(cnf.num_vars, plb.num_config);
  EXPECT_TRUE(solve_dpll(cnf).satisfiable);
}
