#include "dslut/bit_assignment.hpp"
#include "dslut/error.hpp"
#include "dslut/funclib.hpp"
#include "dslut/match.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace dslut;
using namespace dslut::test;

namespace {

BitAssignment ba_of(int k, std::vector<std::uint8_t> assign) { return BitAssignment(k, std::move(assign)); }

std::string sram_string(const BitAssignment& ba, SramConfig s) {
  std::string out;
  for (int j = 0; j < ba.num_bits(); ++j)
    out += ((s >> j) & 1u) ? '1' : '0';
  return out;
}

void expect_solution_reproduces(const BitAssignment& ba, const TruthTable& f, const MatchSolution& sol) {
  ASSERT_EQ(sol.pin_vars.size(), static_cast<std::size_t>(ba.num_inputs()));
  for (auto v : support(f))
    EXPECT_NE(std::find(sol.pin_vars.begin(), sol.pin_vars.end(), v), sol.pin_vars.end());
  for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(f.num_bits()); ++x)
    ASSERT_EQ(evaluate_solution(ba, sol, x), f.bit(x)) << f.to_hex() << " at " << x;
}

} // namespace

TEST(BitAssignment, ConstructionAndFormat) {
  const auto ba = ba_of(2, {0, 1, 1, 1});
  EXPECT_EQ(ba.num_bits(), 2);
  EXPECT_EQ(ba.num_pinv(), 2);
  EXPECT_EQ(ba.class_masks(), (std::vector<std::uint64_t>{0x1, 0xE}));
  EXPECT_EQ(write_bit_assignment(ba), "dslut v1\nK=2\nB=2\nPINV=2\nASSIGN=0 1 1 1\n");
  EXPECT_EQ(parse_bit_assignment(write_bit_assignment(ba)), ba);
  EXPECT_TRUE(BitAssignment::full_lut(3).is_full_lut());
  EXPECT_EQ(BitAssignment::full_lut(3).num_bits(), 8);
  EXPECT_THROW(ba_of(2, {0, 2, 2, 2}), UsageError); // id 1 unused
  EXPECT_THROW(ba_of(2, {0, 1, 1}), UsageError);
  const int labels[] = {7, 3, 7, 3};
  EXPECT_EQ(BitAssignment::from_labels(2, labels), ba_of(2, {0, 1, 0, 1}));
}

TEST(BitAssignment, ParseErrors) {
  EXPECT_THROW(parse_bit_assignment(""), ParseError);
  EXPECT_THROW(parse_bit_assignment("dslut v2\nK=2\nB=2\nPINV=2\nASSIGN=0 1 1 1\n"), ParseError);
  EXPECT_THROW(parse_bit_assignment("dslut v1\nK=2\nB=3\nPINV=2\nASSIGN=0 1 1 1\n"), ParseError);
  EXPECT_THROW(parse_bit_assignment("dslut v1\nK=2\nB=2\nPINV=1\nASSIGN=0 1 1 1\n"), ParseError);
  EXPECT_THROW(parse_bit_assignment("dslut v1\nK=2\nB=2\nPINV=2\nASSIGN=0 1 1\n"), ParseError);
  EXPECT_THROW(parse_bit_assignment("dslut v1\nK=2\nB=2\nPINV=2\n"), ParseError);
}

TEST(BitAssignment, Refines) {
  const auto coarse = ba_of(2, {0, 1, 1, 1});
  EXPECT_TRUE(refines(ba_of(2, {0, 1, 2, 1}), coarse));
  EXPECT_TRUE(refines(coarse, coarse));
  EXPECT_FALSE(refines(ba_of(2, {0, 0, 1, 1}), coarse));
  EXPECT_TRUE(refines(BitAssignment::full_lut(2), coarse));
}

TEST(ImplementsDirect, WorkedExamples) {
  const auto full = TruthTable::mask(2);
  const auto a = ba_of(2, {0, 1, 1, 1});
  const auto s = implements_direct(a, TruthTable(2, 0x1), full);
  ASSERT_TRUE(s);
  EXPECT_EQ(sram_string(a, *s), "10");
  EXPECT_FALSE(implements_direct(ba_of(2, {0, 0, 1, 1}), TruthTable(2, 0x1), full));
  const auto o = implements_direct(a, TruthTable(2, 0xE), full);
  ASSERT_TRUE(o);
  EXPECT_EQ(sram_string(a, *o), "01");
  EXPECT_THROW(implements_direct(a, TruthTable(3, 0x1), 0xff), UsageError);
}

TEST(ImplementsDirect, CareMaskAndDontCareZero) {
  const auto a = ba_of(2, {0, 0, 1, 1});
  // Positions 0 and 1 disagree, but position 1 is don't-care.
  const auto s = implements_direct(a, TruthTable(2, 0x1), 0xD);
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, 0x1u);
  // A class with no care position stays 0.
  EXPECT_EQ(*implements_direct(a, TruthTable(2, 0xF), 0x3), 0x1u);
}

TEST(Match, SpecExamples) {
  const auto a = ba_of(2, {0, 1, 1, 1});
  const auto x = match(a, TruthTable(2, 0xA));
  ASSERT_TRUE(x);
  EXPECT_EQ(x->pin_vars, (std::vector<int>{0, 0}));
  EXPECT_EQ(sram_string(a, x->sram), "01");
  EXPECT_EQ(x->pinv, 0u);
  EXPECT_FALSE(match(a, TruthTable(2, 0x6)));

  const auto b = ba_of(2, {0, 1, 1, 2});
  const auto xn = match(b, TruthTable(2, 0x9));
  ASSERT_TRUE(xn);
  EXPECT_EQ(sram_string(b, xn->sram), "101");
  EXPECT_EQ(xn->to_string(b), "MATCH pins=0,1 pinv=0 sram=101");
}

TEST(Match, ConstantsAndSmallFunctions) {
  const auto one_bit = ba_of(3, {0, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_TRUE(match(one_bit, TruthTable(3, 0x00)));
  EXPECT_TRUE(match(one_bit, TruthTable(3, 0xff)));
  EXPECT_FALSE(match(one_bit, TruthTable(3, 0xaa)));
  const auto c = match(one_bit, TruthTable(3, 0xff));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->sram, 1u);
  // A 6-input DSLUT still matches a 2-input function by bridging.
  Rng rng(31);
  const auto ba6 = random_ba(rng, 6, 26);
  const auto f = TruthTable(6, TruthTable::var_mask(6, 4) & TruthTable::var_mask(6, 1));
  const auto sol = match(ba6, f);
  if (sol)
    expect_solution_reproduces(ba6, f, *sol);
  EXPECT_EQ(sol.has_value(), brute_force_match(ba6, TruthTable(2, 0x8)));
}

TEST(Match, FullLutMatchesEverything) {
  Rng rng(32);
  for (int k = 2; k <= 6; ++k) {
    const auto lut = BitAssignment::full_lut(k);
    for (int i = 0; i < 20; ++i) {
      const auto f = random_tt(rng, k);
      const auto sol = match(lut, f);
      ASSERT_TRUE(sol);
      expect_solution_reproduces(lut, f, *sol);
    }
  }
}

TEST(Match, AgreesWithBruteForceAtK2AndK3) {
  Rng rng(33);
  for (int k = 2; k <= 3; ++k)
    for (int trial = 0; trial < (k == 2 ? 12 : 6); ++trial) {
      const int b = 1 + static_cast<int>(rng() % (1u << k));
      const auto ba = random_ba(rng, k, b);
      for (std::uint64_t bits = 0; bits < (1ull << (1u << k)); ++bits) {
        const TruthTable f(k, bits);
        const auto sol = match(ba, f);
        ASSERT_EQ(sol.has_value(), brute_force_match(ba, f))
            << write_bit_assignment(ba) << " f=" << f.to_hex();
        if (sol)
          expect_solution_reproduces(ba, f, *sol);
      }
    }
}

TEST(Match, ComplementAndNpnInvariance) {
  Rng rng(34);
  for (int k = 3; k <= 5; ++k)
    for (int trial = 0; trial < 3; ++trial) {
      const auto ba = random_ba(rng, k, (1 << k) / 2 + 1);
      for (int i = 0; i < 8; ++i) {
        const auto f = random_tt(rng, k);
        const bool m = match(ba, f).has_value();
        EXPECT_EQ(match(ba, ~f).has_value(), m);
        for (int t = 0; t < 3; ++t)
          EXPECT_EQ(match(ba, apply_transform(f, random_transform(rng, k))).has_value(), m);
      }
    }
}

TEST(Match, RefinementMonotonicity) {
  Rng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 3);
    const auto coarse = random_ba(rng, k, 2 + static_cast<int>(rng() % ((1u << k) / 2)));
    // Refine by splitting random positions onto fresh labels.
    std::vector<int> labels(coarse.assign().begin(), coarse.assign().end());
    for (int s = 0; s < 3; ++s)
      labels[rng() % labels.size()] = 100 + s;
    const auto fine = BitAssignment::from_labels(k, labels);
    ASSERT_TRUE(refines(fine, coarse));
    for (int i = 0; i < 10; ++i) {
      // A function the coarse DSLUT realizes, scrambled by a random transform.
      std::uint64_t bits = 0;
      const auto sram = rng();
      for (unsigned p = 0; p < (1u << k); ++p)
        bits |= ((sram >> coarse.bit(p)) & 1ull) << p;
      const auto f = apply_transform(TruthTable(k, bits), random_transform(rng, k));
      ASSERT_TRUE(match(coarse, f));
      EXPECT_TRUE(match(fine, f));
    }
  }
}

TEST(Match, SolutionsOnRandomK6) {
  Rng rng(36);
  const auto ba = random_ba(rng, 6, 40);
  int matched = 0;
  for (int i = 0; i < 40; ++i) {
    // Functions of a DSLUT built from a random SRAM, then scrambled by NPN.
    std::uint64_t bits = 0;
    const auto sram = rng();
    for (unsigned p = 0; p < 64; ++p)
      bits |= ((sram >> ba.bit(p)) & 1ull) << p;
    const auto f = apply_transform(TruthTable(6, bits), random_transform(rng, 6));
    const auto sol = match(ba, f);
    ASSERT_TRUE(sol);
    expect_solution_reproduces(ba, f, *sol);
    ++matched;
  }
  EXPECT_EQ(matched, 40);
}

TEST(Match, ForEachPinMapIsLexicographicAndSurjective) {
  std::vector<std::vector<int>> maps;
  for_each_pin_map(3, 2, [&](const std::vector<int>& m) {
    maps.push_back(m);
    return false;
  });
  // Surjections of 3 pins onto 2 variables: 2^3 - 2 = 6.
  ASSERT_EQ(maps.size(), 6u);
  EXPECT_TRUE(std::is_sorted(maps.begin(), maps.end()));
  EXPECT_EQ(maps.front(), (std::vector<int>{0, 0, 1}));
  std::size_t count = 0;
  for_each_pin_map(4, 4, [&](const std::vector<int>&) {
    ++count;
    return false;
  });
  EXPECT_EQ(count, 24u);
}

TEST(Coverage, Examples) {
  FuncLib lib(4);
  Rng rng(37);
  for (int i = 0; i < 30; ++i)
    ++lib.entry_for(random_tt(rng, 4)).n_cutbest;
  const auto full = coverage(BitAssignment::full_lut(4), lib, 4);
  EXPECT_GT(full.total, 0u);
  EXPECT_EQ(full.matched, full.total);
  EXPECT_DOUBLE_EQ(full.weighted_rate, 1.0);

  const auto one = coverage(BitAssignment(4, std::vector<std::uint8_t>(16, 0)), lib, 4);
  EXPECT_EQ(one.matched, 0u);
  EXPECT_EQ(one.total, full.total);
  EXPECT_THROW(coverage(BitAssignment::full_lut(3), lib, 4), UsageError);
  EXPECT_EQ(coverage(BitAssignment::full_lut(4), lib, 0).total, 0u);
}

TEST(Coverage, WeightedAndJobsIndependent) {
  FuncLib lib(4);
  lib.entry_for(TruthTable(2, 0x8)).n_cutbest = 3; // AND2: matched by [0,1,1,1]
  lib.entry_for(TruthTable(2, 0x6)).n_cutbest = 1; // XOR2: not matched
  const auto ba = ba_of(2, {0, 1, 1, 1});
  const auto r = coverage(ba, lib, 2, true);
  EXPECT_EQ(r.matched, 1u);
  EXPECT_EQ(r.total, 2u);
  EXPECT_DOUBLE_EQ(r.weighted_rate, 0.75);
  EXPECT_DOUBLE_EQ(r.rate(), 0.5);
  EXPECT_DOUBLE_EQ(coverage(ba, lib, 2, false).weighted_rate, 0.5);

  FuncLib big(5);
  Rng rng(38);
  for (int i = 0; i < 60; ++i)
    big.entry_for(random_tt(rng, 5)).n_cutbest += 1 + rng() % 4;
  const auto ba5 = random_ba(rng, 5, 20);
  const auto r1 = coverage(ba5, big, 5, true, 1);
  const auto r3 = coverage(ba5, big, 5, true, 3);
  EXPECT_EQ(r1.matched, r3.matched);
  EXPECT_EQ(r1.weighted_rate, r3.weighted_rate);
}
