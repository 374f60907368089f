#include "dslut/error.hpp"
#include "dslut/mapper.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace dslut;
using namespace dslut::test;

namespace {

const char* kSamples[] = {"adder4", "mult3x3", "cmp4", "mux8", "parity8", "and7", "majority5", "c17"};

Aig sample(const std::string& name) { return read_aiger_file(data_path("data/netlists/" + name + ".aag")); }

BitAssignment full_lut(int k) {
  std::vector<int> labels(static_cast<std::size_t>(1 << k));
  std::iota(labels.begin(), labels.end(), 0);
  return BitAssignment::from_labels(k, labels);
}

Aig and_tree(int n, bool balanced) {
  Aig aig(static_cast<std::uint32_t>(n));
  std::vector<AigLit> layer;
  for (int i = 0; i < n; ++i)
    layer.push_back(aig.input(static_cast<std::uint32_t>(i)));
  if (balanced) {
    while (layer.size() > 1) {
      std::vector<AigLit> next;
      for (std::size_t i = 0; i + 1 < layer.size(); i += 2)
        next.push_back(aig.add_and(layer[i], layer[i + 1]));
      if (layer.size() % 2)
        next.push_back(layer.back());
      layer = next;
    }
  } else {
    for (std::size_t i = 1; i < layer.size(); ++i)
      layer[0] = aig.add_and(layer[0], layer[i]);
  }
  aig.add_output(layer[0]);
  return aig;
}

/// Compares the mapped network with the AIG: exhaustively up to 12 inputs,
/// otherwise on 1024 random vectors.
void expect_equivalent(const Aig& aig, const Mapping& m, Rng& rng) {
  const auto n = aig.num_inputs();
  const bool exhaustive = n <= 12;
  const std::size_t blocks = exhaustive ? std::max<std::size_t>(1, (std::size_t{1} << n) / 64) : 16;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    std::vector<std::uint64_t> words(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!exhaustive) {
        words[i] = rng();
        continue;
      }
      // Pattern index = 64 * blk + bit.
      for (unsigned b = 0; b < 64; ++b) {
        const std::uint64_t idx = 64 * blk + b;
        words[i] |= ((idx >> i) & 1u) << b;
      }
    }
    const auto ref = simulate_words(aig, words);
    const auto got = simulate_mapping(aig, m, words);
    ASSERT_EQ(got.size(), aig.outputs().size());
    for (std::size_t o = 0; o < got.size(); ++o) {
      const auto lit = aig.outputs()[o];
      const auto want = lit.complemented() ? ~ref[lit.node()] : ref[lit.node()];
      ASSERT_EQ(got[o], want) << "output " << o;
    }
  }
}

} // namespace

TEST(Mapper, AndSevenExamples) {
  const auto chain = sample("and7");
  const auto lut6 = map_netlist(chain, {6, kUnlimitedCuts, nullptr});
  EXPECT_EQ(lut6.max_level, 2);
  EXPECT_EQ(lut6.nplb(), 2u);
  const auto lut4 = map_netlist(chain, {4, kUnlimitedCuts, nullptr});
  EXPECT_EQ(lut4.max_level, 2);
  EXPECT_GE(lut4.nplb(), 2u);

  // Balanced tree: depth 2 as well; the fewer-leaves tie-break costs a cell.
  const auto tree = and_tree(7, true);
  const auto bal = map_netlist(tree, {6, kUnlimitedCuts, nullptr});
  EXPECT_EQ(bal.max_level, 2);
  EXPECT_EQ(bal.nplb(), 3u);
  check_mapping(tree, bal);
}

TEST(Mapper, SingleAndTwoOnLut4CompatibleDslut) {
  Rng rng(71);
  const auto aig = parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n");
  for (const auto& ba : {full_lut(4), random_lut4_compatible_ba(rng, 6, 5)}) {
    MatchCache cache(ba);
    const auto m = map_netlist(aig, {ba.num_inputs(), 8, &cache});
    EXPECT_EQ(m.max_level, 1);
    EXPECT_EQ(m.nplb(), 1u);
    ASSERT_TRUE(m.cells[0].config);
    check_mapping(aig, m);
    expect_equivalent(aig, m, rng);
  }
}

TEST(Mapper, OutputsOnInputsAndConstants) {
  // Output 0 is input 1, output 1 is constant true, output 2 is NOT input 2.
  const auto aig = parse_aiger("aag 2 2 0 3 0\n2\n4\n2\n1\n5\n");
  const auto m = map_netlist(aig, {4, 8, nullptr});
  EXPECT_EQ(m.nplb(), 0u);
  EXPECT_EQ(m.max_level, 0);
  Rng rng(72);
  expect_equivalent(aig, m, rng);
}

TEST(Mapper, DepthMatchesBruteForceOptimum) {
  Rng rng(73);
  int nontrivial = 0;
  for (int i = 0; i < 25; ++i) {
    const auto aig = random_aig(rng, 3 + rng() % 5, 4 + rng() % 9);
    ASSERT_LE(aig.num_ands(), 12u);
    for (int k = 2; k <= 4; ++k) {
      const auto m = map_netlist(aig, {k, kUnlimitedCuts, nullptr});
      EXPECT_EQ(m.max_level, brute_force_min_depth(aig, k)) << write_aiger(aig) << "k=" << k;
      nontrivial += m.max_level > 1;
      check_mapping(aig, m);
      expect_equivalent(aig, m, rng);
    }
  }
  EXPECT_GT(nontrivial, 10);
}

TEST(Mapper, PriorityCutsAreSoundOnRandomAigs) {
  Rng rng(74);
  for (int i = 0; i < 30; ++i) {
    const auto aig = random_aig(rng, 4 + rng() % 12, 10 + rng() % 60, 1 + rng() % 4);
    for (int k : {4, 6}) {
      const auto lut = map_netlist(aig, {k, 8, nullptr});
      check_mapping(aig, lut);
      expect_equivalent(aig, lut, rng);
      EXPECT_GE(lut.max_level, map_netlist(aig, {k, kUnlimitedCuts, nullptr}).max_level);
    }
  }
}

TEST(Mapper, DslutMappingSimulatesCorrectly) {
  Rng rng(75);
  for (int trial = 0; trial < 3; ++trial) {
    const auto ba = random_ba(rng, 5, 4 + static_cast<int>(rng() % 12));
    MatchCache cache(ba);
    for (int i = 0; i < 10; ++i) {
      const auto aig = random_aig(rng, 3 + rng() % 8, 5 + rng() % 30, 1 + rng() % 3);
      try {
        const auto m = map_netlist(aig, {5, 8, &cache});
        check_mapping(aig, m);
        expect_equivalent(aig, m, rng);
        for (const auto& c : m.cells)
          EXPECT_TRUE(c.config);
      } catch (const UnmappableError&) {
        // Some assignment cannot realize any cut of a node; tolerated here.
      }
    }
  }
}

TEST(Mapper, SandwichOnSampleNetlists) {
  Rng rng(76);
  const auto ba = random_lut4_compatible_ba(rng, 6, 8);
  MatchCache cache(ba);
  for (const auto* name : kSamples) {
    const auto aig = sample(name);
    const auto lut6 = map_netlist(aig, {6, kUnlimitedCuts, nullptr});
    const auto d6 = map_netlist(aig, {6, kUnlimitedCuts, &cache});
    const auto lut4 = map_netlist(aig, {4, kUnlimitedCuts, nullptr});
    EXPECT_LE(lut6.max_level, d6.max_level) << name;
    EXPECT_LE(d6.max_level, lut4.max_level) << name;
    check_mapping(aig, d6);
    expect_equivalent(aig, d6, rng);
    expect_equivalent(aig, lut6, rng);
  }
  EXPECT_GT(cache.hits(), 0u);
}

TEST(Mapper, Errors) {
  const auto aig = parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n");
  // One SRAM bit: only constants are realizable.
  MatchCache one(BitAssignment(2, {0, 0, 0, 0}));
  EXPECT_THROW(map_netlist(aig, {2, 8, &one}), UnmappableError);
  EXPECT_THROW(map_netlist(aig, {3, 8, &one}), UsageError);
}

TEST(MatchCache, MemoAndFileRoundTrip) {
  MatchCache cache(BitAssignment(2, {0, 1, 1, 1}));
  EXPECT_TRUE(cache.matches(TruthTable(2, 0x8)));
  EXPECT_TRUE(cache.matches(TruthTable(2, 0x7))); // NAND: same class
  EXPECT_FALSE(cache.matches(TruthTable(2, 0x6)));
  EXPECT_TRUE(cache.matches(TruthTable(2, 0xA))); // single variable
  EXPECT_EQ(cache.lookups(), 4u);
  EXPECT_EQ(cache.hits(), 1u);
  EXPECT_EQ(cache.size(), 3u);

  const auto text = cache.write();
  MatchCache other(cache.ba());
  other.load("# comment\n" + text);
  EXPECT_EQ(other.write(), text);
  EXPECT_FALSE(other.matches(TruthTable(2, 0x9)));
  EXPECT_EQ(other.hits(), 1u);

  EXPECT_THROW(other.load("6 MATCH\n"), ParseError);   // conflicts with NOMATCH
  EXPECT_THROW(other.load("8 MATCH\n"), ParseError);   // not canonical
  EXPECT_THROW(other.load("1 MAYBE\n"), ParseError);
  EXPECT_THROW(other.load("zz MATCH\n"), ParseError);
  EXPECT_NO_THROW(other.load("1 MATCH\n"));
}

TEST(MatchCache, AgreesWithMatchOnRandomFunctions) {
  Rng rng(77);
  const auto ba = random_ba(rng, 4, 6);
  MatchCache cache(ba);
  for (int i = 0; i < 300; ++i) {
    const TruthTable f(4, rng() & 0xFFFF);
    EXPECT_EQ(cache.matches(f), match(ba, f).has_value()) << f.to_hex();
  }
}

TEST(MapReport, ArithmeticAndGeomean) {
  const auto aig = sample("and7");
  const auto m = map_netlist(aig, {6, kUnlimitedCuts, nullptr});
  const auto r = make_report("and7", m, 16.905, 100.0);
  EXPECT_EQ(r.nplb, 2.0);
  EXPECT_NEAR(r.area, 33.81, 1e-9);
  EXPECT_NEAR(r.dap_level, 2 * 33.81, 1e-9);
  EXPECT_NEAR(r.dap_delay, 2 * 100.0 * 33.81, 1e-9);

  const std::vector<MapReport> same{r, r, r};
  const auto g = geomean(same);
  EXPECT_EQ(g.name, "geomean");
  EXPECT_NEAR(g.area, r.area, 1e-9);
  EXPECT_NEAR(g.max_level, r.max_level, 1e-9);

  MapReport a{"a", 1, 2, 4, 8, 16}, b{"b", 4, 8, 16, 32, 64};
  const std::vector<MapReport> two{a, b};
  const auto gm = geomean(two);
  EXPECT_NEAR(gm.max_level, 2.0, 1e-12);
  EXPECT_NEAR(gm.nplb, 4.0, 1e-12);
  EXPECT_NEAR(gm.dap_delay, 32.0, 1e-12);
  b.area = 0;
  EXPECT_EQ(geomean(std::vector<MapReport>{a, b}).area, 0.0);
}
