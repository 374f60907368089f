#include "dslut/aig.hpp"
#include "dslut/cuts.hpp"
#include "dslut/error.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace dslut;
using namespace dslut::test;

namespace {
const char* kAnd2 = "aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n";
const char* kInverter = "aag 1 1 0 1 0\n2\n3\n";
} // namespace

TEST(Aig, ParseAnd2) {
  const auto aig = parse_aiger(kAnd2);
  EXPECT_EQ(aig.num_inputs(), 2u);
  EXPECT_EQ(aig.num_ands(), 1u);
  ASSERT_EQ(aig.outputs().size(), 1u);
  EXPECT_EQ(aig.outputs()[0], AigLit(3, false));
  EXPECT_EQ(aig.and_node(3).fanin0.node() + aig.and_node(3).fanin1.node(), 3u);
  EXPECT_EQ(simulate(aig, {true, true}), std::vector<bool>{true});
  EXPECT_EQ(simulate(aig, {true, false}), std::vector<bool>{false});
  EXPECT_THROW(simulate(aig, {true}), UsageError);
}

TEST(Aig, ParseInverter) {
  const auto aig = parse_aiger(kInverter);
  ASSERT_EQ(aig.outputs().size(), 1u);
  EXPECT_EQ(aig.outputs()[0], AigLit(1, true));
  EXPECT_EQ(simulate(aig, {false}), std::vector<bool>{true});
}

TEST(Aig, ParseErrors) {
  EXPECT_THROW(parse_aiger(""), ParseError);
  EXPECT_THROW(parse_aiger("aag 3 2\n"), ParseError);
  EXPECT_THROW(parse_aiger("xyz 1 1 0 1 0\n2\n3\n"), ParseError);
  // Dangling literal: output 8 refers to an undefined variable.
  EXPECT_THROW(parse_aiger("aag 3 2 0 1 1\n2\n4\n8\n6 2 4\n"), ParseError);
  // Defined twice.
  EXPECT_THROW(parse_aiger("aag 3 2 0 1 1\n2\n2\n6\n6 2 4\n"), ParseError);
  // Truncated AND section.
  EXPECT_THROW(parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n"), ParseError);
  try {
    parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(Aig, OutOfOrderDefinitionRejected) {
  // AND 8 uses AND 6 which is listed after it.
  EXPECT_THROW(parse_aiger("aag 4 2 0 1 2\n2\n4\n8\n8 6 2\n6 2 4\n"), ParseError);
}

TEST(Aig, CyclicDefinitionRejected) {
  EXPECT_THROW(parse_aiger("aag 4 2 0 1 2\n2\n4\n8\n8 6 2\n6 8 4\n"), ParseError);
}

TEST(Aig, LatchesBecomeInputsAndOutputs) {
  // One PI (2), one latch (4, next = 6), output 4, AND 6 = 2 & 4.
  const auto aig = parse_aiger("aag 3 1 1 1 1\n2\n4 6\n4\n6 2 4\n");
  EXPECT_EQ(aig.num_inputs(), 2u);
  EXPECT_EQ(aig.num_latches(), 1u);
  EXPECT_EQ(aig.outputs().size(), 2u);
}

TEST(Aig, BinaryFormat) {
  std::string bin = "aig 3 2 0 1 1\n6\n";
  bin += static_cast<char>(2);
  bin += static_cast<char>(2);
  const auto aig = parse_aiger(bin);
  ASSERT_EQ(aig.num_ands(), 1u);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      EXPECT_EQ(simulate(aig, {a == 1, b == 1}), simulate(parse_aiger(kAnd2), {a == 1, b == 1}));
}

TEST(Aig, Levels) {
  EXPECT_EQ(levels(parse_aiger(kAnd2))[3], 1);

  Aig tree(4);
  const auto l = tree.add_and(tree.input(0), tree.input(1));
  const auto r = tree.add_and(tree.input(2), tree.input(3));
  const auto root = tree.add_and(l, r);
  EXPECT_EQ(levels(tree)[root.node()], 2);

  Aig chain(6);
  AigLit x = chain.input(0);
  for (std::uint32_t i = 1; i <= 5; ++i)
    x = chain.add_and(x, chain.input(i));
  EXPECT_EQ(levels(chain)[x.node()], 5);
}

TEST(Aig, WriteParseRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto aig = random_aig(rng, 1 + rng() % 6, 1 + rng() % 15);
    EXPECT_EQ(parse_aiger(write_aiger(aig)), aig);
  }
  for (const auto* name : {"adder4", "mult3x3", "cmp4", "mux8", "parity8", "and7", "majority5", "c17"}) {
    const auto aig = read_aiger_file(data_path(std::string("data/netlists/") + name + ".aag"));
    EXPECT_EQ(parse_aiger(write_aiger(aig)), aig) << name;
  }
}

TEST(Aig, WordSimulationMatchesScalar) {
  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const auto aig = random_aig(rng, 1 + rng() % 6, 1 + rng() % 20);
    std::vector<std::uint64_t> words(aig.num_inputs());
    for (auto& w : words)
      w = rng();
    const auto values = simulate_words(aig, words);
    for (unsigned b = 0; b < 64; b += 7) {
      std::vector<bool> in;
      for (auto w : words)
        in.push_back((w >> b) & 1u);
      const auto out = simulate(aig, in);
      for (std::size_t o = 0; o < out.size(); ++o) {
        const auto lit = aig.outputs()[o];
        EXPECT_EQ(out[o], static_cast<bool>(((values[lit.node()] >> b) & 1u) ^ lit.complemented()));
      }
    }
  }
}

TEST(Aig, SimulateAgreesWithFullSupportCutFunction) {
  Rng rng(13);
  for (int i = 0; i < 40; ++i) {
    const auto aig = random_aig(rng, 2 + rng() % 5, 1 + rng() % 12);
    std::vector<std::uint32_t> leaves;
    for (std::uint32_t j = 0; j < aig.num_inputs(); ++j)
      leaves.push_back(1 + j);
    for (std::uint32_t n = aig.num_inputs() + 1; n < aig.num_nodes(); ++n) {
      const auto tt = cut_function(aig, n, leaves);
      for (std::uint32_t m = 0; m < (1u << aig.num_inputs()); ++m) {
        std::vector<std::uint64_t> words;
        for (std::uint32_t j = 0; j < aig.num_inputs(); ++j)
          words.push_back((m >> j) & 1u ? ~0ull : 0ull);
        EXPECT_EQ(tt.bit(m), static_cast<bool>(simulate_words(aig, words)[n] & 1u));
      }
    }
  }
}
