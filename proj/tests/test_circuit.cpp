#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "pathsdd/circuit.hpp"
#include "pathsdd/compiler.hpp"
#include "pathsdd/error.hpp"
#include "pathsdd/generators.hpp"
#include "pathsdd/queries.hpp"

using namespace pathsdd;

namespace {

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

std::string parse_failure(const std::string& text) {
  try {
    deserialize_circuit(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    return e.what();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return {};
}

}  // namespace

TEST(Evaluate, Diamond) {
  Circuit c = compile(fixtures::diamond());
  EXPECT_TRUE(evaluate(c, State::from_string("1010")));
  EXPECT_TRUE(evaluate(c, State::from_string("0101")));
  EXPECT_FALSE(evaluate(c, State::from_string("1111")));
  EXPECT_FALSE(evaluate(c, State::from_string("0000")));
  EXPECT_FALSE(evaluate(c, State::from_string("1000")));
  EXPECT_THROW(evaluate(c, State::from_string("101")), Error);
}

TEST(Evaluate, SkippedLevelsAreFree) {
  Circuit c(3);
  NodeRef x = c.add_decision(1, kTrue, kFalse);
  c.set_root(x);
  for (std::uint64_t m = 0; m < 8; ++m) {
    EXPECT_EQ(evaluate(c, fixtures::state_of(3, m)), (m & 1) != 0);
  }
}

TEST(Stats, Examples) {
  EXPECT_EQ(stats(compile(fixtures::single_edge())).decision_count, 1u);
  auto s = stats(compile(fixtures::diamond()));
  EXPECT_LE(s.decision_count, 16u);
  EXPECT_EQ(s.terminal_count, 2u);
  EXPECT_EQ(s.wire_count, 2 * s.decision_count);
  EXPECT_EQ(s.depth, 4u);
  Circuit bottom(3);
  EXPECT_EQ(stats(bottom).decision_count, 0u);
  EXPECT_EQ(stats(bottom).depth, 0u);
}

TEST(Serialize, SingleEdgeFile) {
  const std::string text = serialize_circuit(compile(fixtures::single_edge()));
  EXPECT_EQ(line_count(text), 5u);
  EXPECT_EQ(text.rfind("pathsdd 1 1 3\nF 0\nT 1\nD 2 1 1 0\nroot 2\n", 0), 0u) << text;
}

TEST(Serialize, RoundTrip) {
  std::vector<Dag> graphs{fixtures::diamond(), parse_edge_list(fixtures::kDiamondShuffled),
                          gen_grid(3, 4), shuffle_edges(gen_grid(4, 3), 11)};
  for (std::uint64_t seed = 0; seed < 20; ++seed) graphs.push_back(random_dag(seed));
  for (const auto& d : graphs) {
    for (bool reduced : {false, true}) {
      CompileOptions opt;
      opt.reduce = reduced;
      Circuit c = compile(d, opt);
      Circuit back = deserialize_circuit(serialize_circuit(c));
      EXPECT_TRUE(back.same_nodes(c));
      EXPECT_EQ(serialize_circuit(back), serialize_circuit(c));
      EXPECT_EQ(stats(back).decision_count, stats(c).decision_count);
      if (d.edge_count() <= 16) EXPECT_EQ(fixtures::disagreements(back, d), 0u);
    }
  }
}

TEST(Serialize, BottomCircuit) {
  Circuit c = compile(parse_edge_list("s S\nt T\ne S A\ne B T\n"));
  Circuit back = deserialize_circuit(serialize_circuit(c));
  EXPECT_EQ(back.root(), kFalse);
  EXPECT_EQ(back.k(), 2u);
}

TEST(Serialize, Errors) {
  EXPECT_NE(parse_failure("pathsdd 1 2 4\nF 0\nT 1\nD 3 1 9 0\nroot 3\n").find("dangling"),
            std::string::npos);
  parse_failure("");
  parse_failure("pathsdd 2 1 3\nF 0\nT 1\nD 2 1 1 0\nroot 2\n");
  parse_failure("pathsdd 1 1 3\nF 0\nT 1\nD 2 2 1 0\nroot 2\n");
  parse_failure("pathsdd 1 1 3\nF 0\nT 1\nD 2 1 1 0\n");
  parse_failure("pathsdd 1 1 4\nF 0\nT 1\nD 2 1 1 0\nroot 2\n");
  parse_failure("pathsdd 1 2 4\nF 0\nT 1\nD 2 1 3 0\nD 3 2 1 0\nroot 2\n");
  parse_failure("pathsdd 1 1 3\nF 0\nT 1\nD 5 1 1 0\nroot 5\n");
}

TEST(ValidateStructure, CompiledCircuitsPass) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Dag d = shuffle_edges(random_dag(seed), seed + 1);
    Circuit c = compile(d);
    auto rep = validate_structure(c, StructureMode::QuasiReduced);
    EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
  }
}

TEST(ValidateStructure, SameLevelChildIsViolation) {
  Circuit c(2);
  NodeRef a = c.add_decision(2, kTrue, kFalse);
  NodeRef b = c.add_decision(2, a, kFalse);
  c.set_root(b);
  EXPECT_FALSE(validate_structure(c).ok());
  EXPECT_FALSE(validate_structure(c, StructureMode::QuasiReduced).ok());
}

TEST(ValidateStructure, QuasiReducedRejectsSkips) {
  Circuit c(2);
  NodeRef a = c.add_decision(2, kTrue, kFalse);
  c.set_root(a);
  EXPECT_TRUE(validate_structure(c).ok());
  EXPECT_FALSE(validate_structure(c, StructureMode::QuasiReduced).ok());
}

TEST(ValidateStructure, TerminalOnly) {
  Circuit c(3);
  EXPECT_TRUE(validate_structure(c).ok());
  EXPECT_TRUE(validate_structure(c, StructureMode::QuasiReduced).ok());
}

TEST(Circuit, ConstructorRejectsBadOrder) {
  EXPECT_THROW(Circuit(3, {1, 1, 2}), Error);
  EXPECT_THROW(Circuit(2, {1}), Error);
  Circuit c(2);
  EXPECT_THROW(c.add_decision(3, kTrue, kFalse), Error);
  EXPECT_THROW(c.add_decision(1, 7, kFalse), Error);
}

TEST(ToDot, Shapes) {
  const std::string dot = to_dot(compile(fixtures::diamond()));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("label=\"Y1\""), std::string::npos);
  EXPECT_NE(dot.find("shape=ellipse"), std::string::npos);
  EXPECT_NE(dot.find("shape=box"), std::string::npos);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);
  EXPECT_NE(dot.find("style=solid"), std::string::npos);
}
