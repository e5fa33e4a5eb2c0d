#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "vfstl/stl/monitor.hpp"
#include "vfstl/stl/parser.hpp"

using namespace vfstl::stl;

namespace {

Signal make(std::initializer_list<std::pair<std::string, std::vector<double>>> chans) {
  Signal s;
  for (const auto& [name, xs] : chans) s.set_channel(name, xs);
  return s;
}

}  // namespace

TEST(Parser, SinglePredicate) {
  Formula f = parse_formula("R>0.8");
  EXPECT_EQ(f, Formula::predicate("R", Comparison::Greater, 0.8));
}

TEST(Parser, NestedTemporal) {
  Formula f = parse_formula("F[0,2] G[0,5] R>0.8");
  auto expected = Formula::eventually({0, 2}, Formula::globally({0, 5}, Formula::predicate("R", Comparison::Greater, 0.8)));
  EXPECT_EQ(f, expected);
}

TEST(Parser, AllComparisons) {
  EXPECT_EQ(parse_formula("a>=1").comparison(), Comparison::GreaterEqual);
  EXPECT_EQ(parse_formula("a<1").comparison(), Comparison::Less);
  EXPECT_EQ(parse_formula("a <= -1.5").comparison(), Comparison::LessEqual);
  EXPECT_DOUBLE_EQ(parse_formula("a <= -1.5").threshold(), -1.5);
  EXPECT_DOUBLE_EQ(parse_formula("a>1e-3").threshold(), 1e-3);
}

TEST(Parser, PrecedenceAndOverOr) {
  Formula f = parse_formula("a>0 | b>0 & c>0");
  ASSERT_EQ(f.kind(), Kind::Or);
  EXPECT_EQ(f.operand(1).kind(), Kind::And);
}

TEST(Parser, NegatedGroupAsUntilLeftOperand) {
  Formula f = parse_formula("(!(Y>0.8)) U[0,2] R>0.8");
  ASSERT_EQ(f.kind(), Kind::Until);
  EXPECT_EQ(f.operand(0).kind(), Kind::Not);
  Formula g = parse_formula("!(Y>0.8) U[0,2] R>0.8");
  EXPECT_EQ(g.kind(), Kind::Not);
  EXPECT_EQ(g.operand().kind(), Kind::Until);
}

TEST(Parser, UntilIsRightNested) {
  Formula f = parse_formula("a>0 U[0,1] b>0 U[0,2] c>0");
  ASSERT_EQ(f.kind(), Kind::Until);
  EXPECT_EQ(f.operand(1).kind(), Kind::Until);
}

TEST(Parser, ReversedIntervalIsIntervalError) {
  EXPECT_THROW(parse_formula("F[3,1] x>0"), IntervalError);
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    parse_formula("F[0,2 x>0.5");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_formula("a>"), ParseError);
  EXPECT_THROW(parse_formula("a=>1"), ParseError);
  EXPECT_THROW(parse_formula("(a>1"), ParseError);
  EXPECT_THROW(parse_formula("a>1 b>2"), ParseError);
  EXPECT_THROW(parse_formula("F[-1,2] a>1"), ParseError);
}

TEST(Formatter, Canonical) {
  EXPECT_EQ(format_formula(Formula::predicate("R", Comparison::Greater, 0.8)), "R>0.8");
  EXPECT_EQ(format_formula(Formula::negation(Formula::predicate("Y", Comparison::Greater, 0.8))), "!(Y>0.8)");
  EXPECT_EQ(format_formula(parse_formula("F[0,3](R>0.8&F[0,3] J>0.8)")), "F[0,3] (R>0.8 & F[0,3] J>0.8)");
}

TEST(Formatter, RoundTripRandomTrees) {
  std::mt19937_64 rng(11);
  oracle::FormulaGen gen;
  gen.max_depth = 5;
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen(rng);
    const std::string text = format_formula(f);
    Formula back = parse_formula(text);
    ASSERT_EQ(back, f) << text;
    ASSERT_EQ(format_formula(back), text);
  }
}

TEST(Formula, Horizon) {
  EXPECT_EQ(horizon(parse_formula("x>0.8")), 0);
  EXPECT_EQ(horizon(parse_formula("F[0,2] G[0,5] R>0.8")), 7);
  EXPECT_EQ(horizon(parse_formula("a>0 U[1,3] b>0")), 3);
  EXPECT_EQ(horizon(parse_formula("!(F[0,4] a>0) & G[1,2] b>0")), 4);
}

TEST(Formula, ChannelsAndDepth) {
  Formula f = parse_formula("F[0,1] (b>0 & a>0) | a<1");
  EXPECT_EQ(channels(f), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(depth(f), 3);
}

TEST(Formula, InvalidIntervalRejected) {
  auto p = Formula::predicate("a", Comparison::Greater, 0);
  EXPECT_THROW(Formula::eventually({2, 1}, p), std::invalid_argument);
  EXPECT_THROW(Formula::until({-1, 1}, p, p), std::invalid_argument);
}

TEST(Monitor, ConstantPredicate) {
  EXPECT_DOUBLE_EQ(robustness(make({{"x", {0.5}}}), parse_formula("x>0"), 0), 0.5);
}

TEST(Monitor, EventuallyWindowMax) {
  EXPECT_NEAR(robustness(make({{"x", {0.1, 0.5, 0.9}}}), parse_formula("F[0,2] x>0.8"), 0), 0.1, 1e-12);
}

TEST(Monitor, UntilExample) {
  Signal s = make({{"a", {0.9, 0.9, 0.2}}, {"b", {0.0, 0.0, 0.7}}});
  Formula f = parse_formula("a>0.5 U[0,2] b>0.5");
  EXPECT_NEAR(robustness(s, f, 0), -0.3, 1e-12);
  EXPECT_NEAR(robustness(s, f, 0), oracle::rho(s, f, 0), 1e-15);
}

TEST(Monitor, LessThanFlipsSign) {
  EXPECT_DOUBLE_EQ(robustness(make({{"x", {0.25}}}), parse_formula("x<1"), 0), 0.75);
}

TEST(Monitor, EvaluationAtLaterTime) {
  Signal s = make({{"x", {0, 0, 1, 0}}});
  EXPECT_DOUBLE_EQ(robustness(s, parse_formula("x>0.5"), 2), 0.5);
  EXPECT_DOUBLE_EQ(robustness(s, parse_formula("G[0,1] x>-1"), 2), 1.0);
}

TEST(Monitor, ShortSignalIsError) {
  Signal s = make({{"x", {0, 0, 0}}});
  EXPECT_THROW(robustness(s, parse_formula("F[0,5] x>0"), 0), SignalTooShortError);
  EXPECT_THROW(robustness(s, parse_formula("F[0,1] x>0"), 2), SignalTooShortError);
  EXPECT_THROW(satisfies(s, parse_formula("F[0,5] x>0"), 0), SignalTooShortError);
}

TEST(Monitor, UnknownChannel) {
  EXPECT_THROW(robustness(make({{"x", {0}}}), parse_formula("y>0"), 0), UnknownChannelError);
}

TEST(Monitor, BooleanExamples) {
  EXPECT_TRUE(satisfies(make({{"x", {1}}}), parse_formula("x>0"), 0));
  EXPECT_FALSE(satisfies(make({{"x", {0, 0, 0}}}), parse_formula("F[0,2] x>0.5"), 0));
  // Strictness only shows in the Boolean semantics.
  EXPECT_FALSE(satisfies(make({{"x", {0.5}}}), parse_formula("x>0.5"), 0));
  EXPECT_TRUE(satisfies(make({{"x", {0.5}}}), parse_formula("x>=0.5"), 0));
}

TEST(MonitorProperty, MatchesDefinitionOracle) {
  std::mt19937_64 rng(3);
  oracle::FormulaGen gen;
  for (int i = 0; i < 500; ++i) {
    Formula f = gen(rng);
    Signal s = oracle::random_signal(rng, gen.channels, static_cast<std::size_t>(horizon(f) + 3));
    for (int t = 0; t <= 2; ++t) ASSERT_NEAR(robustness(s, f, t), oracle::rho(s, f, t), 1e-12) << format_formula(f);
  }
}

TEST(MonitorProperty, SatisfiesMatchesBooleanOracle) {
  std::mt19937_64 rng(4);
  oracle::FormulaGen gen;
  for (int i = 0; i < 500; ++i) {
    Formula f = gen(rng);
    Signal s = oracle::random_signal(rng, gen.channels, static_cast<std::size_t>(horizon(f) + 3));
    ASSERT_EQ(satisfies(s, f, 1), oracle::sat(s, f, 1)) << format_formula(f);
  }
}

TEST(MonitorProperty, SignSoundness) {
  std::mt19937_64 rng(5);
  oracle::FormulaGen gen;
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen(rng);
    Signal s = oracle::random_signal(rng, gen.channels, static_cast<std::size_t>(horizon(f) + 3));
    const double r = robustness(s, f, 0);
    if (r != 0.0) {
      ASSERT_EQ(r > 0, satisfies(s, f, 0)) << format_formula(f);
    }
  }
}

TEST(MonitorProperty, NegationAntisymmetricAndDeMorgan) {
  std::mt19937_64 rng(6);
  oracle::FormulaGen gen;
  gen.max_depth = 2;
  for (int i = 0; i < 300; ++i) {
    Formula a = gen(rng), b = gen(rng);
    const int h = std::max(horizon(a), horizon(b));
    Signal s = oracle::random_signal(rng, gen.channels, static_cast<std::size_t>(h + 1));
    ASSERT_EQ(robustness(s, Formula::negation(a), 0), -robustness(s, a, 0));
    Formula lhs = Formula::disjunction(a, b);
    Formula rhs = Formula::negation(Formula::conjunction(Formula::negation(a), Formula::negation(b)));
    ASSERT_EQ(robustness(s, lhs, 0), robustness(s, rhs, 0));
  }
}

TEST(MonitorProperty, HorizonSufficiency) {
  std::mt19937_64 rng(7);
  oracle::FormulaGen gen;
  for (int i = 0; i < 300; ++i) {
    Formula f = gen(rng);
    const int h = horizon(f);
    Signal s = oracle::random_signal(rng, gen.channels, static_cast<std::size_t>(h + 4));
    const double before = robustness(s, f, 1);
    Signal mutated;
    for (const auto& [name, xs] : s.channels()) {
      auto ys = xs;
      for (std::size_t j = static_cast<std::size_t>(h + 2); j < ys.size(); ++j) ys[j] = 100.0 - ys[j];
      mutated.set_channel(name, ys);
    }
    ASSERT_EQ(robustness(mutated, f, 1), before) << format_formula(f);
  }
}

TEST(MonitorProperty, MonotoneInChannelsForPositiveFormulas) {
  std::mt19937_64 rng(8);
  oracle::FormulaGen gen;
  gen.negation_free = true;
  gen.upper_only = true;
  std::uniform_real_distribution<double> bump(0.0, 0.5);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen(rng);
    Signal s = oracle::random_signal(rng, gen.channels, static_cast<std::size_t>(horizon(f) + 1));
    Signal up;
    for (const auto& [name, xs] : s.channels()) {
      auto ys = xs;
      if (name == "x") {
        for (auto& y : ys) y += bump(rng);
      }
      up.set_channel(name, ys);
    }
    ASSERT_GE(robustness(up, f, 0), robustness(s, f, 0)) << format_formula(f);
  }
}

TEST(Signal, CsvRoundTrip) {
  Signal s = make({{"b", {1.5, -2}}, {"a", {0.1, 0.25}}});
  std::stringstream io;
  write_signal_csv(io, s);
  EXPECT_EQ(read_signal_csv(io), s);
}

TEST(Signal, CsvErrors) {
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(read_signal_csv(ragged), std::invalid_argument);
  std::istringstream bad("a\nfoo\n");
  EXPECT_THROW(read_signal_csv(bad), std::invalid_argument);
  std::istringstream empty("");
  EXPECT_THROW(read_signal_csv(empty), std::invalid_argument);
}

TEST(Signal, LengthMismatchRejected) {
  Signal s;
  s.set_channel("a", {1, 2});
  EXPECT_THROW(s.set_channel("b", {1}), std::invalid_argument);
  EXPECT_THROW(s.set_channel("c", {}), std::invalid_argument);
}
