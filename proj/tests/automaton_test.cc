#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <tuple>

#include "phisum/automaton.h"
#include "phisum/failure_forest.h"
#include "phisum/generators.h"
#include "phisum/stats.h"
#include "phisum/text_format.h"
#include "testing/instances.h"

namespace phisum {
namespace {

using R = RealSemiring;

template <Semiring K>
Automaton<K> Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadAutomaton<K>(in);
}

// (src, symbol, dst, weight) by name, for comparisons independent of ids.
template <Semiring K>
std::set<std::tuple<std::string, std::string, std::string, std::string>> ArcSet(
    const Automaton<K>& a) {
  std::set<std::tuple<std::string, std::string, std::string, std::string>> out;
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (int64_t i = a.arc_begin(q); i < a.arc_end(q); ++i) {
      out.insert({a.state_name(q), a.symbol_name(a.arc_label(i)),
                  a.state_name(a.arc_next(i)), K::Format(a.arc_weight(i))});
    }
  }
  return out;
}

TEST(Automaton, Fig2aIsValid) {
  const auto a = testing::LoadFixture<R>("fig2a.fsa");
  EXPECT_EQ(a.num_states(), 8);
  EXPECT_EQ(a.num_symbols(), 2);
  EXPECT_EQ(a.num_arcs(), 4);
  EXPECT_EQ(a.num_failures(), 3);
  EXPECT_FALSE(a.weighted_failures());
  EXPECT_EQ(a.validation().merged_parallel_arcs, 0);
  const StateId s1 = *a.state_table().Find("1");
  EXPECT_EQ(a.state_name(a.fallback(s1)), "2");
  EXPECT_EQ(a.num_out_symbols(s1), 0);
}

TEST(Automaton, MergesParallelArcsWithPlus) {
  const auto a = Parse<R>("arc 0 1 a 0.25\narc 0 1 a 0.5\narc 0 2 a 1\n");
  EXPECT_EQ(a.num_arcs(), 2);
  EXPECT_EQ(a.validation().merged_parallel_arcs, 1);
  EXPECT_EQ(a.arc_weight(0), 0.75);
  ASSERT_EQ(a.runs(0).size(), 1u);
  EXPECT_EQ(a.runs(0)[0].end - a.runs(0)[0].begin, 2);
}

TEST(Automaton, RejectsTwoFailureArcsFromOneState) {
  EXPECT_THROW(Parse<R>("phi 0 1\nphi 0 2\n"), DuplicateFailureArc);
}

TEST(Automaton, RejectsCycleThroughFailureArcsAndNamesIt) {
  try {
    testing::LoadFixture<R>("union_cycle.fsa");
    FAIL() << "expected a cycle error";
  } catch (const CycleError& e) {
    EXPECT_EQ(e.cycle(), (std::vector<std::string>{"1", "2", "1"}));
  }
}

TEST(Automaton, RejectsPlainCycle) {
  EXPECT_THROW(Parse<R>("arc x y a 1\narc y z a 1\narc z x b 1\n"), CycleError);
  EXPECT_THROW(Parse<R>("arc x x a 1\n"), CycleError);
  EXPECT_THROW(Parse<R>("phi x x\n"), CycleError);
}

TEST(Automaton, ReservesTheFailureSymbol) {
  EXPECT_THROW(Parse<R>("arc 0 1 phi 1\n"), ReservedSymbolError);
  EXPECT_THROW(Parse<R>("symbol phi\n"), ValidationError);
}

TEST(Automaton, EmptyInputHasNoStates) {
  const auto a = Parse<BooleanSemiring>("");
  EXPECT_EQ(a.num_states(), 0);
  EXPECT_EQ(a.num_arcs(), 0);
}

TEST(TextFormat, ReportsLineOfBadInput) {
  auto line_of = [](const std::string& text) {
    try {
      Parse<R>(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("arc 0 1 a 1\nbogus 1 2\n"), 2);
  EXPECT_EQ(line_of("# comment\n\narc 0 1 a\n"), 3);
  EXPECT_EQ(line_of("arc 0 1 a zero\n"), 1);
  EXPECT_EQ(line_of("init 0 1\ninit 0 1\n"), 2);
  EXPECT_EQ(line_of("final 0 1\nfinal 0 2\n"), 2);
  EXPECT_EQ(line_of("phi 0 1 2 3\n"), 1);
}

TEST(TextFormat, RejectsWeightsOutsideTheSemiring) {
  EXPECT_THROW(Parse<TropicalMinSemiring>("arc 0 1 a -inf\n"), ParseError);
  EXPECT_THROW(Parse<BooleanSemiring>("arc 0 1 a 0.5\n"), ParseError);
  EXPECT_THROW(Parse<CountSemiring>("init 0 2.5\n"), ParseError);
  EXPECT_NO_THROW(Parse<CountSemiring>("init 0 -3\n"));
}

TEST(TextFormat, FailureWeightTurnsOnWeightedMode) {
  EXPECT_TRUE(Parse<R>("phi 0 1 0.5\n").weighted_failures());
  EXPECT_TRUE(Parse<R>("phi 0 1 1\n").weighted_failures());
  EXPECT_FALSE(Parse<R>("phi 0 1\n").weighted_failures());
  EXPECT_EQ(Parse<R>("phi 0 1 0.5\n").failure_weight(0), 0.5);
}

TEST(TextFormat, StatesAndSymbolsNumberedByFirstMention) {
  const auto a = Parse<R>("arc q r b 1\narc r s a 1\nstate t\n");
  EXPECT_EQ(a.state_table().names(), (std::vector<std::string>{"q", "r", "s", "t"}));
  EXPECT_EQ(a.symbol_table().names(), (std::vector<std::string>{"b", "a"}));
}

template <Semiring K>
void ExpectRoundTrip(const Automaton<K>& a) {
  std::ostringstream out;
  WriteAutomaton(out, a);
  const auto b = Parse<K>(out.str());
  ASSERT_EQ(a.state_table(), b.state_table());
  ASSERT_EQ(a.symbol_table(), b.symbol_table());
  ASSERT_EQ(a.num_arcs(), b.num_arcs());
  EXPECT_EQ(a.weighted_failures() && a.num_failures() > 0,
            b.weighted_failures() && b.num_failures() > 0);
  for (int64_t i = 0; i < a.num_arcs(); ++i) {
    EXPECT_EQ(a.arc_label(i), b.arc_label(i));
    EXPECT_EQ(a.arc_next(i), b.arc_next(i));
    EXPECT_TRUE(K::Equal(a.arc_weight(i), b.arc_weight(i)));
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    EXPECT_EQ(a.fallback(q), b.fallback(q));
    EXPECT_TRUE(K::Equal(a.initial(q), b.initial(q)));
    EXPECT_TRUE(K::Equal(a.final_weight(q), b.final_weight(q)));
    if (a.has_fallback(q)) {
      EXPECT_TRUE(K::Equal(a.failure_weight(q), b.failure_weight(q)));
    }
  }
}

TEST(TextFormat, RoundTripsGeneratedAutomata) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    RandomParams p = testing::SweepParams(seed);
    p.weighted_phi = seed % 2 == 0;
    const Skeleton s = RandomSkeleton(p);
    ExpectRoundTrip(Instantiate<R>(s, seed));
    ExpectRoundTrip(Instantiate<LogSemiring>(s, seed));
    ExpectRoundTrip(Instantiate<TropicalMinSemiring>(s, seed));
    ExpectRoundTrip(Instantiate<CountSemiring>(s, seed));
  }
}

TEST(FailureExpand, Fig2aGainsExactlyTheFourDashedArcs) {
  const auto a = testing::LoadFixture<R>("fig2a.fsa");
  const auto e = FailureExpand(a);
  EXPECT_EQ(e.num_failures(), 0);
  EXPECT_EQ(e.num_arcs() - a.num_arcs(), 4);
  const auto before = ArcSet(a);
  const auto after = ArcSet(e);
  std::set<std::tuple<std::string, std::string, std::string, std::string>> added;
  for (const auto& arc : after) {
    if (!before.count(arc)) added.insert(arc);
  }
  using Arc = std::tuple<std::string, std::string, std::string, std::string>;
  EXPECT_EQ(added, (std::set<Arc>{{"1", "a", "3", "0.5"},
                                   {"1", "b", "5", "0.5"},
                                   {"2", "b", "5", "0.5"},
                                   {"7", "a", "6", "0.5"}}));
  EXPECT_EQ(after, ArcSet(testing::LoadFixture<R>("fig2b.fsa")));
}

TEST(FailureExpand, FragmentGainsTheShadowedSymbolOnly) {
  const auto a = testing::LoadFixture<R>("fragment.fsa");
  const auto e = FailureExpand(a);
  EXPECT_EQ(e.num_arcs() - a.num_arcs(), 1);
  EXPECT_TRUE(ArcSet(e).count({"q", "c", "q3", "0.4"}));
  EXPECT_FALSE(ArcSet(e).count({"q", "b", "q4", "0.5"}));
}

TEST(FailureExpand, ScalesInheritedArcsByFailureWeights) {
  const auto a = Parse<R>(
      "arc r x a 0.5\nphi m r 0.25\nphi t m 0.5\narc m y b 1\n");
  const auto e = FailureExpand(a);
  const auto arcs = ArcSet(e);
  EXPECT_TRUE(arcs.count({"m", "a", "x", "0.125"}));
  EXPECT_TRUE(arcs.count({"t", "a", "x", "0.0625"}));
  EXPECT_TRUE(arcs.count({"t", "b", "y", "0.5"}));
}

// Added arcs in a deterministic automaton: (s̄ − s)|Σ||Q| exactly.
TEST(FailureExpand, DeterministicAddedArcCountMatchesSparsity) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    RandomParams p;
    p.states = 5 + static_cast<int32_t>(seed % 40);
    p.symbols = 1 + static_cast<int32_t>(seed % 7);
    p.density = 0.1 + 0.08 * static_cast<double>(seed % 10);
    p.phi_prob = 0.6;
    p.seed = seed;
    const auto a = Instantiate<CountSemiring>(RandomSkeleton(p), seed);
    const FailureForest f(a);
    const SparsityStats st = ComputeStats(a, f);
    const auto e = FailureExpand(a);
    // Integer form of (s̄ − s)|Σ||Q|.
    EXPECT_EQ(e.num_arcs() - a.num_arcs(),
              st.total_expanded_out_symbols - st.total_out_symbols);
    EXPECT_NEAR((st.s_bar - st.s) * a.num_symbols() * a.num_states(),
                static_cast<double>(e.num_arcs() - a.num_arcs()), 1e-9);
  }
}

}  // namespace
}  // namespace phisum
