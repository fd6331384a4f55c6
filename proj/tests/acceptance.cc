// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "phisum/aggregator.h"
#include "phisum/failure_forest.h"
#include "phisum/generators.h"
#include "phisum/pathsum.h"
#include "phisum/splitting.h"
#include "phisum/stats.h"
#include "testing/aggregator_model.h"
#include "testing/axioms.h"
#include "testing/instances.h"
#include "testing/oracles.h"

namespace phisum {
namespace {

// Collects the first few failures of one criterion.
class Check {
 public:
  void Fail(const std::string& why) {
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(why);
  }
  void Expect(bool ok, const std::string& why) {
    ++checks_;
    if (!ok) Fail(why);
  }
  void Count(int64_t n = 1) { checks_ += n; }
  bool ok() const { return failures_ == 0; }
  int64_t checks() const { return checks_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  int64_t checks_ = 0;
  int64_t failures_ = 0;
  std::vector<std::string> messages_;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool Report(int number, const std::string& name, const Check& c,
            const std::string& detail) {
  std::cout << (c.ok() ? "PASS" : "FAIL") << ' ' << number << ' ' << name
            << ": " << detail << '\n';
  for (const auto& m : c.messages()) std::cout << "    " << m << '\n';
  return c.ok();
}

// 1. Every applicable algorithm matches brute force on 500 small instances.
template <Semiring K>
void OracleSweep(Check& c, uint64_t instances) {
  for (uint64_t i = 0; i < instances; ++i) {
    const Automaton<K> a =
        Instantiate<K>(RandomSkeleton(testing::SweepParams(i)), i * 101 + 7);
    const auto brute = BruteForcePathsum(a).z;
    for (const auto& run : testing::ApplicableRuns<K>()) {
      const auto z = Pathsum(a, run.options).z;
      c.Expect(WeightsAgree<K>(z, brute),
               std::string(K::kName) + " instance " + std::to_string(i) + " " +
                   run.name + ": " + K::Format(z) + " vs " + K::Format(brute));
    }
  }
}

bool OracleEquivalence() {
  const auto start = Clock::now();
  Check c;
  constexpr uint64_t kInstances = 500;
  OracleSweep<BooleanSemiring>(c, kInstances);
  OracleSweep<TropicalMinSemiring>(c, kInstances);
  OracleSweep<TropicalMaxSemiring>(c, kInstances);
  OracleSweep<RealSemiring>(c, kInstances);
  OracleSweep<LogSemiring>(c, kInstances);
  OracleSweep<CountSemiring>(c, kInstances);
  const double secs = Seconds(start);
  c.Expect(secs < 60.0, "took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << kInstances << " instances x 6 semirings, " << c.checks()
    << " comparisons in " << secs << " s";
  return Report(1, "oracle-equivalence", c, d.str());
}

// 2. Figure fixtures.
using ArcTuple = std::tuple<std::string, std::string, std::string, std::string>;

std::set<ArcTuple> ArcSet(const Automaton<RealSemiring>& a) {
  std::set<ArcTuple> out;
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (int64_t i = a.arc_begin(q); i < a.arc_end(q); ++i) {
      out.insert({a.state_name(q), a.symbol_name(a.arc_label(i)),
                  a.state_name(a.arc_next(i)), RealSemiring::Format(a.arc_weight(i))});
    }
  }
  return out;
}

bool FigureFixtures() {
  using R = RealSemiring;
  Check c;
  const auto fig2a = testing::LoadFixture<R>("fig2a.fsa");
  const auto fig2b = testing::LoadFixture<R>("fig2b.fsa");
  const auto expanded = FailureExpand(fig2a);
  const auto before = ArcSet(fig2a);
  const auto after = ArcSet(expanded);
  std::set<ArcTuple> added;
  for (const auto& arc : after) {
    if (!before.count(arc)) added.insert(arc);
  }
  c.Expect(added.size() == 4, "expansion added " + std::to_string(added.size()) + " arcs");
  c.Expect(after == ArcSet(fig2b), "expanded arcs differ from the expanded fixture");
  c.Expect(expanded.num_failures() == 0, "expansion kept failure arcs");

  const FailureForest f(fig2a);
  std::vector<std::set<std::string>> big;
  std::string root;
  for (int32_t t = 0; t < f.num_trees(); ++t) {
    if (f.tree_size(t) == 1) continue;
    std::set<std::string> names;
    for (StateId q : f.tree_states(t)) names.insert(fig2a.state_name(q));
    big.push_back(names);
    root = fig2a.state_name(f.root(t));
  }
  c.Expect(big.size() == 1, "expected one non-singleton tree");
  c.Expect(!big.empty() && big[0] == std::set<std::string>{"1", "2", "4", "7"},
           "tree states differ from {1,2,4,7}");
  c.Expect(root == "4", "tree root is " + root);

  const auto fragment = testing::LoadFixture<R>("fragment.fsa");
  const StateId q = *fragment.state_table().Find("q");
  for (Algorithm alg :
       {Algorithm::kExpand, Algorithm::kMemo, Algorithm::kRing, Algorithm::kGeneral}) {
    for (OrderStrategy order : {OrderStrategy::kKahn, OrderStrategy::kGreedy}) {
      PathsumOptions o;
      o.algorithm = alg;
      o.order = order;
      const double beta = Pathsum(fragment, o).table.beta[q];
      c.Expect(std::abs(beta - 1.0) <= 1e-12,
               std::string(AlgorithmName(alg)) + ": beta(q) = " + R::Format(beta));
    }
  }
  return Report(2, "figure-fixtures", c,
                "expansion adds 4 arcs, one tree {1,2,4,7} rooted at 4, "
                "fragment beta(q) = 1 under expand/memo/ring/general");
}

// 3. Added arcs on deterministic automata.
bool ExpansionCount() {
  Check c;
  for (uint64_t i = 0; i < 100; ++i) {
    RandomParams p;
    p.states = 5 + static_cast<int32_t>(i % 60);
    p.symbols = 1 + static_cast<int32_t>(i % 9);
    p.density = 0.05 + 0.09 * static_cast<double>(i % 10);
    p.phi_prob = 0.2 + 0.07 * static_cast<double>(i % 10);
    p.extra_arc_prob = 0.0;
    p.seed = 5000 + i;
    const auto a = Instantiate<CountSemiring>(RandomSkeleton(p), i);
    const SparsityStats st = ComputeStats(a, FailureForest(a));
    PathsumOptions o;
    o.algorithm = Algorithm::kExpand;
    const auto expanded = static_cast<int64_t>(Pathsum(a, o).counters.expanded_arcs);
    // s and s̄ are fractions of |Σ||Q|; their product with it is an integer.
    const double scaled = (st.s_bar - st.s) * a.num_symbols() * a.num_states();
    const int64_t from_sparsity = std::llround(scaled);
    c.Expect(std::abs(scaled - static_cast<double>(from_sparsity)) < 1e-6 &&
                 expanded == from_sparsity &&
                 expanded == st.total_expanded_out_symbols - st.total_out_symbols,
             "instance " + std::to_string(i) + ": expanded " + std::to_string(expanded) +
                 " vs " + std::to_string(scaled));
  }
  return Report(3, "expansion-count", c,
                std::to_string(c.checks()) +
                    " deterministic instances, added arcs = (s_bar - s)|Sigma||Q|");
}

// 4. Complexity counters.
bool ComplexityCounters() {
  Check ring, once, twice;
  for (uint64_t i = 0; i < 500; ++i) {
    const auto a = Instantiate<RealSemiring>(RandomSkeleton(testing::SweepParams(i)), i);
    const SparsityStats st = ComputeStats(a, FailureForest(a));
    PathsumOptions o;
    o.algorithm = Algorithm::kRing;
    const auto calls = static_cast<int64_t>(Pathsum(a, o).counters.beta_qa_calls);
    const int64_t bound = a.num_arcs() + st.total_subtree_symbols;
    ring.Expect(calls <= bound, "instance " + std::to_string(i) + ": " +
                                    std::to_string(calls) + " calls, bound " +
                                    std::to_string(bound));
  }
  for (uint64_t seed = 0; seed < 100; ++seed) {
    LatticeParams p;
    p.length = 3 + static_cast<int32_t>(seed % 6);
    p.symbols = 2 + static_cast<int32_t>(seed % 4);
    p.order = 2 + static_cast<int32_t>(seed % 3);
    p.context_prob = 0.4 + 0.05 * static_cast<double>(seed % 10);
    p.weighted_phi = seed % 2 == 1;
    p.seed = seed;
    const auto a = Instantiate<LogSemiring>(LatticeSkeleton(p), seed);
    const FailureForest f(a);
    PathsumOptions o;
    o.order = OrderStrategy::kGreedy;
    const auto r = Pathsum(a, o);
    if (!r.compatible || !testing::CompatibleByDefinition(MakeOrder(a, o.order).states, f)) {
      once.Fail("lattice " + std::to_string(seed) + ": order not compatible");
      continue;
    }
    for (StateId q = 0; q < a.num_states(); ++q) {
      const uint32_t want = f.IsSingleton(q) ? 0 : 1;
      once.Expect(r.visits_per_state[q] == want,
                  "lattice " + std::to_string(seed) + " state " + a.state_name(q) +
                      ": " + std::to_string(r.visits_per_state[q]) + " visits");
    }
  }
  uint32_t most_at_3 = 0;
  for (int k = 3; k <= 12; ++k) {
    const auto a = InstantiateUnit<RealSemiring>(ShoelacesSkeleton(k));
    const auto r = Pathsum(a, PathsumOptions{});
    const uint32_t most =
        *std::max_element(r.visits_per_state.begin(), r.visits_per_state.end());
    if (k == 3) most_at_3 = most;
    twice.Expect(r.order == "kahn" && most >= 2,
                 std::to_string(k) + " rungs: at most " + std::to_string(most) + " visits");
  }
  Check all;
  for (const Check* part : {&ring, &once, &twice}) {
    all.Count(part->checks());
    for (const auto& m : part->messages()) all.Fail(m);
  }
  std::ostringstream d;
  d << "(a) ring beta_qa within |E| + sum|hat Sigma| on " << ring.checks()
    << " instances " << (ring.ok() ? "ok" : "FAILED") << "; (b) one visit per tree state on "
    << "compatible lattice orders " << (once.ok() ? "ok" : "FAILED")
    << "; (c) shoelaces under kahn revisit states (" << most_at_3
    << " visits at 3 rungs) " << (twice.ok() ? "ok" : "FAILED");
  return Report(4, "complexity-counters", all, d.str());
}

// 5. Aggregator model checking.
template <Semiring K, Aggregator Agg>
void AggregatorChecks(Check& c, const std::string& name) {
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    if (auto f = testing::ModelCheck<K, Agg>(seed, 10'000, seed == 1 ? 5 : 64)) {
      c.Fail(name + ": " + *f);
    }
    c.Count();
  }
  if (auto f = testing::UndoRestoresCheck<K, Agg>(11, 300)) c.Fail(name + ": " + *f);
  c.Count();
}

bool AggregatorModel() {
  Check c;
  AggregatorChecks<BooleanSemiring, FenwickAggregator<BooleanSemiring>>(c, "fenwick/boolean");
  AggregatorChecks<TropicalMinSemiring, FenwickAggregator<TropicalMinSemiring>>(
      c, "fenwick/tropical-min");
  AggregatorChecks<TropicalMaxSemiring, FenwickAggregator<TropicalMaxSemiring>>(
      c, "fenwick/tropical-max");
  AggregatorChecks<RealSemiring, FenwickAggregator<RealSemiring>>(c, "fenwick/real");
  AggregatorChecks<LogSemiring, FenwickAggregator<LogSemiring>>(c, "fenwick/log");
  AggregatorChecks<CountSemiring, FenwickAggregator<CountSemiring>>(c, "fenwick/count");
  AggregatorChecks<RealSemiring, RingAggregator<RealSemiring>>(c, "ring/real");
  AggregatorChecks<CountSemiring, RingAggregator<CountSemiring>>(c, "ring/count");
  AggregatorChecks<RealSemiring, DivisionRingAggregator<RealSemiring>>(c, "division-ring/real");
  for (int keys : {2, 50, 1000, 5000}) {
    if (auto f = testing::FenwickWriteBoundCheck<LogSemiring>(keys, 10'000, keys)) {
      c.Fail("fenwick write bound: " + *f);
    }
    c.Count();
  }
  return Report(5, "aggregator-model", c,
                "fenwick x 6 semirings, ring x {real, count}, division-ring x real; "
                "10^4-op sequences, full undo, <= 2 ceil(log2 N) + 2 writes per set");
}

// 6. Static split plans.
bool SplitExactness() {
  using R = RealSemiring;
  Check c;
  int64_t trees = 0, split_trees = 0;
  for (uint64_t i = 0; i < 200; ++i) {
    const auto a = Instantiate<R>(RandomSkeleton(testing::ForestParams(i)), i);
    const FailureForest f(a);
    const SparsityStats st = ComputeStats(a, f);
    const StateOrder order = MakeOrder(a, OrderStrategy::kKahn);
    for (int64_t cu : {int64_t{1}, LogUpdateCost(a.num_symbols())}) {
      const SplitCosts costs = MakeSplitCosts(a, st, a.weighted_failures(),
                                              CopyCostModel::kInternedKeys, cu);
      const SplitPlan plan = OptimalStaticSplit(f, costs);
      for (int32_t t = 0; t < f.num_trees(); ++t) {
        const int64_t best = testing::ExhaustiveBestImprovement(f, t, costs);
        c.Expect(plan.trees[t].improvement == best,
                 "forest " + std::to_string(i) + " tree " + std::to_string(t) +
                     ": dp " + std::to_string(plan.trees[t].improvement) +
                     " exhaustive " + std::to_string(best));
        ++trees;
        split_trees += !plan.trees[t].split_states.empty();
      }
      GeneralOptions g;
      g.update_cost = cu;
      g.reset_to_root = true;
      const auto none = GeneralBackward<R>(a, order, g);
      g.split = SplitMode::kStatic;
      g.plan = &plan;
      const auto split = GeneralBackward<R>(a, order, g);
      const double brute = BruteForcePathsum(a).z;
      c.Expect(WeightsAgree<R>(split.z, brute) && WeightsAgree<R>(none.z, brute),
               "forest " + std::to_string(i) + ": Z changed under the plan");
      const int64_t measured =
          none.counters.modeled_cost() - split.counters.modeled_cost();
      c.Expect(measured == plan.improvement,
               "forest " + std::to_string(i) + " update cost " + std::to_string(cu) +
                   ": measured " + std::to_string(measured) + " predicted " +
                   std::to_string(plan.improvement));
    }
  }
  std::ostringstream d;
  d << "200 forests, " << trees << " tree checks (" << split_trees
    << " with splits), C_U in {1, log|Sigma|}; Z kept, pessimal saving = predicted";
  return Report(6, "split-dp-exactness", c, d.str());
}

// 7. Semiring axioms.
bool SemiringAxioms() {
  Check c;
  auto run = [&](auto k) {
    using K = decltype(k);
    if (auto f = testing::CheckAxioms<K>(2024, 10'000)) c.Fail(*f);
    c.Count();
  };
  run(BooleanSemiring{});
  run(TropicalMinSemiring{});
  run(TropicalMaxSemiring{});
  run(RealSemiring{});
  run(LogSemiring{});
  run(CountSemiring{});
  return Report(7, "semiring-axioms", c, "6 semirings x 10^4 random triples");
}

// 8. Dynamic splitting costs at most twice the always-copy strategy.
template <Semiring K>
void TwiceBound(Check& c, const Automaton<K>& a, const StateOrder& order,
                const std::string& where, double& worst) {
  for (bool reset : {false, true}) {
    GeneralOptions g;
    g.reset_to_root = reset;
    g.split = SplitMode::kDynamic;
    const auto dyn = GeneralBackward<K>(a, order, g);
    g.split = SplitMode::kAlways;
    const auto always = GeneralBackward<K>(a, order, g);
    const int64_t d = dyn.counters.modeled_cost();
    const int64_t m = always.counters.modeled_cost();
    if (m > 0) worst = std::max(worst, static_cast<double>(d) / static_cast<double>(m));
    c.Expect(d <= 2 * m, where + (reset ? " (reset)" : "") + ": dynamic " +
                             std::to_string(d) + " always " + std::to_string(m));
  }
}

bool DynamicTwice() {
  Check c;
  double worst = 0;
  for (int k = 2; k <= 40; ++k) {
    const auto a = InstantiateUnit<RealSemiring>(ShoelacesSkeleton(k));
    TwiceBound(c, a, MakeOrder(a, OrderStrategy::kKahn), std::to_string(k) + " rungs", worst);
    const auto t = InstantiateUnit<TropicalMinSemiring>(ShoelacesSkeleton(k));
    TwiceBound(c, t, MakeOrder(t, OrderStrategy::kKahn), std::to_string(k) + " rungs", worst);
  }
  std::mt19937_64 rng(99);
  for (uint64_t i = 0; i < 300; ++i) {
    RandomParams p = testing::ForestParams(i);
    p.states = 5 + static_cast<int32_t>(i % 60);
    p.symbols = 2 + static_cast<int32_t>(i % 12);
    const Skeleton s = RandomSkeleton(p);
    StateOrder order;
    order.strategy = "random";
    const auto real = Instantiate<RealSemiring>(s, i);
    order.states = testing::RandomReverseTopological(real, rng);
    TwiceBound(c, real, order, "random " + std::to_string(i), worst);
    const auto trop = Instantiate<TropicalMinSemiring>(s, i);
    TwiceBound(c, trop, order, "random " + std::to_string(i), worst);
  }
  std::ostringstream d;
  d << c.checks() << " runs on shoelaces and random orders, pessimal and not; "
    << "worst dynamic/always ratio " << worst;
  return Report(8, "dynamic-split-2x", c, d.str());
}

}  // namespace
}  // namespace phisum

int main() {
  using namespace phisum;
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);
  bool ok = true;
  const std::vector<std::function<bool()>> criteria = {
      OracleEquivalence, FigureFixtures, ExpansionCount, ComplexityCounters,
      AggregatorModel,   SplitExactness, SemiringAxioms, DynamicTwice};
  for (const auto& criterion : criteria) {
    try {
      ok = criterion() && ok;
    } catch (const std::exception& e) {
      std::cout << "FAIL (exception) " << e.what() << '\n';
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
