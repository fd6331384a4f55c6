#ifndef PHISUM_PATHSUM_H_
#define PHISUM_PATHSUM_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phisum/aggregator.h"
#include "phisum/automaton.h"
#include "phisum/errors.h"
#include "phisum/failure_forest.h"
#include "phisum/semiring.h"
#include "phisum/splitting.h"
#include "phisum/stats.h"
#include "phisum/toposort.h"

namespace phisum {

enum class Algorithm { kBruteForce, kExpand, kMemo, kRing, kGeneral };
enum class OrderStrategy { kKahn, kGreedy };

std::string_view AlgorithmName(Algorithm a);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
std::string_view OrderStrategyName(OrderStrategy o);
std::optional<OrderStrategy> ParseOrderStrategy(std::string_view name);

struct Counters {
  OpCounts ops;
  uint64_t beta_qa_calls = 0;
  uint64_t visit_calls = 0;
  uint64_t leave_calls = 0;
  uint64_t aggregator_sets = 0;
  uint64_t aggregator_mults = 0;
  uint64_t aggregator_copies = 0;
  uint64_t aggregator_node_writes = 0;
  uint64_t expanded_arcs = 0;
  uint64_t failure_copies = 0;
  uint64_t paths = 0;
  int64_t modeled_visit_cost = 0;
  int64_t modeled_copy_cost = 0;

  int64_t modeled_cost() const { return modeled_visit_cost + modeled_copy_cost; }
};

// β(q) = ρ(q) ⊕ β(q, Σ); beta_symbol[q] holds the memoized β(q, a) the
// algorithm kept, sorted by symbol.
template <Semiring K>
struct BackwardTable {
  using Weight = typename K::Weight;
  std::vector<Weight> beta;
  std::vector<Weight> beta_sigma;
  std::vector<std::vector<std::pair<Label, Weight>>> beta_symbol;

  void Resize(int32_t n) {
    beta.assign(n, K::Zero());
    beta_sigma.assign(n, K::Zero());
    beta_symbol.assign(n, {});
  }
};

template <Semiring K>
struct PathsumReport {
  using Weight = typename K::Weight;
  Weight z = K::Zero();
  Counters counters;
  std::string algorithm;
  std::string semiring{K::kName};
  std::string order;
  bool compatible = false;
  bool weighted = false;
  std::string split = "none";
  BackwardTable<K> table;
  std::vector<uint32_t> visits_per_state;
  std::vector<uint32_t> failure_copies_per_state;
  std::vector<StateId> split_states;
};

// β(q, a) = ⊕ over a-arcs q → q' of w ⊗ β(q'), or, when a ∉ Σ(q) and q has
// a fallback, w_φ(q) ⊗ β(q_φ, a). Memoized per state; β(q') must already be
// final for every arc target, which a reverse topological sweep ensures.
template <Semiring K>
class SymbolBackward {
 public:
  using Weight = typename K::Weight;

  SymbolBackward(const Automaton<K>& a, const std::vector<Weight>& beta,
                 Counters& counters, bool weighted)
      : a_(a), beta_(beta), counters_(counters), ops_(&counters.ops),
        weighted_(weighted), memo_(a.num_states()) {}

  // β(q, a) for a ∈ Σ(q).
  Weight Local(StateId q, const Topology::SymbolRun& run) {
    ++counters_.beta_qa_calls;
    auto& m = memo_[q];
    if (auto it = m.find(run.label); it != m.end()) return it->second;
    const Weight v = Compute(run);
    m.emplace(run.label, v);
    return v;
  }

  Weight Get(StateId q, Label label) {
    ++counters_.beta_qa_calls;
    if (auto it = memo_[q].find(label); it != memo_[q].end()) return it->second;
    chain_.clear();
    StateId p = q;
    Weight v = K::Zero();
    while (true) {
      if (p != q) {
        ++counters_.beta_qa_calls;  // the recursive call on p
        if (auto it = memo_[p].find(label); it != memo_[p].end()) {
          v = it->second;
          break;
        }
      }
      if (const auto* run = a_.FindRun(p, label)) {
        v = Compute(*run);
        memo_[p].emplace(label, v);
        break;
      }
      if (!a_.has_fallback(p)) {
        memo_[p].emplace(label, v);  // Zero
        break;
      }
      chain_.push_back(p);
      p = a_.fallback(p);
    }
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      if (weighted_) v = ops_.Times(a_.failure_weight(*it), v);
      memo_[*it].emplace(label, v);
    }
    return v;
  }

  std::vector<std::pair<Label, Weight>> Memo(StateId q) const {
    return {memo_[q].begin(), memo_[q].end()};
  }

 private:
  Weight Compute(const Topology::SymbolRun& run) {
    Weight sum = K::Zero();
    for (int64_t i = run.begin; i < run.end; ++i) {
      const Weight term = ops_.Times(a_.arc_weight(i), beta_[a_.arc_next(i)]);
      sum = i == run.begin ? term : ops_.Plus(sum, term);
    }
    return sum;
  }

  const Automaton<K>& a_;
  const std::vector<Weight>& beta_;
  Counters& counters_;
  Ops<K> ops_;
  bool weighted_;
  std::vector<std::map<Label, Weight>> memo_;
  std::vector<StateId> chain_;
};

namespace internal {

template <Semiring K>
typename K::Weight SumInitial(const Automaton<K>& a,
                              const std::vector<typename K::Weight>& beta,
                              const Ops<K>& ops) {
  typename K::Weight z = K::Zero();
  for (StateId q = 0; q < a.num_states(); ++q) {
    z = ops.Plus(z, ops.Times(a.initial(q), beta[q]));
  }
  return z;
}

}  // namespace internal

// Sum over every path of the failure-expanded automaton, enumerated one by
// one. The expansion is rebuilt here straight from its definition rather
// than through FailureExpand. Paths starting at a state with zero initial
// weight are skipped since they contribute Zero.
template <Semiring K>
PathsumReport<K> BruteForcePathsum(const Automaton<K>& a,
                                   uint64_t path_budget = 1'000'000) {
  using Weight = typename K::Weight;
  struct Out {
    StateId dst;
    Weight w;
  };
  const int32_t n = a.num_states();
  PathsumReport<K> r;
  r.algorithm = std::string(AlgorithmName(Algorithm::kBruteForce));
  r.weighted = a.weighted_failures();
  Ops<K> ops(&r.counters.ops);

  std::vector<std::vector<Out>> out(n);
  std::vector<uint8_t> seen(a.num_symbols());
  for (StateId q = 0; q < n; ++q) {
    std::fill(seen.begin(), seen.end(), 0);
    // Product of the failure weights taken so far along q's chain.
    Weight scale = K::One();
    for (StateId p = q; p != kNoState; p = a.fallback(p)) {
      for (const auto& run : a.runs(p)) {
        if (seen[run.label]) continue;
        seen[run.label] = 1;
        for (int64_t i = run.begin; i < run.end; ++i) {
          out[q].push_back({a.arc_next(i), p == q || !a.weighted_failures()
                                               ? a.arc_weight(i)
                                               : K::Times(scale, a.arc_weight(i))});
        }
      }
      if (a.weighted_failures() && a.has_fallback(p)) {
        scale = K::Times(scale, a.failure_weight(p));
      }
    }
  }

  struct Frame {
    StateId q;
    Weight w;
  };
  std::vector<Frame> stack;
  for (StateId s = 0; s < n; ++s) {
    if (K::Equal(a.initial(s), K::Zero())) continue;
    stack.push_back({s, a.initial(s)});
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (++r.counters.paths > path_budget) {
        throw PathBudgetExceeded("more than " + std::to_string(path_budget) +
                                 " paths");
      }
      r.z = ops.Plus(r.z, ops.Times(f.w, a.final_weight(f.q)));
      for (const Out& o : out[f.q]) {
        stack.push_back({o.dst, ops.Times(f.w, o.w)});
      }
    }
  }
  return r;
}

// Expands failure arcs, then runs the plain backward recursion.
template <Semiring K>
PathsumReport<K> ExpandBackward(const Automaton<K>& a, const StateOrder& order) {
  using Weight = typename K::Weight;
  PathsumReport<K> r;
  r.algorithm = std::string(AlgorithmName(Algorithm::kExpand));
  r.order = order.strategy;
  r.weighted = a.weighted_failures();
  Ops<K> ops(&r.counters.ops);
  const Automaton<K> e = FailureExpand(a);
  r.counters.expanded_arcs = static_cast<uint64_t>(e.num_arcs() - a.num_arcs());
  r.table.Resize(a.num_states());
  for (StateId q : order.states) {
    Weight sum = K::Zero();
    for (int64_t i = e.arc_begin(q); i < e.arc_end(q); ++i) {
      const Weight term = ops.Times(e.arc_weight(i), r.table.beta[e.arc_next(i)]);
      sum = i == e.arc_begin(q) ? term : ops.Plus(sum, term);
    }
    r.table.beta_sigma[q] = sum;
    r.table.beta[q] = ops.Plus(a.final_weight(q), sum);
  }
  r.z = internal::SumInitial(a, r.table.beta, ops);
  return r;
}

// Keeps every β(q, b) with b ∈ Σ̄(q): local values for Σ(q), and copies
// of the fallback's values (scaled by the failure weight) for the rest.
template <Semiring K>
PathsumReport<K> MemoizationBackward(const Automaton<K>& a,
                                     const StateOrder& order,
                                     bool force_weighted = false) {
  using Weight = typename K::Weight;
  const int32_t n = a.num_states();
  const bool weighted = a.weighted_failures() || force_weighted;
  PathsumReport<K> r;
  r.algorithm = std::string(AlgorithmName(Algorithm::kMemo));
  r.order = order.strategy;
  r.weighted = weighted;
  r.table.Resize(n);
  r.failure_copies_per_state.assign(n, 0);
  Ops<K> ops(&r.counters.ops);
  auto& tables = r.table.beta_symbol;
  for (StateId q : order.states) {
    auto& mine = tables[q];
    Weight local = K::Zero();
    bool first = true;
    for (const auto& run : a.runs(q)) {
      Weight v = K::Zero();
      for (int64_t i = run.begin; i < run.end; ++i) {
        const Weight term = ops.Times(a.arc_weight(i), r.table.beta[a.arc_next(i)]);
        v = i == run.begin ? term : ops.Plus(v, term);
      }
      ++r.counters.beta_qa_calls;
      mine.push_back({run.label, v});
      local = first ? v : ops.Plus(local, v);
      first = false;
    }
    Weight failure = K::Zero();
    if (a.has_fallback(q)) {
      const size_t own = mine.size();
      bool first_copy = true;
      for (const auto& [label, v] : tables[a.fallback(q)]) {
        if (a.FindRun(q, label) != nullptr) continue;
        const Weight copied = weighted ? ops.Times(a.failure_weight(q), v) : v;
        mine.push_back({label, copied});
        failure = first_copy ? copied : ops.Plus(failure, copied);
        first_copy = false;
        ++r.counters.failure_copies;
        ++r.failure_copies_per_state[q];
      }
      std::inplace_merge(mine.begin(), mine.begin() + own, mine.end());
    }
    r.table.beta_sigma[q] = ops.Plus(local, failure);
    r.table.beta[q] = ops.Plus(a.final_weight(q), r.table.beta_sigma[q]);
  }
  r.z = internal::SumInitial(a, r.table.beta, ops);
  return r;
}

// Ring semirings: β(q, Σ) = local ⊕ w_φ(q) ⊗ (β(q_φ, Σ) ⊖ β(q_φ, Σ(q))),
// with β(·, a) computed on demand.
template <Ring K>
PathsumReport<K> RingBackward(const Automaton<K>& a, const StateOrder& order,
                              bool force_weighted = false) {
  using Weight = typename K::Weight;
  const int32_t n = a.num_states();
  const bool weighted = a.weighted_failures() || force_weighted;
  PathsumReport<K> r;
  r.algorithm = std::string(AlgorithmName(Algorithm::kRing));
  r.order = order.strategy;
  r.weighted = weighted;
  r.table.Resize(n);
  Ops<K> ops(&r.counters.ops);
  SymbolBackward<K> sb(a, r.table.beta, r.counters, weighted);
  for (StateId q : order.states) {
    Weight local = K::Zero();
    bool first = true;
    for (const auto& run : a.runs(q)) {
      const Weight v = sb.Get(q, run.label);
      local = first ? v : ops.Plus(local, v);
      first = false;
    }
    Weight sigma = local;
    if (a.has_fallback(q)) {
      const StateId f = a.fallback(q);
      Weight shadowed = K::Zero();
      first = true;
      for (const auto& run : a.runs(q)) {
        const Weight v = sb.Get(f, run.label);
        shadowed = first ? v : ops.Plus(shadowed, v);
        first = false;
      }
      Weight rest = ops.Minus(r.table.beta_sigma[f], shadowed);
      if (weighted) rest = ops.Times(a.failure_weight(q), rest);
      sigma = ops.Plus(local, rest);
    }
    r.table.beta_sigma[q] = sigma;
    r.table.beta[q] = ops.Plus(a.final_weight(q), sigma);
  }
  r.z = internal::SumInitial(a, r.table.beta, ops);
  for (StateId q = 0; q < n; ++q) r.table.beta_symbol[q] = sb.Memo(q);
  return r;
}

struct GeneralOptions {
  SplitMode split = SplitMode::kNone;
  CopyCostModel copy_model = CopyCostModel::kInternedKeys;
  int64_t update_cost = 0;  // 0: 1 for ring aggregators, ceil(log2 |Σ|) else
  const SplitPlan* plan = nullptr;  // required for SplitMode::kStatic
  bool force_weighted = false;
  // After each state, walk the aggregator back to its tree root, so every
  // state pays the full climb. Used to measure worst-case costs.
  bool reset_to_root = false;
  std::ostream* dump = nullptr;
};

template <class Agg>
inline constexpr bool kConstantTimeUpdates = false;
template <Ring K>
inline constexpr bool kConstantTimeUpdates<RingAggregator<K>> = true;
template <DivisionRing K>
inline constexpr bool kConstantTimeUpdates<DivisionRingAggregator<K>> = true;

template <class Agg>
int64_t DefaultUpdateCost(int32_t num_symbols) {
  return kConstantTimeUpdates<Agg> ? 1 : LogUpdateCost(num_symbols);
}

// Visiting q makes an aggregator that represents q_φ represent q.
template <Semiring K, Aggregator Agg>
void VisitState(Agg& g, const Automaton<K>& a, SymbolBackward<K>& sb,
                StateId q, bool weighted) {
  if (weighted && a.has_fallback(q)) g.Mult(a.failure_weight(q));
  for (const auto& run : a.runs(q)) g.Set(run.label, sb.Local(q, run));
}

template <Semiring K, Aggregator Agg>
void LeaveState(Agg& g, const Automaton<K>& a, StateId q, bool weighted) {
  g.Undo(a.num_out_symbols(q) + (weighted && a.has_fallback(q) ? 1 : 0));
}

// One aggregator per failure tree (or per split-off subtree). Each state is
// reached from the state the aggregator currently represents by leaving
// down to their common fallback and visiting back up.
template <Semiring K, Aggregator Agg = typename DefaultAggregator<K>::type>
PathsumReport<K> GeneralBackward(const Automaton<K>& a, const StateOrder& order,
                                 const GeneralOptions& opt = {}) {
  using Weight = typename K::Weight;
  const int32_t n = a.num_states();
  const bool weighted = a.weighted_failures() || opt.force_weighted;
  const FailureForest forest(a);
  PathsumReport<K> r;
  r.algorithm = std::string(AlgorithmName(Algorithm::kGeneral));
  r.order = order.strategy;
  r.weighted = weighted;
  r.split = std::string(SplitModeName(opt.split));
  r.table.Resize(n);
  r.visits_per_state.assign(n, 0);
  Counters& c = r.counters;
  Ops<K> ops(&c.ops);
  SymbolBackward<K> sb(a, r.table.beta, c, weighted);
  const int64_t cu = opt.update_cost > 0 ? opt.update_cost
                                         : DefaultUpdateCost<Agg>(a.num_symbols());
  if (opt.split == SplitMode::kStatic && opt.plan == nullptr) {
    throw Error("static splitting needs a plan");
  }

  auto updates_of = [&](StateId s) -> int64_t {
    return a.num_out_symbols(s) + (weighted && a.has_fallback(s) ? 1 : 0);
  };
  std::vector<uint8_t> tree_root(n, 0);
  for (StateId q = 0; q < n; ++q) {
    tree_root[q] = forest.is_root(q) ||
                   (opt.split == SplitMode::kStatic && opt.plan->is_split[q]);
  }
  std::vector<std::unique_ptr<Agg>> agg(n);
  std::vector<StateId> frontier(n, kNoState);
  std::vector<int64_t> visit_cost(n, 0);

  auto visit = [&](Agg& g, StateId s) {
    ++c.visit_calls;
    ++r.visits_per_state[s];
    if (weighted && a.has_fallback(s)) ++c.aggregator_mults;
    c.aggregator_sets += a.num_out_symbols(s);
    VisitState(g, a, sb, s, weighted);
  };
  auto leave = [&](Agg& g, StateId s) {
    ++c.leave_calls;
    LeaveState(g, a, s, weighted);
  };
  auto copy_cost = [&](const Agg& src, StateId s) -> int64_t {
    if (opt.copy_model == CopyCostModel::kAlphabet) return a.num_symbols();
    int64_t keys = static_cast<int64_t>(src.size());
    for (const auto& run : a.runs(s)) keys += src.Contains(run.label) ? 0 : 1;
    return keys;
  };
  std::vector<std::pair<Label, Weight>> updates;
  // Copies the aggregator at s's fallback and makes it represent s. With
  // `defer_local`, s's own symbols are set only when s is processed, since
  // the targets of its arcs may not be final yet.
  std::vector<uint8_t> local_pending(n, 0);
  auto split_off = [&](const Agg& src, StateId s, bool defer_local) {
    c.modeled_copy_cost += copy_cost(src, s);
    updates.clear();
    if (!defer_local) {
      for (const auto& run : a.runs(s)) updates.push_back({run.label, sb.Local(s, run)});
      c.aggregator_sets += updates.size();
    }
    local_pending[s] = defer_local;
    const Weight* scale = weighted ? &a.failure_weight(s) : nullptr;
    agg[s] = std::make_unique<Agg>(src.CopyAndUpdate(scale, updates));
    ++c.aggregator_copies;
    tree_root[s] = 1;
    frontier[s] = s;
    r.split_states.push_back(s);
  };

  std::vector<StateId> path;
  for (StateId q : order.states) {
    if (forest.IsSingleton(q)) {
      Weight sum = K::Zero();
      bool first = true;
      for (const auto& run : a.runs(q)) {
        const Weight v = sb.Local(q, run);
        sum = first ? v : ops.Plus(sum, v);
        first = false;
      }
      r.table.beta_sigma[q] = sum;
      r.table.beta[q] = ops.Plus(a.final_weight(q), sum);
      continue;
    }
    StateId root = q;
    while (!tree_root[root]) root = forest.fallback(root);
    if (root == q) {
      if (forest.is_root(q)) {
        agg[q] = std::make_unique<Agg>(&c.ops);
        visit(*agg[q], q);
        frontier[q] = q;
      } else if (!agg[q]) {
        throw Error("split state processed before its fallback");
      } else if (local_pending[q]) {
        for (const auto& run : a.runs(q)) agg[q]->Set(run.label, sb.Local(q, run));
        c.aggregator_sets += a.num_out_symbols(q);
        local_pending[q] = 0;
      }
    } else {
      Agg* g = agg[root].get();
      StateId at = frontier[root];
      while (!forest.OnFallbackPath(q, at)) {
        leave(*g, at);
        at = forest.fallback(at);
      }
      path.clear();
      for (StateId s = q; s != at; s = forest.fallback(s)) path.push_back(s);
      for (size_t i = path.size(); i-- > 0;) {
        const StateId s = path[i];
        const int64_t cost = updates_of(s) * cu;
        const bool split =
            opt.split == SplitMode::kAlways ||
            (opt.split == SplitMode::kDynamic &&
             DynamicShouldSplit(visit_cost[s], cost, copy_cost(*g, s)));
        if (split) {
          frontier[root] = at;
          split_off(*g, s, false);
          root = s;
          g = agg[s].get();
        } else {
          visit(*g, s);
          visit_cost[s] += cost;
          c.modeled_visit_cost += cost;
        }
        at = s;
      }
      frontier[root] = at;
    }
    Agg& g = *agg[root];
    r.table.beta_sigma[q] = g.Value();
    r.table.beta[q] = ops.Plus(a.final_weight(q), r.table.beta_sigma[q]);
    if (opt.dump != nullptr) {
      *opt.dump << "after " << a.state_name(q) << " (tree of "
                << a.state_name(root) << "): ";
      g.Dump(*opt.dump, [&](Label l) { return a.symbol_name(l); });
    }
    if (opt.split == SplitMode::kStatic) {
      for (StateId child : forest.children(q)) {
        if (opt.plan->is_split[child]) split_off(g, child, true);
      }
    }
    if (opt.reset_to_root) {
      for (StateId at = frontier[root]; at != root; at = forest.fallback(at)) {
        leave(g, at);
      }
      frontier[root] = root;
    }
  }
  r.z = internal::SumInitial(a, r.table.beta, ops);
  for (StateId q = 0; q < n; ++q) {
    r.table.beta_symbol[q] = sb.Memo(q);
    if (agg[q]) c.aggregator_node_writes += agg[q]->stats().node_writes;
  }
  return r;
}

struct PathsumOptions {
  Algorithm algorithm = Algorithm::kGeneral;
  OrderStrategy order = OrderStrategy::kKahn;
  SplitMode split = SplitMode::kNone;
  CopyCostModel copy_model = CopyCostModel::kInternedKeys;
  int64_t update_cost = 0;
  bool weighted_phi = false;
  bool assert_compatible = false;
  bool reset_to_root = false;
  uint64_t path_budget = 1'000'000;
  std::ostream* dump_aggregator = nullptr;
};

StateOrder MakeOrder(const Topology& t, OrderStrategy strategy);

// Runs one algorithm and fills in the report metadata. Throws
// CapabilityError for the ring algorithm over a semiring without Minus.
template <Semiring K>
PathsumReport<K> Pathsum(const Automaton<K>& a, const PathsumOptions& o) {
  const StateOrder order = MakeOrder(a, o.order);
  const FailureForest forest(a);
  const bool compatible = IsCompatible(order.states, forest);
  if (o.assert_compatible && !compatible) {
    throw IncompatibleOrderError(std::string(OrderStrategyName(o.order)) +
                                 " order is not compatible with the failure "
                                 "forest");
  }
  PathsumReport<K> r;
  switch (o.algorithm) {
    case Algorithm::kBruteForce:
      r = BruteForcePathsum(a, o.path_budget);
      break;
    case Algorithm::kExpand:
      r = ExpandBackward(a, order);
      break;
    case Algorithm::kMemo:
      r = MemoizationBackward(a, order, o.weighted_phi);
      break;
    case Algorithm::kRing:
      if constexpr (Ring<K>) {
        r = RingBackward(a, order, o.weighted_phi);
      } else {
        throw CapabilityError("the ring algorithm needs subtraction, which the " +
                              std::string(K::kName) + " semiring lacks");
      }
      break;
    case Algorithm::kGeneral: {
      using Agg = typename DefaultAggregator<K>::type;
      GeneralOptions g;
      g.split = o.split;
      g.copy_model = o.copy_model;
      g.update_cost = o.update_cost > 0 ? o.update_cost
                                        : DefaultUpdateCost<Agg>(a.num_symbols());
      g.force_weighted = o.weighted_phi;
      g.reset_to_root = o.reset_to_root;
      g.dump = o.dump_aggregator;
      SplitPlan plan;
      if (o.split == SplitMode::kStatic) {
        const SparsityStats stats = ComputeStats(a, forest);
        plan = OptimalStaticSplit(
            forest, MakeSplitCosts(a, stats, a.weighted_failures() || o.weighted_phi,
                                   o.copy_model, g.update_cost));
        g.plan = &plan;
      }
      r = GeneralBackward<K, Agg>(a, order, g);
      break;
    }
  }
  r.order = order.strategy;
  r.compatible = compatible;
  return r;
}

}  // namespace phisum

#endif  // PHISUM_PATHSUM_H_
