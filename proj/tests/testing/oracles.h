#ifndef PHISUM_TESTS_TESTING_ORACLES_H_
#define PHISUM_TESTS_TESTING_ORACLES_H_

// Slow, direct implementations used to check the library. None of them
// shares code with the algorithm it checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "phisum/automaton.h"
#include "phisum/failure_forest.h"
#include "phisum/semiring.h"
#include "phisum/splitting.h"

namespace phisum::testing {

// β(q) straight from the recursive definition: for each symbol, the arcs of
// the first state on q's fallback chain that has the symbol, scaled by the
// failure weights walked over.
template <Semiring K>
class DefinitionOracle {
 public:
  using Weight = typename K::Weight;

  explicit DefinitionOracle(const Automaton<K>& a) : a_(a) {}

  Weight Beta(StateId q) {
    if (auto it = beta_.find(q); it != beta_.end()) return it->second;
    Weight sum = a_.final_weight(q);
    for (Label l = 0; l < a_.num_symbols(); ++l) sum = K::Plus(sum, Symbol(q, l));
    beta_[q] = sum;
    return sum;
  }

  Weight Symbol(StateId q, Label l) {
    Weight scale = K::One();
    for (StateId p = q; p != kNoState; p = a_.fallback(p)) {
      bool found = false;
      Weight sum = K::Zero();
      for (int64_t i = a_.arc_begin(p); i < a_.arc_end(p); ++i) {
        if (a_.arc_label(i) != l) continue;
        found = true;
        sum = K::Plus(sum, K::Times(a_.arc_weight(i), Beta(a_.arc_next(i))));
      }
      if (found) return K::Times(scale, sum);
      if (a_.weighted_failures() && a_.has_fallback(p)) {
        scale = K::Times(scale, a_.failure_weight(p));
      }
    }
    return K::Zero();
  }

  Weight Z() {
    Weight z = K::Zero();
    for (StateId q = 0; q < a_.num_states(); ++q) {
      z = K::Plus(z, K::Times(a_.initial(q), Beta(q)));
    }
    return z;
  }

 private:
  const Automaton<K>& a_;
  std::map<StateId, Weight> beta_;
};

// Aggregator reference: an ordered map, a full fold for the value, and a
// stack of snapshots for undo.
template <Semiring K>
class ReferenceAggregator {
 public:
  using Weight = typename K::Weight;

  void Set(Label key, const Weight& v) {
    history_.push_back(values_);
    values_[key] = v;
  }
  void Mult(const Weight& m) {
    history_.push_back(values_);
    for (auto& [key, v] : values_) v = K::Times(m, v);
  }
  void Undo(size_t n) {
    for (; n > 0; --n) {
      values_ = history_.back();
      history_.pop_back();
    }
  }
  Weight Get(Label key) const {
    auto it = values_.find(key);
    return it == values_.end() ? K::Zero() : it->second;
  }
  Weight Value() const {
    Weight sum = K::Zero();
    for (const auto& [key, v] : values_) sum = K::Plus(sum, v);
    return sum;
  }
  bool Contains(Label key) const { return values_.count(key) > 0; }
  size_t size() const { return values_.size(); }
  size_t pending() const { return history_.size(); }
  const std::map<Label, Weight>& values() const { return values_; }

 private:
  std::map<Label, Weight> values_;
  std::vector<std::map<Label, Weight>> history_;
};

// The pessimal cost of one failure tree with split set `split`: every
// processed state climbs from its nearest split ancestor (or the root),
// paying updates * update_cost per state climbed through, and each split
// state pays its copy.
inline int64_t PessimalTreeCost(const FailureForest& f, int32_t tree,
                                const std::vector<uint8_t>& split,
                                const SplitCosts& c) {
  int64_t total = 0;
  for (StateId x : f.tree_states(tree)) {
    if (split[x]) total += c.copy[x];
    for (StateId p = x; !f.is_root(p) && !split[p]; p = f.fallback(p)) {
      total += c.updates[p] * c.update_cost;
    }
  }
  return total;
}

// Best improvement over every subset of the tree's non-root states.
inline int64_t ExhaustiveBestImprovement(const FailureForest& f, int32_t tree,
                                         const SplitCosts& c) {
  std::vector<StateId> candidates;
  for (StateId q : f.tree_states(tree)) {
    if (!f.is_root(q)) candidates.push_back(q);
  }
  std::vector<uint8_t> split(f.num_states(), 0);
  const int64_t base = PessimalTreeCost(f, tree, split, c);
  int64_t best = 0;
  for (uint32_t mask = 0; mask < (1u << candidates.size()); ++mask) {
    for (size_t i = 0; i < candidates.size(); ++i) {
      split[candidates[i]] = (mask >> i) & 1;
    }
    best = std::max(best, base - PessimalTreeCost(f, tree, split, c));
  }
  return best;
}

// Compatibility straight from its definition: for any two states of one
// tree where neither is on the other's fallback chain, the states strictly
// below their lowest common ancestor on one side all come before those on
// the other side.
inline bool CompatibleByDefinition(const std::vector<StateId>& order,
                                   const FailureForest& f) {
  std::vector<int64_t> pos(f.num_states());
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int64_t>(i);
  auto chain = [&](StateId q) {
    std::vector<StateId> out;
    for (StateId p = q; p != kNoState; p = f.fallback(p)) out.push_back(p);
    return out;
  };
  const int32_t n = f.num_states();
  for (StateId q = 0; q < n; ++q) {
    for (StateId r = q + 1; r < n; ++r) {
      if (f.tree(q) != f.tree(r)) continue;
      const auto cq = chain(q);
      const auto cr = chain(r);
      if (std::find(cq.begin(), cq.end(), r) != cq.end() ||
          std::find(cr.begin(), cr.end(), q) != cr.end()) {
        continue;
      }
      const std::set<StateId> shared(cq.begin(), cq.end());
      std::vector<StateId> bq, br;
      for (StateId p : cq) {
        if (std::find(cr.begin(), cr.end(), p) == cr.end()) bq.push_back(p);
      }
      for (StateId p : cr) {
        if (!shared.count(p)) br.push_back(p);
      }
      int64_t max_q = -1, min_q = INT64_MAX, max_r = -1, min_r = INT64_MAX;
      for (StateId p : bq) {
        max_q = std::max(max_q, pos[p]);
        min_q = std::min(min_q, pos[p]);
      }
      for (StateId p : br) {
        max_r = std::max(max_r, pos[p]);
        min_r = std::min(min_r, pos[p]);
      }
      if (!(max_q < min_r || max_r < min_q)) return false;
    }
  }
  return true;
}

// Uniformly random reverse topological order of arcs ∪ failure arcs.
inline std::vector<StateId> RandomReverseTopological(const Topology& t,
                                                     std::mt19937_64& rng) {
  const int32_t n = t.num_states();
  std::vector<int32_t> pending(n, 0);
  std::vector<std::vector<StateId>> preds(n);
  for (StateId q = 0; q < n; ++q) {
    std::set<StateId> succ;
    for (int64_t i = t.arc_begin(q); i < t.arc_end(q); ++i) succ.insert(t.arc_next(i));
    if (t.has_fallback(q)) succ.insert(t.fallback(q));
    pending[q] = static_cast<int32_t>(succ.size());
    for (StateId s : succ) preds[s].push_back(q);
  }
  std::vector<StateId> ready, order;
  for (StateId q = 0; q < n; ++q) {
    if (pending[q] == 0) ready.push_back(q);
  }
  while (!ready.empty()) {
    const size_t i = std::uniform_int_distribution<size_t>(0, ready.size() - 1)(rng);
    const StateId q = ready[i];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(i));
    order.push_back(q);
    for (StateId p : preds[q]) {
      if (--pending[p] == 0) ready.push_back(p);
    }
  }
  return order;
}

}  // namespace phisum::testing

#endif  // PHISUM_TESTS_TESTING_ORACLES_H_
