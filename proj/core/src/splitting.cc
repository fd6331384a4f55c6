#include "phisum/splitting.h"

#include <algorithm>

namespace phisum {

std::string_view SplitModeName(SplitMode mode) {
  switch (mode) {
    case SplitMode::kNone:
      return "none";
    case SplitMode::kDynamic:
      return "dynamic";
    case SplitMode::kStatic:
      return "static";
    case SplitMode::kAlways:
      return "always";
  }
  return "none";
}

std::optional<SplitMode> ParseSplitMode(std::string_view name) {
  for (SplitMode m : {SplitMode::kNone, SplitMode::kDynamic, SplitMode::kStatic,
                      SplitMode::kAlways}) {
    if (SplitModeName(m) == name) return m;
  }
  return std::nullopt;
}

int64_t LogUpdateCost(int32_t num_symbols) {
  int64_t bits = 0;
  while ((int64_t{1} << bits) < num_symbols) ++bits;
  return std::max<int64_t>(bits, 1);
}

SplitCosts MakeSplitCosts(const Topology& t, const SparsityStats& stats,
                          bool weighted, CopyCostModel model,
                          int64_t update_cost) {
  const int32_t n = t.num_states();
  SplitCosts c;
  c.update_cost = update_cost;
  c.updates.resize(n);
  c.copy.resize(n);
  for (StateId q = 0; q < n; ++q) {
    c.updates[q] = t.num_out_symbols(q) + (weighted && t.has_fallback(q) ? 1 : 0);
    c.copy[q] = model == CopyCostModel::kAlphabet
                    ? t.num_symbols()
                    : static_cast<int64_t>(stats.expanded_symbols[q].size());
  }
  return c;
}

std::vector<StateId> SplitPlan::AllSplitStates() const {
  std::vector<StateId> out;
  for (const auto& t : trees) {
    out.insert(out.end(), t.split_states.begin(), t.split_states.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int64_t> ChainUpdates(const FailureForest& forest,
                                  const SplitCosts& costs) {
  std::vector<int64_t> d(forest.num_states(), 0);
  for (int32_t tr = 0; tr < forest.num_trees(); ++tr) {
    for (StateId q : forest.tree_states(tr)) {
      if (!forest.is_root(q)) d[q] = d[forest.fallback(q)] + costs.updates[q];
    }
  }
  return d;
}

}  // namespace

SplitPlan OptimalStaticSplit(const FailureForest& forest,
                             const SplitCosts& costs) {
  const int32_t n = forest.num_states();
  SplitPlan plan;
  plan.is_split.assign(n, 0);
  plan.chain_updates = ChainUpdates(forest, costs);
  plan.delta_bar.resize(n);
  plan.delta_check.resize(n);
  plan.delta_hat.resize(n);
  const auto& d = plan.chain_updates;

  std::vector<int64_t> chain_d;
  for (int32_t tr = 0; tr < forest.num_trees(); ++tr) {
    auto states = forest.tree_states(tr);
    // Children before parents in the failure tree.
    for (auto it = states.rbegin(); it != states.rend(); ++it) {
      const StateId q = *it;
      if (forest.is_root(q)) continue;
      const int32_t depth = forest.depth(q);
      chain_d.assign(depth, 0);
      for (StateId p = forest.fallback(q); p != kNoState; p = forest.fallback(p)) {
        chain_d[forest.depth(p)] = d[p];
      }
      // Σ over children p of Δ̄_{p|x} for x at each depth 0..depth.
      std::vector<int64_t> child_sum(depth + 1, 0);
      for (StateId p : forest.children(q)) {
        for (int32_t k = 0; k <= depth; ++k) child_sum[k] += plan.delta_bar[p][k];
      }
      auto& bar = plan.delta_bar[q];
      auto& check = plan.delta_check[q];
      auto& hat = plan.delta_hat[q];
      bar.resize(depth);
      check.resize(depth);
      hat.resize(depth);
      const int64_t scale = int64_t{forest.subtree_size(q)} * costs.update_cost;
      for (int32_t k = 0; k < depth; ++k) {
        const int64_t gain = -costs.copy[q] + (d[q] - chain_d[k]) * scale;
        check[k] = child_sum[depth] + gain;
        hat[k] = child_sum[k];
        bar[k] = std::max(check[k], hat[k]);
      }
    }

    TreeSplit ts;
    ts.tree = tr;
    ts.root = forest.root(tr);
    std::vector<std::pair<StateId, int32_t>> stack;
    for (StateId p : forest.children(ts.root)) {
      ts.improvement += plan.delta_bar[p][0];
      stack.push_back({p, 0});
    }
    while (!stack.empty()) {
      auto [q, k] = stack.back();
      stack.pop_back();
      int32_t child_k = k;
      // Ties keep q unsplit.
      if (plan.delta_bar[q][k] != plan.delta_hat[q][k]) {
        ts.split_states.push_back(q);
        plan.is_split[q] = 1;
        child_k = forest.depth(q);
      }
      for (StateId p : forest.children(q)) stack.push_back({p, child_k});
    }
    std::sort(ts.split_states.begin(), ts.split_states.end());
    plan.improvement += ts.improvement;
    plan.trees.push_back(std::move(ts));
  }
  return plan;
}

std::optional<std::pair<StateId, int64_t>> BestSingleSplit(
    const FailureForest& forest, int32_t tree, const SplitCosts& costs) {
  std::optional<std::pair<StateId, int64_t>> best;
  std::vector<int64_t> d(forest.num_states(), 0);
  for (StateId q : forest.tree_states(tree)) {
    if (forest.is_root(q)) continue;
    d[q] = d[forest.fallback(q)] + costs.updates[q];
    const int64_t gain = -costs.copy[q] +
                         d[q] * forest.subtree_size(q) * costs.update_cost;
    if (gain > 0 && (!best || gain > best->second ||
                     (gain == best->second && q < best->first))) {
      best = {q, gain};
    }
  }
  return best;
}

int64_t ModeledWorstCaseCost(const FailureForest& forest,
                             std::span<const uint8_t> is_split,
                             const SplitCosts& costs) {
  int64_t total = 0;
  std::vector<int64_t> crossing(forest.num_states(), 0);
  for (int32_t tr = 0; tr < forest.num_trees(); ++tr) {
    auto states = forest.tree_states(tr);
    for (auto it = states.rbegin(); it != states.rend(); ++it) {
      const StateId q = *it;
      crossing[q] = 1;
      for (StateId p : forest.children(q)) {
        if (!is_split[p]) crossing[q] += crossing[p];
      }
      if (is_split[q]) {
        total += costs.copy[q];
      } else if (!forest.is_root(q)) {
        total += costs.updates[q] * costs.update_cost * crossing[q];
      }
    }
  }
  return total;
}

}  // namespace phisum
