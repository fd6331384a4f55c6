#ifndef PHISUM_SPLITTING_H_
#define PHISUM_SPLITTING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "phisum/failure_forest.h"
#include "phisum/stats.h"
#include "phisum/topology.h"

namespace phisum {

// none: one aggregator per failure tree. dynamic: copy the aggregator at q
// once repeated visits of q would cost more than a copy. static: copy at the
// states of a precomputed plan. always: copy at every non-root state.
enum class SplitMode { kNone, kDynamic, kStatic, kAlways };

// How a copy-and-update is charged: by the number of keys the copy holds,
// or by the alphabet size.
enum class CopyCostModel { kInternedKeys, kAlphabet };

std::string_view SplitModeName(SplitMode mode);
std::optional<SplitMode> ParseSplitMode(std::string_view name);

// Model units: one slot write costs `update_cost`; a copy at q costs
// copy[q]; a visit of q costs updates[q] * update_cost.
struct SplitCosts {
  std::vector<int64_t> updates;
  std::vector<int64_t> copy;
  int64_t update_cost = 1;
};

// updates[q] = |Σ(q)| (+1 for the multiplier in weighted mode);
// copy[q] = |Σ̄(q)| or |Σ|.
SplitCosts MakeSplitCosts(const Topology& t, const SparsityStats& stats,
                          bool weighted, CopyCostModel model,
                          int64_t update_cost);

// ceil(log2 |Σ|), at least 1.
int64_t LogUpdateCost(int32_t num_symbols);

struct TreeSplit {
  int32_t tree = 0;
  StateId root = kNoState;
  std::vector<StateId> split_states;  // ascending ids
  int64_t improvement = 0;
};

// Split states of every tree plus the tables behind them. For a non-root q
// the per-pair tables are indexed by the depth of q', the root of the tree
// that contains q when q is considered (q' lies on q's fallback chain).
struct SplitPlan {
  std::vector<TreeSplit> trees;
  std::vector<uint8_t> is_split;
  // Sum of updates[p] over p on q's chain from q up to, not including, the root.
  std::vector<int64_t> chain_updates;
  std::vector<std::vector<int64_t>> delta_bar;
  std::vector<std::vector<int64_t>> delta_check;
  std::vector<std::vector<int64_t>> delta_hat;
  int64_t improvement = 0;

  std::vector<StateId> AllSplitStates() const;
};

// Exact maximizer of the modeled worst-case saving, per tree.
SplitPlan OptimalStaticSplit(const FailureForest& forest,
                             const SplitCosts& costs);

// The single split with the best saving in one tree, if any saves anything.
std::optional<std::pair<StateId, int64_t>> BestSingleSplit(
    const FailureForest& forest, int32_t tree, const SplitCosts& costs);

// Worst case of the backward pass when every processed state makes the
// aggregator climb from its tree root: Σ copy[s] over split states plus
// Σ updates[q] * update_cost * (states whose tree path crosses q) over
// non-root states of the split trees.
int64_t ModeledWorstCaseCost(const FailureForest& forest,
                             std::span<const uint8_t> is_split,
                             const SplitCosts& costs);

// Split before this visit iff the visits so far plus this one would cost
// more than one copy.
inline bool DynamicShouldSplit(int64_t visit_cost_so_far, int64_t visit_cost,
                               int64_t copy_cost) {
  return visit_cost_so_far + visit_cost > copy_cost;
}

}  // namespace phisum

#endif  // PHISUM_SPLITTING_H_
