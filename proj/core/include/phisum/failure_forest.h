#ifndef PHISUM_FAILURE_FOREST_H_
#define PHISUM_FAILURE_FOREST_H_

#include <cstdint>
#include <span>
#include <vector>

#include "phisum/topology.h"

namespace phisum {

// The forest formed by failure arcs. Each tree is rooted at the state its
// members eventually fall back to; the children of q are the states whose
// failure arc points at q. Intervals come from a DFS from each root where the
// clock ticks on entry and on exit, so p lies on q's fallback chain exactly
// when p's interval contains q's.
class FailureForest {
 public:
  FailureForest() = default;
  explicit FailureForest(const Topology& t);

  int32_t num_states() const { return static_cast<int32_t>(fallback_.size()); }
  int32_t num_trees() const { return static_cast<int32_t>(roots_.size()); }

  int32_t tree(StateId q) const { return tree_[q]; }
  StateId root(int32_t tree) const { return roots_[tree]; }
  // Tree members in DFS preorder (root first, children by ascending id).
  std::span<const StateId> tree_states(int32_t tree) const {
    return {preorder_.data() + tree_offset_[tree],
            static_cast<size_t>(tree_offset_[tree + 1] - tree_offset_[tree])};
  }
  int32_t tree_size(int32_t tree) const {
    return tree_offset_[tree + 1] - tree_offset_[tree];
  }

  StateId fallback(StateId q) const { return fallback_[q]; }
  bool is_root(StateId q) const { return fallback_[q] == kNoState; }
  std::span<const StateId> children(StateId q) const {
    return {child_.data() + child_offset_[q],
            static_cast<size_t>(child_offset_[q + 1] - child_offset_[q])};
  }
  // A state with neither a fallback nor states falling back to it.
  bool IsSingleton(StateId q) const {
    return is_root(q) && child_offset_[q + 1] == child_offset_[q];
  }

  int32_t enter(StateId q) const { return enter_[q]; }
  int32_t exit(StateId q) const { return exit_[q]; }

  // True iff p == q or p is reachable from q through failure arcs.
  bool OnFallbackPath(StateId q, StateId p) const {
    return tree_[q] == tree_[p] && enter_[p] <= enter_[q] &&
           exit_[q] <= exit_[p];
  }

  // Failure arcs between q and its root.
  int32_t depth(StateId q) const { return depth_[q]; }
  // States on q's fallback chain, q and the root included.
  int32_t chain_length(StateId q) const { return depth_[q] + 1; }
  // States whose fallback chain passes through q, q included.
  int32_t subtree_size(StateId q) const { return subtree_size_[q]; }

  int32_t max_tree_size() const { return max_tree_size_; }
  int32_t max_chain_length() const { return max_chain_length_; }

 private:
  std::vector<StateId> fallback_;
  std::vector<int32_t> child_offset_;
  std::vector<StateId> child_;
  std::vector<int32_t> tree_;
  std::vector<StateId> roots_;
  std::vector<int32_t> tree_offset_;
  std::vector<StateId> preorder_;
  std::vector<int32_t> enter_;
  std::vector<int32_t> exit_;
  std::vector<int32_t> depth_;
  std::vector<int32_t> subtree_size_;
  int32_t max_tree_size_ = 0;
  int32_t max_chain_length_ = 0;
};

}  // namespace phisum

#endif  // PHISUM_FAILURE_FOREST_H_
