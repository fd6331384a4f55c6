#include "phisum/failure_forest.h"

#include <algorithm>

namespace phisum {

FailureForest::FailureForest(const Topology& t) {
  const int32_t n = t.num_states();
  fallback_.resize(n);
  child_offset_.assign(n + 1, 0);
  for (StateId q = 0; q < n; ++q) {
    fallback_[q] = t.fallback(q);
    if (fallback_[q] != kNoState) ++child_offset_[fallback_[q] + 1];
  }
  for (int32_t q = 0; q < n; ++q) child_offset_[q + 1] += child_offset_[q];
  child_.resize(child_offset_[n]);
  {
    std::vector<int32_t> fill(child_offset_.begin(), child_offset_.end() - 1);
    for (StateId q = 0; q < n; ++q) {
      if (fallback_[q] != kNoState) child_[fill[fallback_[q]]++] = q;
    }
  }

  tree_.assign(n, -1);
  enter_.assign(n, 0);
  exit_.assign(n, 0);
  depth_.assign(n, 0);
  subtree_size_.assign(n, 1);
  preorder_.reserve(n);
  tree_offset_.push_back(0);
  int32_t clock = 0;
  std::vector<std::pair<StateId, int32_t>> stack;
  for (StateId r = 0; r < n; ++r) {
    if (fallback_[r] != kNoState) continue;
    const auto id = static_cast<int32_t>(roots_.size());
    roots_.push_back(r);
    stack.push_back({r, child_offset_[r]});
    tree_[r] = id;
    enter_[r] = clock++;
    preorder_.push_back(r);
    while (!stack.empty()) {
      auto& [q, pos] = stack.back();
      if (pos == child_offset_[q + 1]) {
        exit_[q] = clock++;
        const StateId done = q;
        stack.pop_back();
        if (!stack.empty()) subtree_size_[stack.back().first] += subtree_size_[done];
        continue;
      }
      const StateId c = child_[pos++];
      tree_[c] = id;
      depth_[c] = depth_[q] + 1;
      enter_[c] = clock++;
      preorder_.push_back(c);
      max_chain_length_ = std::max(max_chain_length_, depth_[c] + 1);
      stack.push_back({c, child_offset_[c]});
    }
    tree_offset_.push_back(static_cast<int32_t>(preorder_.size()));
    max_tree_size_ = std::max(max_tree_size_, tree_offset_.back() -
                                                  tree_offset_[id]);
  }
  if (n > 0) max_chain_length_ = std::max(max_chain_length_, 1);
}

}  // namespace phisum
