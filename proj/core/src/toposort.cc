#include "phisum/toposort.h"

#include <set>

#include "phisum/errors.h"

namespace phisum {
namespace {

// Number of distinct successors (arc targets and fallback) per state, and
// the reverse adjacency used to release predecessors.
struct Dependencies {
  std::vector<int32_t> pending;
  std::vector<int64_t> pred_offset;
  std::vector<StateId> pred;
};

Dependencies BuildDependencies(const Topology& t) {
  const int32_t n = t.num_states();
  Dependencies d;
  d.pending.assign(n, 0);
  d.pred_offset.assign(n + 1, 0);
  std::vector<std::pair<StateId, StateId>> edges;  // (src, dst), distinct
  std::vector<StateId> seen(n, kNoState);
  for (StateId q = 0; q < n; ++q) {
    auto add = [&](StateId r) {
      if (seen[r] == q) return;
      seen[r] = q;
      edges.push_back({q, r});
    };
    for (int64_t i = t.arc_begin(q); i < t.arc_end(q); ++i) add(t.arc_next(i));
    if (t.has_fallback(q)) add(t.fallback(q));
  }
  for (const auto& [src, dst] : edges) {
    ++d.pending[src];
    ++d.pred_offset[dst + 1];
  }
  for (int32_t q = 0; q < n; ++q) d.pred_offset[q + 1] += d.pred_offset[q];
  d.pred.resize(edges.size());
  std::vector<int64_t> fill(d.pred_offset.begin(), d.pred_offset.end() - 1);
  for (const auto& [src, dst] : edges) d.pred[fill[dst]++] = src;
  return d;
}

[[noreturn]] void ThrowCycle(const Topology& t) {
  // Let the validator name the cycle.
  std::vector<RawArc> arcs;
  std::vector<StateId> fallback(t.num_states());
  for (StateId q = 0; q < t.num_states(); ++q) {
    for (int64_t i = t.arc_begin(q); i < t.arc_end(q); ++i) {
      arcs.push_back({q, t.arc_label(i), t.arc_next(i)});
    }
    fallback[q] = t.fallback(q);
  }
  CheckAcyclic(t.state_table(), arcs, fallback);
  throw CycleError({});
}

}  // namespace

StateOrder KahnReverseTopologicalOrder(const Topology& t) {
  const int32_t n = t.num_states();
  Dependencies d = BuildDependencies(t);
  std::set<StateId> ready;
  for (StateId q = 0; q < n; ++q) {
    if (d.pending[q] == 0) ready.insert(q);
  }
  StateOrder order;
  order.strategy = "kahn";
  order.states.reserve(n);
  while (!ready.empty()) {
    const StateId q = *ready.begin();
    ready.erase(ready.begin());
    order.states.push_back(q);
    for (int64_t i = d.pred_offset[q]; i < d.pred_offset[q + 1]; ++i) {
      if (--d.pending[d.pred[i]] == 0) ready.insert(d.pred[i]);
    }
  }
  if (static_cast<int32_t>(order.states.size()) != n) ThrowCycle(t);
  return order;
}

StateOrder GreedyCompatibleOrder(const Topology& t, const FailureForest& f) {
  const int32_t n = t.num_states();
  Dependencies d = BuildDependencies(t);
  std::vector<StateId> frontier(f.num_trees(), kNoState);
  std::vector<int32_t> open_children(n, 0);
  std::vector<uint8_t> is_ready(n, 0), done(n, 0);
  for (StateId q = 0; q < n; ++q) {
    open_children[q] = static_cast<int32_t>(f.children(q).size());
  }
  auto cheap = [&](StateId q) {
    return f.is_root(q) || frontier[f.tree(q)] == f.fallback(q);
  };
  std::set<StateId> ready_cheap, ready_costly;
  auto make_ready = [&](StateId q) {
    is_ready[q] = 1;
    (cheap(q) ? ready_cheap : ready_costly).insert(q);
  };
  // Re-classifies the ready children of old and new frontier states.
  auto move_frontier = [&](int32_t tree, StateId to) {
    const StateId from = frontier[tree];
    if (from == to) return;
    frontier[tree] = to;
    if (from != kNoState) {
      for (StateId c : f.children(from)) {
        if (is_ready[c] && !done[c] && ready_cheap.erase(c)) {
          ready_costly.insert(c);
        }
      }
    }
    for (StateId c : f.children(to)) {
      if (is_ready[c] && !done[c] && ready_costly.erase(c)) {
        ready_cheap.insert(c);
      }
    }
  };

  for (StateId q = 0; q < n; ++q) {
    if (d.pending[q] == 0) make_ready(q);
  }
  StateOrder order;
  order.strategy = "greedy";
  order.claims_compatible = true;
  order.states.reserve(n);
  while (!ready_cheap.empty() || !ready_costly.empty()) {
    StateId q;
    if (!ready_cheap.empty()) {
      q = *ready_cheap.begin();
      ready_cheap.erase(ready_cheap.begin());
    } else {
      q = *ready_costly.begin();
      ready_costly.erase(ready_costly.begin());
      order.claims_compatible = false;
    }
    done[q] = 1;
    order.states.push_back(q);

    // The backward pass ends this step representing q; then descend.
    if (!f.is_root(q)) --open_children[f.fallback(q)];
    StateId at = q;
    while (open_children[at] == 0 && !f.is_root(at)) at = f.fallback(at);
    move_frontier(f.tree(q), at);

    for (int64_t i = d.pred_offset[q]; i < d.pred_offset[q + 1]; ++i) {
      if (--d.pending[d.pred[i]] == 0) make_ready(d.pred[i]);
    }
  }
  if (static_cast<int32_t>(order.states.size()) != n) ThrowCycle(t);
  return order;
}

bool IsReverseTopological(const std::vector<StateId>& order,
                          const Topology& t) {
  const int32_t n = t.num_states();
  if (static_cast<int32_t>(order.size()) != n) return false;
  std::vector<int32_t> pos(n, -1);
  for (int32_t i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || pos[order[i]] != -1) return false;
    pos[order[i]] = i;
  }
  for (StateId q = 0; q < n; ++q) {
    for (int64_t i = t.arc_begin(q); i < t.arc_end(q); ++i) {
      if (pos[t.arc_next(i)] > pos[q]) return false;
    }
    if (t.has_fallback(q) && pos[t.fallback(q)] > pos[q]) return false;
  }
  return true;
}

bool IsCompatible(const std::vector<StateId>& order, const FailureForest& f) {
  // Per tree, the current root-to-last-state path.
  std::vector<std::vector<StateId>> path(f.num_trees());
  for (StateId q : order) {
    auto& p = path[f.tree(q)];
    if (f.is_root(q)) {
      if (!p.empty()) return false;
      p.push_back(q);
      continue;
    }
    while (!p.empty() && p.back() != f.fallback(q)) p.pop_back();
    if (p.empty()) return false;
    p.push_back(q);
  }
  return true;
}

}  // namespace phisum
