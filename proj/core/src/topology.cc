#include "phisum/topology.h"

#include <algorithm>

#include "phisum/errors.h"

namespace phisum {

const Topology::SymbolRun* Topology::FindRun(StateId q, Label label) const {
  auto r = runs(q);
  auto it = std::lower_bound(
      r.begin(), r.end(), label,
      [](const SymbolRun& run, Label l) { return run.label < l; });
  if (it == r.end() || it->label != label) return nullptr;
  return &*it;
}

std::vector<StateId> Topology::FallbackFirstOrder() const {
  const int32_t n = num_states();
  std::vector<int32_t> depth(n, -1);
  std::vector<StateId> chain;
  int32_t max_depth = 0;
  for (StateId q = 0; q < n; ++q) {
    chain.clear();
    StateId p = q;
    while (p != kNoState && depth[p] < 0) {
      chain.push_back(p);
      p = fallback_[p];
    }
    int32_t d = p == kNoState ? -1 : depth[p];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
    max_depth = std::max(max_depth, d);
  }
  // Counting sort by depth keeps ids ascending within a level.
  std::vector<int32_t> start(max_depth + 2, 0);
  for (StateId q = 0; q < n; ++q) ++start[depth[q] + 1];
  for (size_t i = 1; i < start.size(); ++i) start[i] += start[i - 1];
  std::vector<StateId> order(n);
  for (StateId q = 0; q < n; ++q) order[start[depth[q]]++] = q;
  return order;
}

void Topology::Assign(SymbolTable states, SymbolTable symbols,
                      const std::vector<RawArc>& arcs,
                      std::vector<StateId> fallback) {
  states_ = std::move(states);
  symbols_ = std::move(symbols);
  fallback_ = std::move(fallback);
  const int32_t n = states_.size();
  fallback_.resize(n, kNoState);
  num_failures_ = std::count_if(fallback_.begin(), fallback_.end(),
                                [](StateId f) { return f != kNoState; });

  arc_offset_.assign(n + 1, 0);
  arc_label_.resize(arcs.size());
  arc_next_.resize(arcs.size());
  run_offset_.assign(n + 1, 0);
  runs_.clear();
  size_t i = 0;
  for (StateId q = 0; q < n; ++q) {
    arc_offset_[q] = static_cast<int64_t>(i);
    run_offset_[q] = static_cast<int64_t>(runs_.size());
    for (; i < arcs.size() && arcs[i].src == q; ++i) {
      arc_label_[i] = arcs[i].label;
      arc_next_[i] = arcs[i].dst;
      if (runs_.size() == static_cast<size_t>(run_offset_[q]) ||
          runs_.back().label != arcs[i].label) {
        runs_.push_back({arcs[i].label, static_cast<int64_t>(i),
                         static_cast<int64_t>(i)});
      }
      runs_.back().end = static_cast<int64_t>(i) + 1;
    }
  }
  arc_offset_[n] = static_cast<int64_t>(i);
  run_offset_[n] = static_cast<int64_t>(runs_.size());
}

void CheckAcyclic(const SymbolTable& states, std::span<const RawArc> arcs,
                  std::span<const StateId> fallback) {
  const int32_t n = states.size();
  // Adjacency in CSR form; the failure arc is appended last.
  std::vector<int64_t> offset(n + 1, 0);
  for (const auto& a : arcs) ++offset[a.src + 1];
  for (StateId q = 0; q < n; ++q) {
    if (fallback[q] != kNoState) ++offset[q + 1];
  }
  for (int32_t q = 0; q < n; ++q) offset[q + 1] += offset[q];
  std::vector<StateId> next(offset[n]);
  std::vector<int64_t> fill(offset.begin(), offset.end() - 1);
  for (const auto& a : arcs) next[fill[a.src]++] = a.dst;
  for (StateId q = 0; q < n; ++q) {
    if (fallback[q] != kNoState) next[fill[q]++] = fallback[q];
  }

  enum : uint8_t { kWhite, kGray, kBlack };
  std::vector<uint8_t> color(n, kWhite);
  std::vector<StateId> parent(n, kNoState);
  std::vector<std::pair<StateId, int64_t>> stack;
  for (StateId root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.push_back({root, offset[root]});
    color[root] = kGray;
    while (!stack.empty()) {
      auto& [q, pos] = stack.back();
      if (pos == offset[q + 1]) {
        color[q] = kBlack;
        stack.pop_back();
        continue;
      }
      const StateId r = next[pos++];
      if (color[r] == kGray) {
        std::vector<std::string> cycle;
        for (StateId p = q; p != r; p = parent[p]) {
          cycle.push_back(states.Name(p));
        }
        cycle.push_back(states.Name(r));
        std::reverse(cycle.begin(), cycle.end());
        cycle.push_back(states.Name(r));
        throw CycleError(std::move(cycle));
      }
      if (color[r] == kWhite) {
        color[r] = kGray;
        parent[r] = q;
        stack.push_back({r, offset[r]});
      }
    }
  }
}

}  // namespace phisum
