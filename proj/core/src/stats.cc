#include "phisum/stats.h"

#include <algorithm>
#include <iterator>

namespace phisum {

SparsityStats ComputeStats(const Topology& t, const FailureForest& forest) {
  const int32_t n = t.num_states();
  SparsityStats st;
  st.num_states = n;
  st.num_symbols = t.num_symbols();
  st.num_arcs = t.num_arcs();
  st.out_symbols.resize(n);
  st.expanded_symbols.resize(n);
  st.subtree_symbols.resize(n);

  // Per expanded state: (symbol, arc count), sorted by symbol.
  std::vector<std::vector<std::pair<Label, int64_t>>> expanded(n);
  for (int32_t tr = 0; tr < forest.num_trees(); ++tr) {
    for (StateId q : forest.tree_states(tr)) {  // fallbacks come first
      auto& out = expanded[q];
      for (const auto& run : t.runs(q)) out.push_back({run.label, run.end - run.begin});
      if (t.has_fallback(q)) {
        std::vector<std::pair<Label, int64_t>> merged;
        const auto& inherited = expanded[t.fallback(q)];
        std::merge(out.begin(), out.end(), inherited.begin(), inherited.end(),
                   std::back_inserter(merged),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
        // Own symbols shadow inherited ones; std::merge puts own first.
        auto last = std::unique(merged.begin(), merged.end(),
                                [](const auto& x, const auto& y) {
                                  return x.first == y.first;
                                });
        merged.erase(last, merged.end());
        out = std::move(merged);
      }
    }
  }

  for (StateId q = 0; q < n; ++q) {
    st.out_symbols[q] = t.num_out_symbols(q);
    st.total_out_symbols += st.out_symbols[q];
    for (const auto& [label, count] : expanded[q]) {
      st.expanded_symbols[q].push_back(label);
      st.num_expanded_arcs += count;
    }
    st.total_expanded_out_symbols +=
        static_cast<int64_t>(st.expanded_symbols[q].size());
  }

  for (int32_t tr = 0; tr < forest.num_trees(); ++tr) {
    auto states = forest.tree_states(tr);
    for (auto it = states.rbegin(); it != states.rend(); ++it) {
      const StateId q = *it;
      auto& acc = st.subtree_symbols[q];
      for (const auto& run : t.runs(q)) acc.push_back(run.label);
      for (StateId c : forest.children(q)) {
        std::vector<Label> merged;
        std::set_union(acc.begin(), acc.end(), st.subtree_symbols[c].begin(),
                       st.subtree_symbols[c].end(), std::back_inserter(merged));
        acc = std::move(merged);
      }
      st.total_subtree_symbols += static_cast<int64_t>(acc.size());
    }
  }

  const double cells = static_cast<double>(n) * st.num_symbols;
  if (cells > 0) {
    st.s = st.total_out_symbols / cells;
    st.s_bar = st.total_expanded_out_symbols / cells;
  }
  return st;
}

}  // namespace phisum
