#ifndef PHISUM_STATS_H_
#define PHISUM_STATS_H_

#include <cstdint>
#include <vector>

#include "phisum/failure_forest.h"
#include "phisum/topology.h"

namespace phisum {

// Sparsity of an automaton before and after failure expansion.
//   s      = Σ_q |Σ(q)| / (|Q||Σ|)
//   s_bar  = Σ_q |Σ̄(q)| / (|Q||Σ|), Σ̄(q) the symbols of the expanded q
// subtree_symbols[q] is the union of Σ(p) over the states p whose fallback
// chain passes through q (q included); it bounds the symbols for which the
// ring algorithm ever asks about q.
struct SparsityStats {
  int32_t num_states = 0;
  int32_t num_symbols = 0;
  int64_t num_arcs = 0;
  int64_t num_expanded_arcs = 0;
  int64_t total_out_symbols = 0;
  int64_t total_expanded_out_symbols = 0;
  int64_t total_subtree_symbols = 0;
  double s = 0;
  double s_bar = 0;
  std::vector<int32_t> out_symbols;           // |Σ(q)|
  std::vector<std::vector<Label>> expanded_symbols;  // Σ̄(q), sorted
  std::vector<std::vector<Label>> subtree_symbols;   // sorted
};

SparsityStats ComputeStats(const Topology& t, const FailureForest& forest);

}  // namespace phisum

#endif  // PHISUM_STATS_H_
