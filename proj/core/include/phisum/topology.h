#ifndef PHISUM_TOPOLOGY_H_
#define PHISUM_TOPOLOGY_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phisum/symbol_table.h"
#include "phisum/types.h"

namespace phisum {

struct RawArc {
  StateId src;
  Label label;
  StateId dst;
};

// The weight-free structure of an automaton: states, alphabet, arcs grouped
// by source and sorted by (symbol, target), and at most one fallback state
// per state. Forest, ordering and planning code works on this alone.
class Topology {
 public:
  // Arcs [begin, end) of one source state that share a symbol.
  struct SymbolRun {
    Label label;
    int64_t begin;
    int64_t end;
  };

  int32_t num_states() const { return states_.size(); }
  int32_t num_symbols() const { return symbols_.size(); }
  int64_t num_arcs() const { return static_cast<int64_t>(arc_label_.size()); }
  int64_t num_failures() const { return num_failures_; }

  // Σ(q) with the arcs behind each symbol.
  std::span<const SymbolRun> runs(StateId q) const {
    return {runs_.data() + run_offset_[q],
            static_cast<size_t>(run_offset_[q + 1] - run_offset_[q])};
  }
  int32_t num_out_symbols(StateId q) const {
    return static_cast<int32_t>(run_offset_[q + 1] - run_offset_[q]);
  }
  // nullptr if `label` is not in Σ(q).
  const SymbolRun* FindRun(StateId q, Label label) const;

  int64_t arc_begin(StateId q) const { return arc_offset_[q]; }
  int64_t arc_end(StateId q) const { return arc_offset_[q + 1]; }
  Label arc_label(int64_t arc) const { return arc_label_[arc]; }
  StateId arc_next(int64_t arc) const { return arc_next_[arc]; }

  StateId fallback(StateId q) const { return fallback_[q]; }
  bool has_fallback(StateId q) const { return fallback_[q] != kNoState; }

  const SymbolTable& state_table() const { return states_; }
  const SymbolTable& symbol_table() const { return symbols_; }
  const std::string& state_name(StateId q) const { return states_.Name(q); }
  const std::string& symbol_name(Label a) const { return symbols_.Name(a); }

  // States ordered so that every fallback precedes the states using it.
  std::vector<StateId> FallbackFirstOrder() const;

 protected:
  // `arcs` must be sorted by (src, label, dst) and free of duplicates.
  void Assign(SymbolTable states, SymbolTable symbols,
              const std::vector<RawArc>& arcs, std::vector<StateId> fallback);

 private:
  SymbolTable states_;
  SymbolTable symbols_;
  std::vector<int64_t> arc_offset_{0};
  std::vector<Label> arc_label_;
  std::vector<StateId> arc_next_;
  std::vector<int64_t> run_offset_{0};
  std::vector<SymbolRun> runs_;
  std::vector<StateId> fallback_;
  int64_t num_failures_ = 0;
};

// Throws CycleError when arcs ∪ failure arcs contain a directed cycle.
void CheckAcyclic(const SymbolTable& states, std::span<const RawArc> arcs,
                  std::span<const StateId> fallback);

}  // namespace phisum

#endif  // PHISUM_TOPOLOGY_H_
