#ifndef PHISUM_AUTOMATON_H_
#define PHISUM_AUTOMATON_H_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "phisum/errors.h"
#include "phisum/semiring.h"
#include "phisum/topology.h"

namespace phisum {

inline constexpr std::string_view kFailureSymbol = "phi";

struct ValidationReport {
  int32_t num_states = 0;
  int64_t num_arcs = 0;  // after merging parallel arcs
  int64_t num_failures = 0;
  int64_t merged_parallel_arcs = 0;
};

template <Semiring K>
class AutomatonBuilder;

// A weighted automaton with failure arcs. Immutable once built; the builder
// enforces: parallel (q, a, q') arcs merged with Plus, at most one failure
// arc per state, no cycle through arcs ∪ failure arcs.
//
// In weighted-failure mode each failure arc carries a weight; otherwise all
// failure weights are One and algorithms skip the extra multiplication.
template <Semiring K>
class Automaton : public Topology {
 public:
  using Weight = typename K::Weight;

  Automaton() = default;

  const Weight& arc_weight(int64_t arc) const { return arc_weight_[arc]; }
  const Weight& initial(StateId q) const { return initial_[q]; }
  const Weight& final_weight(StateId q) const { return final_[q]; }
  const Weight& failure_weight(StateId q) const { return failure_weight_[q]; }
  bool weighted_failures() const { return weighted_failures_; }
  const ValidationReport& validation() const { return validation_; }

 private:
  friend class AutomatonBuilder<K>;

  std::vector<Weight> arc_weight_;
  std::vector<Weight> initial_;
  std::vector<Weight> final_;
  std::vector<Weight> failure_weight_;
  bool weighted_failures_ = false;
  ValidationReport validation_;
};

template <Semiring K>
class AutomatonBuilder {
 public:
  using Weight = typename K::Weight;

  AutomatonBuilder() = default;

  // Starts from the state and symbol tables of `like`, preserving ids.
  explicit AutomatonBuilder(const Topology& like)
      : states_(like.state_table()), symbols_(like.symbol_table()) {}

  StateId AddState(std::string_view name) { return states_.Intern(name); }

  Label AddSymbol(std::string_view name) {
    if (name == kFailureSymbol) throw ReservedSymbolError(std::string(name));
    return symbols_.Intern(name);
  }

  void AddArc(StateId src, Label label, const Weight& w, StateId dst) {
    arcs_.push_back({src, label, dst});
    arc_weights_.push_back(w);
  }

  void AddFailure(StateId src, StateId dst, const Weight& w = K::One()) {
    failures_.push_back({src, dst, w});
  }

  void SetInitial(StateId q, const Weight& w) { initial_.push_back({q, w}); }
  void SetFinal(StateId q, const Weight& w) { final_.push_back({q, w}); }

  // Forces weighted-failure mode even when every failure weight is One.
  void SetWeightedFailures(bool on) { force_weighted_ = on; }

  const SymbolTable& states() const { return states_; }
  const SymbolTable& symbols() const { return symbols_; }

  ValidationReport Validate() const {
    Prepared p = Prepare();
    return p.report;
  }

  Automaton<K> Build() const {
    Prepared p = Prepare();
    const int32_t n = states_.size();
    Automaton<K> a;
    a.Assign(states_, symbols_, p.arcs, std::move(p.fallback));
    a.arc_weight_ = std::move(p.weights);
    a.initial_.assign(n, K::Zero());
    a.final_.assign(n, K::Zero());
    a.failure_weight_.assign(n, K::One());
    for (const auto& [q, w] : initial_) a.initial_[q] = w;
    for (const auto& [q, w] : final_) a.final_[q] = w;
    a.weighted_failures_ = force_weighted_;
    for (const auto& f : failures_) {
      a.failure_weight_[f.src] = f.weight;
      if (!K::Equal(f.weight, K::One())) a.weighted_failures_ = true;
    }
    a.validation_ = p.report;
    return a;
  }

 private:
  struct Failure {
    StateId src;
    StateId dst;
    Weight weight;
  };

  struct Prepared {
    std::vector<RawArc> arcs;
    std::vector<Weight> weights;
    std::vector<StateId> fallback;
    ValidationReport report;
  };

  Prepared Prepare() const {
    const int32_t n = states_.size();
    Prepared p;
    p.fallback.assign(n, kNoState);
    for (const auto& f : failures_) {
      if (p.fallback[f.src] != kNoState) {
        throw DuplicateFailureArc(states_.Name(f.src));
      }
      p.fallback[f.src] = f.dst;
    }
    CheckAcyclic(states_, arcs_, p.fallback);

    std::vector<size_t> idx(arcs_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
      const auto& x = arcs_[i];
      const auto& y = arcs_[j];
      return std::tie(x.src, x.label, x.dst) < std::tie(y.src, y.label, y.dst);
    });
    for (size_t i : idx) {
      const RawArc& arc = arcs_[i];
      if (!p.arcs.empty() && p.arcs.back().src == arc.src &&
          p.arcs.back().label == arc.label && p.arcs.back().dst == arc.dst) {
        p.weights.back() = K::Plus(p.weights.back(), arc_weights_[i]);
        ++p.report.merged_parallel_arcs;
      } else {
        p.arcs.push_back(arc);
        p.weights.push_back(arc_weights_[i]);
      }
    }
    p.report.num_states = n;
    p.report.num_arcs = static_cast<int64_t>(p.arcs.size());
    p.report.num_failures = static_cast<int64_t>(failures_.size());
    return p;
  }

  SymbolTable states_;
  SymbolTable symbols_;
  std::vector<RawArc> arcs_;
  std::vector<Weight> arc_weights_;
  std::vector<Failure> failures_;
  std::vector<std::pair<StateId, Weight>> initial_;
  std::vector<std::pair<StateId, Weight>> final_;
  bool force_weighted_ = false;
};

// Replaces failure arcs by the arcs they stand for: q inherits every arc of
// its (already expanded) fallback whose symbol q lacks, scaled by the failure
// weight. The result has no failure arcs and the same state/symbol ids.
template <Semiring K>
Automaton<K> FailureExpand(const Automaton<K>& a) {
  using Weight = typename K::Weight;
  struct Out {
    Label label;
    StateId dst;
    Weight weight;
  };
  const int32_t n = a.num_states();
  std::vector<std::vector<Out>> expanded(n);
  for (StateId q : a.FallbackFirstOrder()) {
    auto& out = expanded[q];
    for (int64_t i = a.arc_begin(q); i < a.arc_end(q); ++i) {
      out.push_back({a.arc_label(i), a.arc_next(i), a.arc_weight(i)});
    }
    if (!a.has_fallback(q)) continue;
    const size_t own = out.size();
    for (const Out& inherited : expanded[a.fallback(q)]) {
      if (a.FindRun(q, inherited.label) != nullptr) continue;
      Weight w = a.weighted_failures()
                     ? K::Times(a.failure_weight(q), inherited.weight)
                     : inherited.weight;
      out.push_back({inherited.label, inherited.dst, w});
    }
    std::inplace_merge(out.begin(), out.begin() + own, out.end(),
                       [](const Out& x, const Out& y) {
                         return std::tie(x.label, x.dst) <
                                std::tie(y.label, y.dst);
                       });
  }

  AutomatonBuilder<K> b(a);
  for (StateId q = 0; q < n; ++q) {
    for (const Out& o : expanded[q]) b.AddArc(q, o.label, o.weight, o.dst);
    if (!K::Equal(a.initial(q), K::Zero())) b.SetInitial(q, a.initial(q));
    if (!K::Equal(a.final_weight(q), K::Zero())) b.SetFinal(q, a.final_weight(q));
  }
  return b.Build();
}

}  // namespace phisum

#endif  // PHISUM_AUTOMATON_H_
