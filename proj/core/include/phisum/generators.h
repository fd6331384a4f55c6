#ifndef PHISUM_GENERATORS_H_
#define PHISUM_GENERATORS_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "phisum/automaton.h"
#include "phisum/semiring.h"
#include "phisum/topology.h"

namespace phisum {

// Structure of an automaton without weights. Instantiate() draws weights for
// a given semiring, so every semiring sees the same topology for one seed.
struct Skeleton {
  std::vector<std::string> state_names;
  std::vector<std::string> symbol_names;
  std::vector<RawArc> arcs;
  std::vector<std::pair<StateId, StateId>> failures;
  std::vector<StateId> initial;
  std::vector<StateId> final;
  bool weighted_failures = false;
};

struct RandomParams {
  int32_t states = 10;
  int32_t symbols = 4;
  double density = 0.3;     // target E[|Σ(q)|] / |Σ|
  double phi_prob = 0.3;    // chance that a state gets a failure arc
  double extra_arc_prob = 0.0;  // chance of a second arc on the same symbol
  bool weighted_phi = false;
  uint64_t seed = 0;
};

// States 0..n-1; arcs and failure arcs go from lower to higher ids, so the
// result is acyclic. State 0 is initial and state n-1 final, plus a few
// random others. Throws std::invalid_argument on bad ranges.
Skeleton RandomSkeleton(const RandomParams& p);

struct LatticeParams {
  int32_t length = 4;        // positions 0..length
  int32_t symbols = 3;
  int32_t order = 3;         // longest history is order - 1 symbols
  double context_prob = 0.5; // chance each history is extended
  double density = 0.5;      // symbols kept by non-empty histories
  bool weighted_phi = false;
  uint64_t seed = 0;
};

// A variable-order CRF lattice: per position, a trie of histories in which
// each history falls back to the history without its oldest symbol. Arcs
// only go to the next position, so a failure tree holds no other paths
// between its own states.
Skeleton LatticeSkeleton(const LatticeParams& p);

// The ladder with `rungs` rungs: states 1..2*rungs+1, state j falls back to
// max(j-2, 1), and j reads `a` to j-1 (state 2 reads `b` to 1). The only
// reverse topological order is 1, 2, 3, ... which forces repeated visits.
Skeleton ShoelacesSkeleton(int32_t rungs);

// Random weights that are never Zero: boolean 1, tropical k/16 for k in
// 1..32 (dyadic, so sums are exact), real uniform in (0, 1], log the log of
// that, count 1..3.
template <Semiring K>
typename K::Weight SampleWeight(std::mt19937_64& rng) {
  using Weight = typename K::Weight;
  if constexpr (std::is_same_v<K, BooleanSemiring>) {
    return K::One();
  } else if constexpr (std::is_same_v<K, CountSemiring>) {
    return std::uniform_int_distribution<Weight>(1, 3)(rng);
  } else if constexpr (std::is_same_v<K, TropicalMinSemiring> ||
                       std::is_same_v<K, TropicalMaxSemiring>) {
    return std::uniform_int_distribution<int>(1, 32)(rng) / 16.0;
  } else {
    // uniform_real_distribution yields [0, 1); flip it to (0, 1].
    const double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if constexpr (std::is_same_v<K, LogSemiring>) {
      return std::log(u);
    } else {
      return static_cast<Weight>(u);
    }
  }
}

template <Semiring K>
Automaton<K> Instantiate(const Skeleton& s, uint64_t weight_seed) {
  std::mt19937_64 rng(weight_seed);
  AutomatonBuilder<K> b;
  for (const auto& name : s.state_names) b.AddState(name);
  for (const auto& name : s.symbol_names) b.AddSymbol(name);
  for (const RawArc& arc : s.arcs) {
    b.AddArc(arc.src, arc.label, SampleWeight<K>(rng), arc.dst);
  }
  for (const auto& [src, dst] : s.failures) {
    b.AddFailure(src, dst, s.weighted_failures ? SampleWeight<K>(rng) : K::One());
  }
  b.SetWeightedFailures(s.weighted_failures);
  for (StateId q : s.initial) b.SetInitial(q, SampleWeight<K>(rng));
  for (StateId q : s.final) b.SetFinal(q, SampleWeight<K>(rng));
  return b.Build();
}

// Same structure with every weight One: path counts in the count semiring.
template <Semiring K>
Automaton<K> InstantiateUnit(const Skeleton& s) {
  AutomatonBuilder<K> b;
  for (const auto& name : s.state_names) b.AddState(name);
  for (const auto& name : s.symbol_names) b.AddSymbol(name);
  for (const RawArc& arc : s.arcs) b.AddArc(arc.src, arc.label, K::One(), arc.dst);
  for (const auto& [src, dst] : s.failures) b.AddFailure(src, dst);
  b.SetWeightedFailures(s.weighted_failures);
  for (StateId q : s.initial) b.SetInitial(q, K::One());
  for (StateId q : s.final) b.SetFinal(q, K::One());
  return b.Build();
}

}  // namespace phisum

#endif  // PHISUM_GENERATORS_H_
