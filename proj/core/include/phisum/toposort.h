#ifndef PHISUM_TOPOSORT_H_
#define PHISUM_TOPOSORT_H_

#include <string>
#include <vector>

#include "phisum/failure_forest.h"
#include "phisum/topology.h"

namespace phisum {

// A reverse topological order of arcs ∪ failure arcs: every state comes
// after all states it can reach. `claims_compatible` is the producer's own
// claim and is meant to be checked with IsCompatible.
struct StateOrder {
  std::vector<StateId> states;
  std::string strategy;
  bool claims_compatible = false;
};

// Kahn's algorithm from the sinks; among ready states the lowest id wins.
// Throws CycleError.
StateOrder KahnReverseTopologicalOrder(const Topology& t);

// Kahn's algorithm that prefers "cheap" ready states: a tree root, or a
// state whose fallback is the state its tree's aggregator currently
// represents. The frontier is tracked as the backward pass would, and after
// each step it also descends while the frontier has no unenumerated
// children. Claims compatibility iff it never had to take a costly state.
StateOrder GreedyCompatibleOrder(const Topology& t, const FailureForest& f);

bool IsReverseTopological(const std::vector<StateId>& order, const Topology& t);

// True iff the order restricted to every failure tree is a root-first DFS
// order of that tree.
bool IsCompatible(const std::vector<StateId>& order, const FailureForest& f);

}  // namespace phisum

#endif  // PHISUM_TOPOSORT_H_
