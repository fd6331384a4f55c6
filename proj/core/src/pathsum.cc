#include "phisum/pathsum.h"

#include <array>

namespace phisum {

namespace {

constexpr std::array kAlgorithms = {Algorithm::kBruteForce, Algorithm::kExpand,
                                    Algorithm::kMemo, Algorithm::kRing,
                                    Algorithm::kGeneral};

}  // namespace

std::string_view AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kBruteForce:
      return "brute";
    case Algorithm::kExpand:
      return "expand";
    case Algorithm::kMemo:
      return "memo";
    case Algorithm::kRing:
      return "ring";
    case Algorithm::kGeneral:
      return "general";
  }
  return "general";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a : kAlgorithms) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view OrderStrategyName(OrderStrategy o) {
  return o == OrderStrategy::kKahn ? "kahn" : "greedy";
}

std::optional<OrderStrategy> ParseOrderStrategy(std::string_view name) {
  if (name == "kahn") return OrderStrategy::kKahn;
  if (name == "greedy") return OrderStrategy::kGreedy;
  return std::nullopt;
}

StateOrder MakeOrder(const Topology& t, OrderStrategy strategy) {
  if (strategy == OrderStrategy::kKahn) return KahnReverseTopologicalOrder(t);
  return GreedyCompatibleOrder(t, FailureForest(t));
}

}  // namespace phisum
