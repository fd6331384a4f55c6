#include "phisum/generators.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace phisum {

namespace {

std::string SymbolName(int32_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "y" + std::to_string(i);
}

std::vector<std::string> SymbolNames(int32_t n) {
  std::vector<std::string> names;
  for (int32_t i = 0; i < n; ++i) names.push_back(SymbolName(i));
  return names;
}

bool Coin(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

}  // namespace

Skeleton RandomSkeleton(const RandomParams& p) {
  if (p.states < 1 || p.symbols < 1) {
    throw std::invalid_argument("need at least one state and one symbol");
  }
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(p.density) || !in_unit(p.phi_prob) || !in_unit(p.extra_arc_prob)) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  std::mt19937_64 rng(p.seed);
  const int32_t n = p.states;
  Skeleton s;
  for (int32_t q = 0; q < n; ++q) s.state_names.push_back(std::to_string(q));
  s.symbol_names = SymbolNames(p.symbols);
  s.weighted_failures = p.weighted_phi;
  if (n == 1) {
    s.initial = {0};
    s.final = {0};
    return s;
  }
  // The last state has no higher state to point to; the others make up for it.
  const double keep = std::min(1.0, p.density * n / (n - 1));
  for (StateId q = 0; q + 1 < n; ++q) {
    std::uniform_int_distribution<StateId> higher(q + 1, n - 1);
    for (Label a = 0; a < p.symbols; ++a) {
      if (!Coin(rng, keep)) continue;
      const StateId dst = higher(rng);
      s.arcs.push_back({q, a, dst});
      if (n - q > 2 && Coin(rng, p.extra_arc_prob)) {
        StateId other = higher(rng);
        while (other == dst) other = higher(rng);
        s.arcs.push_back({q, a, other});
      }
    }
    if (Coin(rng, p.phi_prob)) s.failures.push_back({q, higher(rng)});
  }
  s.initial.push_back(0);
  s.final.push_back(n - 1);
  for (StateId q = 1; q < n; ++q) {
    if (Coin(rng, 0.2)) s.initial.push_back(q);
  }
  for (StateId q = 0; q + 1 < n; ++q) {
    if (Coin(rng, 0.2)) s.final.push_back(q);
  }
  return s;
}

Skeleton LatticeSkeleton(const LatticeParams& p) {
  if (p.length < 1 || p.symbols < 1 || p.order < 1) {
    throw std::invalid_argument("lattice needs length, symbols and order >= 1");
  }
  std::mt19937_64 rng(p.seed);
  Skeleton s;
  s.symbol_names = SymbolNames(p.symbols);
  s.weighted_failures = p.weighted_phi;

  // History -> state, per position. Histories list the oldest symbol first.
  using History = std::vector<Label>;
  std::vector<std::map<History, StateId>> at(p.length + 1);
  auto add = [&](int32_t t, const History& h) {
    std::string name = "p" + std::to_string(t) + "_";
    for (Label a : h) name += s.symbol_names[a];
    const auto id = static_cast<StateId>(s.state_names.size());
    s.state_names.push_back(std::move(name));
    at[t].emplace(h, id);
    return id;
  };
  for (int32_t t = 0; t <= p.length; ++t) {
    add(t, {});
    if (t == p.length) break;  // the last position keeps only the empty history
    const int32_t longest = std::min(t, p.order - 1);
    std::vector<History> frontier = {{}};
    for (int32_t len = 0; len < longest; ++len) {
      std::vector<History> next;
      for (const History& h : frontier) {
        for (Label y = 0; y < p.symbols; ++y) {
          if (!Coin(rng, p.context_prob)) continue;
          History longer = {y};
          longer.insert(longer.end(), h.begin(), h.end());
          const StateId child = add(t, longer);
          s.failures.push_back({child, at[t].at(h)});
          next.push_back(std::move(longer));
        }
      }
      frontier = std::move(next);
    }
  }
  for (int32_t t = 0; t < p.length; ++t) {
    for (const auto& [h, q] : at[t]) {
      for (Label y = 0; y < p.symbols; ++y) {
        if (!h.empty() && !Coin(rng, p.density)) continue;
        History target = h;
        target.push_back(y);
        // Longest suffix the next position keeps.
        auto begin = target.begin();
        while (at[t + 1].find(History(begin, target.end())) == at[t + 1].end()) {
          ++begin;
        }
        s.arcs.push_back({q, y, at[t + 1].at(History(begin, target.end()))});
      }
    }
  }
  s.initial.push_back(at[0].at({}));
  s.final.push_back(at[p.length].at({}));
  return s;
}

Skeleton ShoelacesSkeleton(int32_t rungs) {
  if (rungs < 1) throw std::invalid_argument("shoelaces needs at least one rung");
  const int32_t n = 2 * rungs + 1;
  Skeleton s;
  for (int32_t j = 1; j <= n; ++j) s.state_names.push_back(std::to_string(j));
  s.symbol_names = {"a", "b"};
  auto id = [](int32_t j) { return static_cast<StateId>(j - 1); };
  s.arcs.push_back({id(2), 1, id(1)});
  for (int32_t j = 3; j <= n; ++j) s.arcs.push_back({id(j), 0, id(j - 1)});
  for (int32_t j = 2; j <= n; ++j) {
    s.failures.push_back({id(j), id(std::max(j - 2, 1))});
  }
  s.initial.push_back(id(n));
  s.final.push_back(id(1));
  return s;
}

}  // namespace phisum
