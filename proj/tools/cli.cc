#include "cli.h"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "phisum/automaton.h"
#include "phisum/errors.h"
#include "phisum/failure_forest.h"
#include "phisum/generators.h"
#include "phisum/pathsum.h"
#include "phisum/semiring.h"
#include "phisum/splitting.h"
#include "phisum/stats.h"
#include "phisum/text_format.h"

namespace phisum::cli {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> SemiringNameList() {
  return {std::begin(kSemiringNames), std::end(kSemiringNames)};
}

struct PathsumArgs {
  std::string input;
  std::string semiring = "real";
  std::string algorithm = "general";
  std::string order = "kahn";
  std::string split = "none";
  std::string copy_cost = "keys";
  int64_t update_cost = 0;
  uint64_t path_budget = 1'000'000;
  bool assert_compatible = false;
  bool weighted_phi = false;
  bool stats = false;
  bool json = false;
  bool split_report = false;
  bool dump_aggregator = false;
};

struct GenArgs {
  std::string family = "random";
  std::string semiring = "real";
  std::string output;
  RandomParams random;
  LatticeParams lattice;
  int32_t rungs = 3;
  bool unit_weights = false;
};

struct BenchArgs {
  std::string family = "random";
  uint64_t seed = 1;
  int32_t count = 3;
  std::vector<int32_t> states = {50};
  std::vector<int32_t> symbols = {10};
  std::vector<double> density = {0.05, 0.1, 0.2, 0.5};
  std::vector<double> phi_prob = {0.5};
  std::vector<int32_t> length = {6};
  std::vector<int32_t> order_n = {3};
  std::vector<double> context_prob = {0.5};
  std::vector<int32_t> rungs = {2, 4, 8, 16, 32};
  bool weighted_phi = false;
  std::vector<std::string> algorithms = {"memo", "ring", "general"};
  std::vector<std::string> semirings = {"real"};
  std::string order = "kahn";
  std::string split = "none";
  bool no_verify = false;
};

struct InputArgs {
  std::string input;
  std::string semiring = "real";
};

std::istream& OpenInput(const std::string& path, std::ifstream& file) {
  if (path == "-") return std::cin;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");
  return file;
}

template <Semiring K>
Automaton<K> LoadAutomaton(const std::string& path) {
  std::ifstream file;
  return ReadAutomaton<K>(OpenInput(path, file));
}

CopyCostModel ParseCopyCost(const std::string& name) {
  return name == "alphabet" ? CopyCostModel::kAlphabet
                            : CopyCostModel::kInternedKeys;
}

std::string StateNames(const Topology& t, const std::vector<StateId>& states) {
  std::string out;
  for (StateId q : states) {
    if (!out.empty()) out += ',';
    out += t.state_name(q);
  }
  return out;
}

Json CountersJson(const Counters& c) {
  Json j;
  j["oplus"] = c.ops.oplus;
  j["otimes"] = c.ops.otimes;
  j["ominus"] = c.ops.ominus;
  j["inverse"] = c.ops.inverse;
  j["beta_qa_calls"] = c.beta_qa_calls;
  j["visit_calls"] = c.visit_calls;
  j["leave_calls"] = c.leave_calls;
  j["aggregator_sets"] = c.aggregator_sets;
  j["aggregator_mults"] = c.aggregator_mults;
  j["aggregator_copies"] = c.aggregator_copies;
  j["aggregator_node_writes"] = c.aggregator_node_writes;
  j["expanded_arcs"] = c.expanded_arcs;
  j["failure_copies"] = c.failure_copies;
  j["paths"] = c.paths;
  j["modeled_visit_cost"] = c.modeled_visit_cost;
  j["modeled_copy_cost"] = c.modeled_copy_cost;
  return j;
}

template <Semiring K>
Json ReportJson(const Automaton<K>& a, const PathsumReport<K>& r) {
  Json j;
  j["Z"] = K::Format(r.z);
  j["algorithm"] = r.algorithm;
  j["semiring"] = r.semiring;
  j["order"] = r.order;
  j["compatible"] = r.compatible;
  j["weighted"] = r.weighted;
  j["split"] = r.split;
  j["counters"] = CountersJson(r.counters);
  Json beta = Json::object();
  for (StateId q = 0; q < static_cast<StateId>(r.table.beta.size()); ++q) {
    beta[a.state_name(q)] = K::Format(r.table.beta[q]);
  }
  j["beta"] = beta;
  if (!r.visits_per_state.empty()) {
    Json visits = Json::object();
    for (StateId q = 0; q < a.num_states(); ++q) {
      visits[a.state_name(q)] = r.visits_per_state[q];
    }
    j["visits"] = visits;
  }
  Json split = Json::array();
  for (StateId q : r.split_states) split.push_back(a.state_name(q));
  j["split_states"] = split;
  return j;
}

template <Semiring K>
void PrintReport(std::ostream& out, const Automaton<K>& a,
                 const PathsumReport<K>& r) {
  const Counters& c = r.counters;
  out << "algorithm=" << r.algorithm << '\n'
      << "semiring=" << r.semiring << '\n'
      << "order=" << r.order << '\n'
      << "compatible=" << r.compatible << '\n'
      << "weighted=" << r.weighted << '\n'
      << "split=" << r.split << '\n'
      << "oplus=" << c.ops.oplus << '\n'
      << "otimes=" << c.ops.otimes << '\n'
      << "ominus=" << c.ops.ominus << '\n'
      << "inverse=" << c.ops.inverse << '\n'
      << "beta_qa_calls=" << c.beta_qa_calls << '\n'
      << "visit_calls=" << c.visit_calls << '\n'
      << "leave_calls=" << c.leave_calls << '\n'
      << "aggregator_sets=" << c.aggregator_sets << '\n'
      << "aggregator_mults=" << c.aggregator_mults << '\n'
      << "aggregator_copies=" << c.aggregator_copies << '\n'
      << "aggregator_node_writes=" << c.aggregator_node_writes << '\n'
      << "expanded_arcs=" << c.expanded_arcs << '\n'
      << "failure_copies=" << c.failure_copies << '\n'
      << "paths=" << c.paths << '\n'
      << "modeled_visit_cost=" << c.modeled_visit_cost << '\n'
      << "modeled_copy_cost=" << c.modeled_copy_cost << '\n'
      << "split_states=" << StateNames(a, r.split_states) << '\n';
  for (StateId q = 0; q < static_cast<StateId>(r.table.beta.size()); ++q) {
    out << "beta " << a.state_name(q) << ' ' << K::Format(r.table.beta[q]);
    if (!r.visits_per_state.empty()) out << " visits=" << r.visits_per_state[q];
    out << '\n';
  }
}

// Static plan per tree, with the saving the plan predicts and the saving a
// pessimal run (every state climbs from its tree root) actually shows.
template <Semiring K>
void PrintSplitReport(std::ostream& out, const Automaton<K>& a,
                      const PathsumArgs& args) {
  using Agg = typename DefaultAggregator<K>::type;
  const FailureForest forest(a);
  const SparsityStats stats = ComputeStats(a, forest);
  const bool weighted = a.weighted_failures() || args.weighted_phi;
  const int64_t cu = args.update_cost > 0
                         ? args.update_cost
                         : DefaultUpdateCost<Agg>(a.num_symbols());
  const CopyCostModel model = ParseCopyCost(args.copy_cost);
  const SplitPlan plan =
      OptimalStaticSplit(forest, MakeSplitCosts(a, stats, weighted, model, cu));
  const StateOrder order = MakeOrder(a, OrderStrategy::kKahn);
  GeneralOptions g;
  g.copy_model = model;
  g.update_cost = cu;
  g.force_weighted = args.weighted_phi;
  g.reset_to_root = true;
  const auto before = GeneralBackward<K, Agg>(a, order, g);
  g.split = SplitMode::kStatic;
  g.plan = &plan;
  const auto after = GeneralBackward<K, Agg>(a, order, g);

  out << "split-report update_cost=" << cu << " copy_cost="
      << (model == CopyCostModel::kAlphabet ? "alphabet" : "keys") << '\n';
  for (const TreeSplit& t : plan.trees) {
    out << "tree root=" << a.state_name(t.root)
        << " size=" << forest.tree_size(t.tree)
        << " split=" << StateNames(a, t.split_states)
        << " improvement=" << t.improvement << '\n';
    for (StateId q : forest.tree_states(t.tree)) {
      out << "  D " << a.state_name(q) << ' ' << plan.chain_updates[q] << '\n';
    }
  }
  out << "predicted_improvement=" << plan.improvement << '\n'
      << "measured_improvement="
      << before.counters.modeled_cost() - after.counters.modeled_cost() << '\n';
}

template <Semiring K>
int RunPathsum(const PathsumArgs& args, std::ostream& out) {
  const Automaton<K> a = LoadAutomaton<K>(args.input);
  PathsumOptions o;
  o.algorithm = *ParseAlgorithm(args.algorithm);
  o.order = *ParseOrderStrategy(args.order);
  o.split = *ParseSplitMode(args.split);
  o.copy_model = ParseCopyCost(args.copy_cost);
  o.update_cost = args.update_cost;
  o.weighted_phi = args.weighted_phi;
  o.assert_compatible = args.assert_compatible;
  o.path_budget = args.path_budget;
  std::ostringstream dump;
  if (args.dump_aggregator) o.dump_aggregator = &dump;
  const PathsumReport<K> r = Pathsum(a, o);
  if (args.json) {
    Json j = ReportJson(a, r);
    if (args.dump_aggregator) j["aggregator_dump"] = dump.str();
    out << j.dump(2) << '\n';
  } else {
    out << K::Format(r.z) << '\n';
    if (args.stats) PrintReport(out, a, r);
    out << dump.str();
  }
  if (args.split_report) PrintSplitReport(out, a, args);
  return 0;
}

Skeleton MakeSkeleton(const GenArgs& args) {
  if (args.family == "lattice") return LatticeSkeleton(args.lattice);
  if (args.family == "shoelaces") return ShoelacesSkeleton(args.rungs);
  return RandomSkeleton(args.random);
}

uint64_t WeightSeed(uint64_t seed) { return seed * 0x9E3779B97F4A7C15ULL + 1; }

template <Semiring K>
int RunGen(const GenArgs& args, std::ostream& out) {
  const Skeleton s = MakeSkeleton(args);
  const uint64_t seed =
      args.family == "lattice" ? args.lattice.seed : args.random.seed;
  const Automaton<K> a =
      args.unit_weights ? InstantiateUnit<K>(s) : Instantiate<K>(s, WeightSeed(seed));
  if (args.output.empty() || args.output == "-") {
    WriteAutomaton(out, a);
  } else {
    std::ofstream file(args.output);
    if (!file) throw std::runtime_error("cannot write '" + args.output + "'");
    WriteAutomaton(file, a);
  }
  return 0;
}

template <Semiring K>
int RunExpand(const InputArgs& args, std::ostream& out) {
  WriteAutomaton(out, FailureExpand(LoadAutomaton<K>(args.input)));
  return 0;
}

std::string SymbolList(const Topology& t, const std::vector<Label>& labels) {
  std::string out;
  for (Label l : labels) {
    if (!out.empty()) out += ',';
    out += t.symbol_name(l);
  }
  return out;
}

template <Semiring K>
int RunStats(const InputArgs& args, std::ostream& out) {
  const Automaton<K> a = LoadAutomaton<K>(args.input);
  const FailureForest forest(a);
  const SparsityStats st = ComputeStats(a, forest);
  int32_t nonsingleton = 0;
  for (int32_t t = 0; t < forest.num_trees(); ++t) {
    nonsingleton += forest.tree_size(t) > 1;
  }
  out << "states=" << st.num_states << '\n'
      << "symbols=" << st.num_symbols << '\n'
      << "arcs=" << st.num_arcs << '\n'
      << "failure_arcs=" << a.num_failures() << '\n'
      << "merged_parallel_arcs=" << a.validation().merged_parallel_arcs << '\n'
      << "weighted_failures=" << a.weighted_failures() << '\n'
      << "expanded_arcs=" << st.num_expanded_arcs << '\n'
      << "s=" << st.s << '\n'
      << "s_bar=" << st.s_bar << '\n'
      << "out_symbols_total=" << st.total_out_symbols << '\n'
      << "expanded_symbols_total=" << st.total_expanded_out_symbols << '\n'
      << "subtree_symbols_total=" << st.total_subtree_symbols << '\n'
      << "trees=" << forest.num_trees() << '\n'
      << "nonsingleton_trees=" << nonsingleton << '\n'
      << "max_tree_size=" << forest.max_tree_size() << '\n'
      << "max_chain_length=" << forest.max_chain_length() << '\n';
  for (StateId q = 0; q < a.num_states(); ++q) {
    std::vector<Label> own;
    for (const auto& run : a.runs(q)) own.push_back(run.label);
    out << "state " << a.state_name(q) << " fallback="
        << (a.has_fallback(q) ? a.state_name(a.fallback(q)) : "-")
        << " tree_root=" << a.state_name(forest.root(forest.tree(q)))
        << " chain_length=" << forest.chain_length(q)
        << " subtree_size=" << forest.subtree_size(q)
        << " out={" << SymbolList(a, own) << "}"
        << " expanded={" << SymbolList(a, st.expanded_symbols[q]) << "}"
        << " subtree={" << SymbolList(a, st.subtree_symbols[q]) << "}\n";
  }
  return 0;
}

// One (family parameters, seed) point of a bench sweep.
struct BenchInstance {
  uint64_t seed;
  Skeleton skeleton;
};

std::vector<BenchInstance> BenchInstances(const BenchArgs& b) {
  std::vector<BenchInstance> out;
  for (int32_t i = 0; i < b.count; ++i) {
    const uint64_t seed = b.seed + static_cast<uint64_t>(i);
    if (b.family == "random") {
      for (int32_t n : b.states) {
        for (int32_t k : b.symbols) {
          for (double s : b.density) {
            for (double phi : b.phi_prob) {
              RandomParams p;
              p.states = n;
              p.symbols = k;
              p.density = s;
              p.phi_prob = phi;
              p.weighted_phi = b.weighted_phi;
              p.seed = seed;
              out.push_back({seed, RandomSkeleton(p)});
            }
          }
        }
      }
    } else if (b.family == "lattice") {
      for (int32_t len : b.length) {
        for (int32_t k : b.symbols) {
          for (int32_t n : b.order_n) {
            for (double c : b.context_prob) {
              for (double s : b.density) {
                LatticeParams p;
                p.length = len;
                p.symbols = k;
                p.order = n;
                p.context_prob = c;
                p.density = s;
                p.weighted_phi = b.weighted_phi;
                p.seed = seed;
                out.push_back({seed, LatticeSkeleton(p)});
              }
            }
          }
        }
      }
    } else if (i == 0) {  // shoelaces is deterministic; one pass suffices
      for (int32_t r : b.rungs) out.push_back({seed, ShoelacesSkeleton(r)});
    }
  }
  return out;
}

constexpr const char* kBenchHeader =
    "seed,states,symbols,s,s_bar,t_max,pi_max,algorithm,semiring,order,"
    "compatible,Z,oplus,otimes,beta_qa,visits,leaves,sets,copies,"
    "expanded_arcs,wall_us,verified";

// Returns false if some algorithm disagreed with the expansion baseline.
template <Semiring K>
bool BenchOne(const BenchArgs& b, const BenchInstance& inst, std::ostream& out) {
  const Automaton<K> a = Instantiate<K>(inst.skeleton, WeightSeed(inst.seed));
  const FailureForest forest(a);
  const SparsityStats st = ComputeStats(a, forest);
  PathsumOptions o;
  o.order = *ParseOrderStrategy(b.order);
  o.split = *ParseSplitMode(b.split);
  std::optional<typename K::Weight> reference;
  if (!b.no_verify) {
    o.algorithm = Algorithm::kExpand;
    reference = Pathsum(a, o).z;
  }
  bool ok = true;
  for (const std::string& name : b.algorithms) {
    o.algorithm = *ParseAlgorithm(name);
    if (o.algorithm == Algorithm::kRing && !Ring<K>) continue;
    const auto start = std::chrono::steady_clock::now();
    const PathsumReport<K> r = Pathsum(a, o);
    const auto wall = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    const bool verified = !reference || WeightsAgree<K>(r.z, *reference);
    ok = ok && verified;
    const Counters& c = r.counters;
    out << inst.seed << ',' << a.num_states() << ',' << a.num_symbols() << ','
        << st.s << ',' << st.s_bar << ',' << forest.max_tree_size() << ','
        << forest.max_chain_length() << ',' << r.algorithm << ',' << r.semiring
        << ',' << r.order << ',' << r.compatible << ',' << K::Format(r.z)
        << ',' << c.ops.oplus << ',' << c.ops.otimes << ',' << c.beta_qa_calls
        << ',' << c.visit_calls << ',' << c.leave_calls << ','
        << c.aggregator_sets << ','
        << (c.aggregator_copies + c.failure_copies) << ',' << c.expanded_arcs
        << ',' << wall.count() << ',' << (reference ? (verified ? "1" : "0") : "")
        << '\n';
  }
  return ok;
}

int RunBench(const BenchArgs& b, std::ostream& out, std::ostream& err) {
  out << kBenchHeader << '\n';
  const std::vector<BenchInstance> instances = BenchInstances(b);
  for (const std::string& semiring : b.semirings) {
    for (const BenchInstance& inst : instances) {
      bool ok = true;
      DispatchSemiring(semiring, [&](auto k) {
        ok = BenchOne<decltype(k)>(b, inst, out);
      });
      if (!ok) {
        err << "error: Z disagreement on seed " << inst.seed << " ("
            << semiring << ")\n";
        return kExitDisagreement;
      }
    }
  }
  return 0;
}

template <class F>
int WithSemiring(const std::string& name, F&& f) {
  int code = 1;
  DispatchSemiring(name, [&](auto k) { code = f(k); });
  return code;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Pathsums of weighted automata with failure transitions"};
  app.require_subcommand(1);
  const auto semirings = CLI::IsMember(SemiringNameList());

  PathsumArgs ps;
  auto* pathsum = app.add_subcommand("pathsum", "Compute the pathsum Z");
  pathsum->add_option("-i,--input", ps.input, "Automaton file, - for stdin")
      ->required();
  pathsum->add_option("--semiring", ps.semiring)->check(semirings);
  pathsum->add_option("--algorithm", ps.algorithm)
      ->check(CLI::IsMember({"brute", "expand", "memo", "ring", "general"}));
  pathsum->add_option("--order", ps.order)
      ->check(CLI::IsMember({"kahn", "greedy"}));
  pathsum->add_flag("--assert-compatible", ps.assert_compatible,
                    "Fail unless the order is compatible with the failure forest");
  pathsum->add_option("--split", ps.split)
      ->check(CLI::IsMember({"none", "dynamic", "static", "always"}));
  pathsum->add_option("--copy-cost", ps.copy_cost,
                      "How a copy is charged: keys or alphabet")
      ->check(CLI::IsMember({"keys", "alphabet"}));
  pathsum->add_option("--update-cost", ps.update_cost,
                      "Model cost of one update; 0 picks a default")
      ->check(CLI::NonNegativeNumber);
  pathsum->add_option("--path-budget", ps.path_budget,
                      "Path limit for the brute-force algorithm");
  pathsum->add_flag("--weighted-phi", ps.weighted_phi);
  pathsum->add_flag("--stats", ps.stats, "Print the full report");
  pathsum->add_flag("--json", ps.json, "Print the report as JSON");
  pathsum->add_flag("--split-report", ps.split_report);
  pathsum->add_flag("--dump-aggregator", ps.dump_aggregator);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an automaton");
  gen_cmd->add_option("--family", gen.family)
      ->check(CLI::IsMember({"random", "lattice", "shoelaces"}));
  gen_cmd->add_option("--semiring", gen.semiring)->check(semirings);
  gen_cmd->add_option("-o,--output", gen.output);
  gen_cmd->add_option("--states", gen.random.states)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--symbols", gen.random.symbols)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--density", gen.random.density)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--phi-prob", gen.random.phi_prob)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--extra-arc-prob", gen.random.extra_arc_prob)
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.random.seed)->required();
  gen_cmd->add_flag("--weighted-phi", gen.random.weighted_phi);
  gen_cmd->add_flag("--unit-weights", gen.unit_weights, "Give every weight One");
  gen_cmd->add_option("--length", gen.lattice.length)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--order", gen.lattice.order)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--context-prob", gen.lattice.context_prob)
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--rungs", gen.rungs)->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep generated instances, print CSV");
  bench_cmd->add_option("--family", bench.family)
      ->check(CLI::IsMember({"random", "lattice", "shoelaces"}));
  bench_cmd->add_option("--seed", bench.seed, "First seed");
  bench_cmd->add_option("--count", bench.count, "Seeds per grid point")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--states", bench.states)->delimiter(',');
  bench_cmd->add_option("--symbols", bench.symbols)->delimiter(',');
  bench_cmd->add_option("--density", bench.density)->delimiter(',');
  bench_cmd->add_option("--phi-prob", bench.phi_prob)->delimiter(',');
  bench_cmd->add_option("--length", bench.length)->delimiter(',');
  bench_cmd->add_option("--history-order", bench.order_n)->delimiter(',');
  bench_cmd->add_option("--context-prob", bench.context_prob)->delimiter(',');
  bench_cmd->add_option("--rungs", bench.rungs)->delimiter(',');
  bench_cmd->add_flag("--weighted-phi", bench.weighted_phi);
  bench_cmd->add_option("--algorithms", bench.algorithms)
      ->delimiter(',')
      ->check(CLI::IsMember({"brute", "expand", "memo", "ring", "general"}));
  bench_cmd->add_option("--semirings", bench.semirings)
      ->delimiter(',')
      ->check(semirings);
  bench_cmd->add_option("--order", bench.order)
      ->check(CLI::IsMember({"kahn", "greedy"}));
  bench_cmd->add_option("--split", bench.split)
      ->check(CLI::IsMember({"none", "dynamic", "static", "always"}));
  bench_cmd->add_flag("--no-verify", bench.no_verify,
                      "Do not cross-check Z against failure expansion");

  InputArgs expand;
  auto* expand_cmd =
      app.add_subcommand("expand", "Print the failure-expanded automaton");
  expand_cmd->add_option("-i,--input", expand.input)->required();
  expand_cmd->add_option("--semiring", expand.semiring)->check(semirings);

  InputArgs stats;
  auto* stats_cmd =
      app.add_subcommand("stats", "Print sparsity statistics and the failure forest");
  stats_cmd->add_option("-i,--input", stats.input)->required();
  stats_cmd->add_option("--semiring", stats.semiring)->check(semirings);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  gen.lattice.symbols = gen.random.symbols;
  gen.lattice.density = gen.random.density;
  gen.lattice.seed = gen.random.seed;
  gen.lattice.weighted_phi = gen.random.weighted_phi;

  try {
    if (*pathsum) {
      return WithSemiring(ps.semiring, [&](auto k) {
        return RunPathsum<decltype(k)>(ps, out);
      });
    }
    if (*gen_cmd) {
      return WithSemiring(gen.semiring, [&](auto k) {
        return RunGen<decltype(k)>(gen, out);
      });
    }
    if (*bench_cmd) return RunBench(bench, out, err);
    if (*expand_cmd) {
      return WithSemiring(expand.semiring, [&](auto k) {
        return RunExpand<decltype(k)>(expand, out);
      });
    }
    if (*stats_cmd) {
      return WithSemiring(stats.semiring, [&](auto k) {
        return RunStats<decltype(k)>(stats, out);
      });
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const CapabilityError& e) {
    err << "capability error: " << e.what() << '\n';
    return kExitCapability;
  } catch (const IncompatibleOrderError& e) {
    err << "order error: " << e.what() << '\n';
    return kExitIncompatibleOrder;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace phisum::cli
