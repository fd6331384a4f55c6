#ifndef PHISUM_TEXT_FORMAT_H_
#define PHISUM_TEXT_FORMAT_H_

#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "phisum/automaton.h"
#include "phisum/errors.h"
#include "phisum/semiring.h"

namespace phisum {

// One line of the text format:
//   arc <src> <dst> <symbol> <weight>
//   phi <src> <dst> [<weight>]
//   init <state> <weight>
//   final <state> <weight>
//   state <name>        optional declaration, fixes id order
//   symbol <name>       optional declaration, fixes id order
// '#' starts a comment. Weights are parsed later, per semiring.
struct Directive {
  enum Kind { kArc, kPhi, kInit, kFinal, kState, kSymbol };
  Kind kind;
  std::vector<std::string> args;
  int line;
};

// Tokenizes and checks arity; throws ParseError.
std::vector<Directive> ParseDirectives(std::istream& in);

// States and symbols get ids in order of first mention. A weight on a `phi`
// line switches the automaton to weighted-failure mode.
template <Semiring K>
Automaton<K> BuildFromDirectives(const std::vector<Directive>& directives) {
  AutomatonBuilder<K> b;
  auto weight = [](const Directive& d, const std::string& text) {
    auto w = K::Parse(text);
    if (!w) {
      throw ParseError(d.line, "bad " + std::string(K::kName) + " weight '" +
                                   text + "'");
    }
    return *w;
  };
  std::unordered_set<StateId> seen_initial, seen_final;
  for (const Directive& d : directives) {
    switch (d.kind) {
      case Directive::kState:
        b.AddState(d.args[0]);
        break;
      case Directive::kSymbol:
        b.AddSymbol(d.args[0]);
        break;
      case Directive::kArc: {
        StateId src = b.AddState(d.args[0]);
        StateId dst = b.AddState(d.args[1]);
        Label label = b.AddSymbol(d.args[2]);
        b.AddArc(src, label, weight(d, d.args[3]), dst);
        break;
      }
      case Directive::kPhi: {
        StateId src = b.AddState(d.args[0]);
        StateId dst = b.AddState(d.args[1]);
        if (d.args.size() == 3) {
          b.AddFailure(src, dst, weight(d, d.args[2]));
          b.SetWeightedFailures(true);
        } else {
          b.AddFailure(src, dst);
        }
        break;
      }
      case Directive::kInit:
      case Directive::kFinal: {
        StateId q = b.AddState(d.args[0]);
        auto& seen = d.kind == Directive::kInit ? seen_initial : seen_final;
        if (!seen.insert(q).second) {
          throw ParseError(d.line, "duplicate " +
                                       std::string(d.kind == Directive::kInit
                                                       ? "init"
                                                       : "final") +
                                       " for state " + d.args[0]);
        }
        if (d.kind == Directive::kInit) {
          b.SetInitial(q, weight(d, d.args[1]));
        } else {
          b.SetFinal(q, weight(d, d.args[1]));
        }
        break;
      }
    }
  }
  return b.Build();
}

template <Semiring K>
Automaton<K> ReadAutomaton(std::istream& in) {
  return BuildFromDirectives<K>(ParseDirectives(in));
}

// Prints every state and symbol declaration first so that reading the
// output back reproduces the same ids.
template <Semiring K>
void WriteAutomaton(std::ostream& out, const Automaton<K>& a) {
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << "state " << a.state_name(q) << '\n';
  }
  for (Label l = 0; l < a.num_symbols(); ++l) {
    out << "symbol " << a.symbol_name(l) << '\n';
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (int64_t i = a.arc_begin(q); i < a.arc_end(q); ++i) {
      out << "arc " << a.state_name(q) << ' ' << a.state_name(a.arc_next(i))
          << ' ' << a.symbol_name(a.arc_label(i)) << ' '
          << K::Format(a.arc_weight(i)) << '\n';
    }
    if (a.has_fallback(q)) {
      out << "phi " << a.state_name(q) << ' ' << a.state_name(a.fallback(q));
      if (a.weighted_failures()) out << ' ' << K::Format(a.failure_weight(q));
      out << '\n';
    }
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!K::Equal(a.initial(q), K::Zero())) {
      out << "init " << a.state_name(q) << ' ' << K::Format(a.initial(q))
          << '\n';
    }
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!K::Equal(a.final_weight(q), K::Zero())) {
      out << "final " << a.state_name(q) << ' ' << K::Format(a.final_weight(q))
          << '\n';
    }
  }
}

}  // namespace phisum

#endif  // PHISUM_TEXT_FORMAT_H_
