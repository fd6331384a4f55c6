#include "phisum/errors.h"

namespace phisum {
namespace {

std::string JoinCycle(const std::vector<std::string>& cycle) {
  std::string out = "cycle through failure and regular arcs:";
  for (const auto& s : cycle) out += " " + s;
  return out;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

CycleError::CycleError(std::vector<std::string> cycle)
    : ValidationError(JoinCycle(cycle)), cycle_(std::move(cycle)) {}

DuplicateFailureArc::DuplicateFailureArc(const std::string& state)
    : ValidationError("state " + state + " has more than one failure arc") {}

ReservedSymbolError::ReservedSymbolError(const std::string& symbol)
    : ValidationError("symbol '" + symbol + "' is reserved for failure arcs") {}

}  // namespace phisum
