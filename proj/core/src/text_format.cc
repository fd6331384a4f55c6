#include "phisum/text_format.h"

#include <sstream>

namespace phisum {

std::vector<Directive> ParseDirectives(std::istream& in) {
  struct Shape {
    const char* name;
    Directive::Kind kind;
    size_t min_args;
    size_t max_args;
  };
  static constexpr Shape kShapes[] = {
      {"arc", Directive::kArc, 4, 4},     {"phi", Directive::kPhi, 2, 3},
      {"init", Directive::kInit, 2, 2},   {"final", Directive::kFinal, 2, 2},
      {"state", Directive::kState, 1, 1}, {"symbol", Directive::kSymbol, 1, 1},
  };

  std::vector<Directive> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;
    const Shape* shape = nullptr;
    for (const Shape& s : kShapes) {
      if (head == s.name) shape = &s;
    }
    if (shape == nullptr) {
      throw ParseError(line_no, "unknown directive '" + head + "'");
    }
    Directive d{shape->kind, {}, line_no};
    for (std::string tok; tokens >> tok;) d.args.push_back(std::move(tok));
    if (d.args.size() < shape->min_args || d.args.size() > shape->max_args) {
      throw ParseError(line_no, "wrong number of fields for '" + head + "'");
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace phisum
