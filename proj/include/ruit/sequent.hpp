#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "text.hpp"

namespace ruit {

/// Context (order-preserving, duplicates allowed) plus goal.
struct Sequent {
  std::vector<Formula> context;
  Formula goal;

  bool operator==(const Sequent&) const = default;
};

/// `A, B |- C`; the empty context is written `|- C`.
inline Sequent parse_sequent(std::string_view text) {
  detail::FormulaParser parser(text);
  Sequent s;
  if (!parser.accept("|-")) {
    while (true) {
      s.context.push_back(parser.parse_formula());
      if (parser.accept("|-")) break;
      if (!parser.accept(",")) parser.fail({",", "|-", "->", "|", "&"});
    }
  }
  s.goal = parser.parse_formula();
  parser.expect_end();
  return s;
}

inline std::string print(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.context.size(); ++i) {
    if (i) out += ", ";
    out += print(s.context[i]);
  }
  out += s.context.empty() ? "|- " : " |- ";
  out += print(s.goal);
  return out;
}

/// Sorted, duplicate-free context: the set view used by the prover.
inline std::vector<Formula> canonical_context(std::vector<Formula> ctx) {
  std::sort(ctx.begin(), ctx.end());
  ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());
  return ctx;
}

}  // namespace ruit
