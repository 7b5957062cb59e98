#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "measure.hpp"
#include "prover.hpp"
#include "substitution.hpp"

namespace ruit {

enum class BoundMode { Naive, Dedup, Optimized, Pruned };

inline std::string to_string(BoundMode mode) {
  switch (mode) {
    case BoundMode::Naive: return "naive";
    case BoundMode::Dedup: return "dedup";
    case BoundMode::Optimized: return "optimized";
    case BoundMode::Pruned: return "pruned";
  }
  return "?";
}

inline std::optional<BoundMode> parse_bound_mode(std::string_view s) {
  for (auto m : {BoundMode::Naive, BoundMode::Dedup, BoundMode::Optimized, BoundMode::Pruned})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

/// An ordered bound of `source` over the empty context.
struct BoundList {
  std::vector<Formula> elements;
  BoundMode mode = BoundMode::Naive;
  Formula source;

  std::size_t size() const { return elements.size(); }
};

/// Implicational subformulas and variables, in left-to-right first-occurrence
/// (pre-order) order.
inline std::vector<Formula> bound_subformulas(Formula a) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  std::vector<Formula> stack{a};
  while (!stack.empty()) {
    const Formula f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    if (f.is(Kind::Imp) || f.is_var()) out.push_back(f);
    if (f.is_binary()) {
      stack.push_back(f.rhs());
      stack.push_back(f.lhs());
    }
  }
  return out;
}

namespace detail {

inline void naive_bound_into(Formula a, std::vector<Formula>& out) {
  switch (a.kind()) {
    case Kind::Var:
      out.push_back(substitute_p(a, top()));
      out.push_back(top());
      return;
    case Kind::Imp:
      out.push_back(substitute_p(a, top()));
      naive_bound_into(a.lhs(), out);
      naive_bound_into(a.rhs(), out);
      return;
    case Kind::And:
    case Kind::Or:
      naive_bound_into(a.lhs(), out);
      naive_bound_into(a.rhs(), out);
      return;
    case Kind::Top:
    case Kind::Bot:
      out.push_back(top());
      return;
  }
}

}  // namespace detail

/// Direct transcription of the naive recursion: variables contribute their
/// T-substituted self and T; implications contribute themselves (T for p)
/// ahead of both sides; conjunction and disjunction concatenate; constants give [T].
inline BoundList naive_bound(Formula a) {
  BoundList b{{}, BoundMode::Naive, a};
  detail::naive_bound_into(a, b.elements);
  return b;
}

/// First occurrences kept, order preserved.
inline BoundList dedup(BoundList b) {
  std::unordered_set<Formula> seen;
  std::vector<Formula> kept;
  for (Formula f : b.elements)
    if (seen.insert(f).second) kept.push_back(f);
  b.elements = std::move(kept);
  b.mode = BoundMode::Dedup;
  return b;
}

/// One top-down pass of the T/F rewrites: a node matching a rule is replaced by
/// the rule's result and not visited further in this pass; otherwise the pass
/// descends into its children.
///   T & A => A,  A & T => A,  T | A => T,  A | T => T,
///   T -> A => A, A -> T => T, F -> A => T
inline Formula tt_rewrite_pass(Formula a) {
  std::unordered_map<std::uint32_t, Formula> memo;
  auto go = [&](auto&& self, Formula f) -> Formula {
    if (!f.is_binary()) return f;
    if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
    const Formula t = top(), l = f.lhs(), r = f.rhs();
    Formula out;
    switch (f.kind()) {
      case Kind::And:
        if (l == t) out = r;
        else if (r == t) out = l;
        else out = conj(self(self, l), self(self, r));
        break;
      case Kind::Or:
        if (l == t || r == t) out = t;
        else out = disj(self(self, l), self(self, r));
        break;
      default:
        if (l == t) out = r;
        else if (r == t || l == bot()) out = t;
        else out = imp(self(self, l), self(self, r));
        break;
    }
    memo.emplace(f.id(), out);
    return out;
  };
  return go(go, a);
}

/// `rounds` element-wise passes of `tt_rewrite_pass`, then duplicate removal.
inline BoundList tt_optimize(BoundList b, std::size_t rounds) {
  for (Formula& f : b.elements)
    for (std::size_t i = 0; i < rounds; ++i) f = tt_rewrite_pass(f);
  b = dedup(std::move(b));
  b.mode = BoundMode::Optimized;
  return b;
}

inline BoundList optimized_bound(Formula a) {
  return tt_optimize(dedup(naive_bound(a)), static_cast<std::size_t>(depth(a)));
}

/// Scans the optimized bound left to right and drops every element provably
/// equivalent to one kept earlier.
inline BoundList pruned_bound(Formula a, Prover& prover) {
  BoundList b = optimized_bound(a);
  std::vector<Formula> kept;
  for (Formula f : b.elements) {
    const bool redundant = std::any_of(kept.begin(), kept.end(), [&](Formula k) { return prover.equiv({}, f, k); });
    if (!redundant) kept.push_back(f);
  }
  b.elements = std::move(kept);
  b.mode = BoundMode::Pruned;
  return b;
}

inline BoundList pruned_bound(Formula a) {
  Prover prover(ProverOptions{.record_derivations = false});
  return pruned_bound(a, prover);
}

inline BoundList compute_bound(Formula a, BoundMode mode, Prover& prover) {
  switch (mode) {
    case BoundMode::Naive: return naive_bound(a);
    case BoundMode::Dedup: return dedup(naive_bound(a));
    case BoundMode::Optimized: return optimized_bound(a);
    case BoundMode::Pruned: return pruned_bound(a, prover);
  }
  throw std::logic_error("compute_bound: unknown mode");
}

/// For every C in bound_subformulas(source) some element B satisfies
/// context |- C{T}/p <-> B. Returns the first uncovered C, if any.
inline std::optional<Formula> uncovered_subformula(const BoundList& b, Prover& prover,
                                                   const std::vector<Formula>& context = {}) {
  for (Formula c : bound_subformulas(b.source)) {
    const Formula ct = substitute_p(c, top());
    const bool covered =
        std::any_of(b.elements.begin(), b.elements.end(), [&](Formula e) { return prover.equiv(context, ct, e); });
    if (!covered) return c;
  }
  return std::nullopt;
}

inline bool is_bound(const BoundList& b, Prover& prover, const std::vector<Formula>& context = {}) {
  return !uncovered_subformula(b, prover, context).has_value();
}

}  // namespace ruit
