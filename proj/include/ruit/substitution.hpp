#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "measure.hpp"

namespace ruit {

/// Single-point substitution: replace Var(target) by `replacement`.
struct Substitution {
  std::uint32_t target = 0;
  Formula replacement;
};

inline Substitution subst_p(Formula replacement) { return {0, replacement}; }

/// Homomorphic replacement, memoized over shared nodes.
inline Formula substitute(Formula a, Substitution s) {
  return fold<Formula>(a, [&](Formula f, const Formula* l, const Formula* r) -> Formula {
    if (l) return (*l == f.lhs() && *r == f.rhs()) ? f : rebuild(f, *l, *r);
    if (f.is_var() && f.var_index() == s.target) return s.replacement;
    return f;
  });
}

/// A{B}/p
inline Formula substitute_p(Formula a, Formula b) { return substitute(a, subst_p(b)); }

inline constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// A^0(p) = p, A^{n+1}(p) = A(A^n(p)).
inline Formula iterate(Formula a, std::uint64_t n, std::uint64_t max_dag_size = kUnlimited) {
  Formula acc = p();
  for (std::uint64_t i = 0; i < n; ++i) {
    acc = substitute_p(a, acc);
    if (max_dag_size != kUnlimited && dag_size(acc) > max_dag_size)
      throw ResourceLimit("iterate: DAG size ceiling " + std::to_string(max_dag_size) + " exceeded at step " +
                          std::to_string(i + 1));
  }
  return acc;
}

struct RewriteInstance {
  const char* name;
  Formula before;
  Formula after;
};

/// The audited rewrite set used by `normalize`, instantiated at `a`. Every
/// rule is an IPC equivalence; the test suite proves each one.
inline std::vector<RewriteInstance> rewrite_rules(Formula a) {
  const Formula t = top(), b = bot();
  return {
      {"A -> T => T", imp(a, t), t},
      {"T -> A => A", imp(t, a), a},
      {"F -> A => T", imp(b, a), t},
      {"A & T => A", conj(a, t), a},
      {"T & A => A", conj(t, a), a},
      {"A & F => F", conj(a, b), b},
      {"F & A => F", conj(b, a), b},
      {"A | F => A", disj(a, b), a},
      {"F | A => A", disj(b, a), a},
      {"A | T => T", disj(a, t), t},
      {"T | A => T", disj(t, a), t},
      {"A & A => A", conj(a, a), a},
      {"A | A => A", disj(a, a), a},
  };
}

/// Applies one rewrite at the root, assuming the children are already in
/// normal form. Returns the node unchanged when nothing fires.
inline Formula rewrite_root(Formula f) {
  const Formula t = top(), b = bot();
  switch (f.kind()) {
    case Kind::Imp:
      if (f.rhs() == t) return t;
      if (f.lhs() == t) return f.rhs();
      if (f.lhs() == b) return t;
      return f;
    case Kind::And:
      if (f.lhs() == t) return f.rhs();
      if (f.rhs() == t) return f.lhs();
      if (f.lhs() == b || f.rhs() == b) return b;
      if (f.lhs() == f.rhs()) return f.lhs();
      return f;
    case Kind::Or:
      if (f.lhs() == b) return f.rhs();
      if (f.rhs() == b) return f.lhs();
      if (f.lhs() == t || f.rhs() == t) return t;
      if (f.lhs() == f.rhs()) return f.lhs();
      return f;
    default:
      return f;
  }
}

/// Bottom-up normal form under the rewrite set. Each rule returns a child or
/// a constant, so a single bottom-up pass reaches the normal form.
inline Formula normalize(Formula a) {
  return fold<Formula>(a, [](Formula f, const Formula* l, const Formula* r) -> Formula {
    if (!l) return f;
    return rewrite_root((*l == f.lhs() && *r == f.rhs()) ? f : rebuild(f, *l, *r));
  });
}

/// A formula provably equivalent to A^n(p), normalized after every step.
inline Formula iterate_reduced(Formula a, std::uint64_t n, std::uint64_t max_dag_size = kUnlimited) {
  const Formula base = normalize(a);
  Formula acc = p();
  for (std::uint64_t i = 0; i < n; ++i) {
    acc = normalize(substitute_p(base, acc));
    if (max_dag_size != kUnlimited && dag_size(acc) > max_dag_size)
      throw ResourceLimit("iterate_reduced: DAG size ceiling " + std::to_string(max_dag_size) +
                          " exceeded at step " + std::to_string(i + 1));
  }
  return acc;
}

/// Variable indices occurring in the formulas, ascending.
inline std::set<std::uint32_t> variables(const std::vector<Formula>& formulas) {
  std::set<std::uint32_t> vars;
  std::unordered_map<std::uint32_t, bool> memo;
  for (Formula f : formulas) {
    fold<bool>(
        f,
        [&](Formula g, const bool*, const bool*) {
          if (g.is_var()) vars.insert(g.var_index());
          return true;
        },
        memo);
  }
  return vars;
}

inline std::set<std::uint32_t> variables(Formula f) { return variables(std::vector<Formula>{f}); }

/// Least positive index not occurring in any of the formulas. Index 0 (p)
/// is never returned.
inline std::uint32_t fresh_var(const std::vector<Formula>& formulas) {
  const auto used = variables(formulas);
  std::uint32_t v = 1;
  while (used.count(v)) ++v;
  return v;
}

enum class Polarity { Positive, Negative, Both, Absent };

inline std::string to_string(Polarity pol) {
  switch (pol) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Both: return "both";
    case Polarity::Absent: return "absent";
  }
  return "?";
}

/// Occurrence polarity of variable `v`; implication flips its antecedent.
inline Polarity polarity(Formula a, std::uint32_t v) {
  struct Occ {
    bool pos = false;
    bool neg = false;
  };
  const Occ occ = fold<Occ>(a, [v](Formula f, const Occ* l, const Occ* r) -> Occ {
    if (!l) return {f.is_var() && f.var_index() == v, false};
    if (f.is(Kind::Imp)) return {r->pos || l->neg, r->neg || l->pos};
    return {l->pos || r->pos, l->neg || r->neg};
  });
  if (occ.pos && occ.neg) return Polarity::Both;
  if (occ.pos) return Polarity::Positive;
  if (occ.neg) return Polarity::Negative;
  return Polarity::Absent;
}

}  // namespace ruit
