#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "classical.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "sequent.hpp"
#include "verdict.hpp"

namespace ruit {

// Contraction-free sequent calculus for IPC (Dyckhoff's G4ip) with the
// left-implication rule split by the shape of the antecedent. Contexts are
// sets: canonical, sorted by node id, duplicate-free.

enum class Rule : std::uint8_t {
  Axiom,        // goal occurs in the context
  BotLeft,      // F in the context
  TopRight,     // goal is T
  TopLeft,      // drop T from the context
  ImpRight,
  AndRight,
  AndLeft,
  OrRight1,
  OrRight2,
  OrLeft,
  ImpLeftAtom,  // A, A -> B  ~>  A, B   (A an atom, or any formula present)
  ImpLeftTop,   // T -> B  ~>  B
  ImpLeftBot,   // F -> B  ~>  (dropped)
  ImpLeftAnd,   // (C & D) -> B  ~>  C -> (D -> B)
  ImpLeftOr,    // (C | D) -> B  ~>  C -> B, D -> B
  ImpLeftImp,   // (C -> D) -> B  ~>  [D -> B |- C -> D] and [B |- goal]
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "Axiom";
    case Rule::BotLeft: return "BotLeft";
    case Rule::TopRight: return "TopRight";
    case Rule::TopLeft: return "TopLeft";
    case Rule::ImpRight: return "ImpRight";
    case Rule::AndRight: return "AndRight";
    case Rule::AndLeft: return "AndLeft";
    case Rule::OrRight1: return "OrRight1";
    case Rule::OrRight2: return "OrRight2";
    case Rule::OrLeft: return "OrLeft";
    case Rule::ImpLeftAtom: return "ImpLeftAtom";
    case Rule::ImpLeftTop: return "ImpLeftTop";
    case Rule::ImpLeftBot: return "ImpLeftBot";
    case Rule::ImpLeftAnd: return "ImpLeftAnd";
    case Rule::ImpLeftOr: return "ImpLeftOr";
    case Rule::ImpLeftImp: return "ImpLeftImp";
  }
  return "?";
}

struct DerivationNode {
  Rule rule;
  Sequent conclusion;  // canonical context
  Formula principal;   // the formula the rule decomposes (the goal for right rules)
  std::vector<std::shared_ptr<const DerivationNode>> premises;
};

/// Shared proof DAG; identical subsequents reuse one subtree.
using Derivation = std::shared_ptr<const DerivationNode>;

struct ProverOptions {
  std::uint64_t node_budget = 20'000'000;
  bool record_derivations = true;
  /// Refute sequents that fail classically before trying non-invertible
  /// rules. Sound because IPC is contained in CPC; turned off when the
  /// prover is cross-validated against the classical oracle.
  bool classical_filter = true;
  std::size_t classical_var_cap = 12;
};

struct ProofResult {
  bool provable = false;
  Derivation derivation;  // null when unprovable or not recorded
};

namespace detail {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

inline std::vector<Formula> without(const std::vector<Formula>& ctx, Formula f) {
  std::vector<Formula> out;
  out.reserve(ctx.size());
  for (Formula g : ctx)
    if (g != f) out.push_back(g);
  return out;
}

inline std::vector<Formula> with(std::vector<Formula> ctx, std::initializer_list<Formula> add) {
  for (Formula f : add) {
    auto it = std::lower_bound(ctx.begin(), ctx.end(), f);
    if (it == ctx.end() || *it != f) ctx.insert(it, f);
  }
  return ctx;
}

inline bool contains(const std::vector<Formula>& ctx, Formula f) {
  return std::binary_search(ctx.begin(), ctx.end(), f);
}

}  // namespace detail

/// Decision procedure with a verdict cache shared across calls on the same
/// object. Not thread-safe; use one instance per thread.
class Prover {
public:
  explicit Prover(ProverOptions options = {}) : options_(options) {}

  ProofResult prove(const Sequent& s) {
    std::vector<Formula> ctx = canonical_context(s.context);
    spent_ = 0;
    const Entry e = search(ctx, s.goal);
    return {e.provable, e.derivation};
  }

  bool provable(const Sequent& s) { return prove(s).provable; }

  /// G |- (a -> b) & (b -> a)
  bool equiv(const std::vector<Formula>& context, Formula a, Formula b) {
    if (a == b) return true;
    return provable({context, iff(a, b)});
  }

  std::uint64_t nodes_spent() const { return spent_; }
  std::size_t cache_size() const { return memo_.size(); }
  void clear_cache() { memo_.clear(); }
  const ProverOptions& options() const { return options_; }

private:
  struct Entry {
    bool provable = false;
    Derivation derivation;
  };

  Entry finish(const std::vector<std::uint32_t>& key, Entry e) {
    memo_.emplace(key, e);
    return e;
  }

  Entry proved(Rule rule, const std::vector<Formula>& ctx, Formula goal, Formula principal,
               std::vector<Derivation> premises) const {
    Entry e{true, nullptr};
    if (options_.record_derivations) {
      auto node = std::make_shared<DerivationNode>();
      node->rule = rule;
      node->conclusion = Sequent{ctx, goal};
      node->principal = principal;
      node->premises = std::move(premises);
      e.derivation = std::move(node);
    }
    return e;
  }

  Entry search(const std::vector<Formula>& ctx, Formula goal) {
    std::vector<std::uint32_t> key;
    key.reserve(ctx.size() + 1);
    for (Formula f : ctx) key.push_back(f.id());
    key.push_back(goal.id());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++spent_ > options_.node_budget)
      throw ResourceLimit("prover: node budget " + std::to_string(options_.node_budget) + " exhausted");

    using detail::contains;
    using detail::with;
    using detail::without;

    if (contains(ctx, goal)) return finish(key, proved(Rule::Axiom, ctx, goal, goal, {}));
    if (contains(ctx, bot())) return finish(key, proved(Rule::BotLeft, ctx, goal, bot(), {}));
    if (goal == top()) return finish(key, proved(Rule::TopRight, ctx, goal, goal, {}));

    if (goal.is(Kind::Imp)) {
      Entry sub = search(with(ctx, {goal.lhs()}), goal.rhs());
      if (!sub.provable) return finish(key, {});
      return finish(key, proved(Rule::ImpRight, ctx, goal, goal, {sub.derivation}));
    }

    // Invertible left rules, first applicable formula in context order.
    for (Formula f : ctx) {
      std::optional<Rule> rule;
      std::vector<std::vector<Formula>> premises;
      switch (f.kind()) {
        case Kind::Top:
          rule = Rule::TopLeft;
          premises.push_back(without(ctx, f));
          break;
        case Kind::And:
          rule = Rule::AndLeft;
          premises.push_back(with(without(ctx, f), {f.lhs(), f.rhs()}));
          break;
        case Kind::Or:
          rule = Rule::OrLeft;
          premises.push_back(with(without(ctx, f), {f.lhs()}));
          premises.push_back(with(without(ctx, f), {f.rhs()}));
          break;
        case Kind::Imp: {
          const Formula a = f.lhs(), b = f.rhs();
          if (a == top()) {
            rule = Rule::ImpLeftTop;
            premises.push_back(with(without(ctx, f), {b}));
          } else if (a == bot()) {
            rule = Rule::ImpLeftBot;
            premises.push_back(without(ctx, f));
          } else if (contains(ctx, a)) {
            rule = Rule::ImpLeftAtom;
            premises.push_back(with(without(ctx, f), {b}));
          } else if (a.is(Kind::And)) {
            rule = Rule::ImpLeftAnd;
            premises.push_back(with(without(ctx, f), {imp(a.lhs(), imp(a.rhs(), b))}));
          } else if (a.is(Kind::Or)) {
            rule = Rule::ImpLeftOr;
            premises.push_back(with(without(ctx, f), {imp(a.lhs(), b), imp(a.rhs(), b)}));
          }
          break;
        }
        default:
          break;
      }
      if (!rule) continue;
      std::vector<Derivation> subs;
      for (const auto& premise : premises) {
        Entry sub = search(premise, goal);
        if (!sub.provable) return finish(key, {});
        subs.push_back(sub.derivation);
      }
      return finish(key, proved(*rule, ctx, goal, f, std::move(subs)));
    }

    if (goal.is(Kind::And)) {
      Entry left = search(ctx, goal.lhs());
      if (!left.provable) return finish(key, {});
      Entry right = search(ctx, goal.rhs());
      if (!right.provable) return finish(key, {});
      return finish(key, proved(Rule::AndRight, ctx, goal, goal, {left.derivation, right.derivation}));
    }

    // Only non-invertible rules remain.
    if (options_.classical_filter && !classically_possible(ctx, goal)) return finish(key, {});

    if (goal.is(Kind::Or)) {
      if (Entry sub = search(ctx, goal.lhs()); sub.provable)
        return finish(key, proved(Rule::OrRight1, ctx, goal, goal, {sub.derivation}));
      if (Entry sub = search(ctx, goal.rhs()); sub.provable)
        return finish(key, proved(Rule::OrRight2, ctx, goal, goal, {sub.derivation}));
    }
    for (Formula f : ctx) {
      if (!f.is(Kind::Imp) || !f.lhs().is(Kind::Imp)) continue;
      const Formula d = f.lhs().rhs(), b = f.rhs();
      const auto rest = without(ctx, f);
      Entry first = search(with(rest, {imp(d, b)}), f.lhs());
      if (!first.provable) continue;
      Entry second = search(with(rest, {b}), goal);
      if (!second.provable) continue;
      return finish(key, proved(Rule::ImpLeftImp, ctx, goal, f, {first.derivation, second.derivation}));
    }
    return finish(key, {});
  }

  /// True when the classical check cannot rule the sequent out (including
  /// when there are too many variables to check).
  bool classically_possible(const std::vector<Formula>& ctx, Formula goal) const {
    try {
      return classically_entails(ctx, goal, options_.classical_var_cap);
    } catch (const ResourceLimit&) {
      return true;
    }
  }

  ProverOptions options_;
  std::unordered_map<std::vector<std::uint32_t>, Entry, detail::KeyHash> memo_;
  std::uint64_t spent_ = 0;
};

inline ProofResult prove(const Sequent& s, ProverOptions options = {}) { return Prover(options).prove(s); }

inline bool equiv(const std::vector<Formula>& context, Formula a, Formula b, ProverOptions options = {}) {
  options.record_derivations = false;
  return Prover(options).equiv(context, a, b);
}

// ---------------------------------------------------------------------------
// Certificate replay. Deliberately independent of the search code: each rule
// is re-stated here from its definition.

namespace detail {

inline bool same_set(std::vector<Formula> a, const std::vector<Formula>& canonical) {
  return canonical_context(std::move(a)) == canonical;
}

inline std::optional<std::vector<Sequent>> expected_premises(const DerivationNode& n, std::string& why) {
  const auto& ctx = n.conclusion.context;
  const Formula goal = n.conclusion.goal;
  const Formula pr = n.principal;
  auto in_ctx = [&](Formula f) { return std::find(ctx.begin(), ctx.end(), f) != ctx.end(); };
  auto replace = [&](std::initializer_list<Formula> add) {
    std::vector<Formula> out;
    for (Formula f : ctx)
      if (f != pr) out.push_back(f);
    out.insert(out.end(), add.begin(), add.end());
    return canonical_context(std::move(out));
  };
  auto fail = [&](std::string msg) -> std::optional<std::vector<Sequent>> {
    why = std::move(msg);
    return std::nullopt;
  };
  const bool left_rule = n.rule == Rule::TopLeft || n.rule == Rule::AndLeft || n.rule == Rule::OrLeft ||
                         n.rule >= Rule::ImpLeftAtom;
  if (left_rule && !in_ctx(pr)) return fail("principal formula not in context");
  switch (n.rule) {
    case Rule::Axiom:
      if (!in_ctx(goal)) return fail("axiom: goal not in context");
      return std::vector<Sequent>{};
    case Rule::BotLeft:
      if (!in_ctx(bot())) return fail("F not in context");
      return std::vector<Sequent>{};
    case Rule::TopRight:
      if (goal != top()) return fail("goal is not T");
      return std::vector<Sequent>{};
    case Rule::TopLeft:
      if (pr != top()) return fail("principal is not T");
      return std::vector<Sequent>{{replace({}), goal}};
    case Rule::ImpRight:
      if (!goal.is(Kind::Imp)) return fail("goal is not an implication");
      return std::vector<Sequent>{{canonical_context([&] {
                                     auto c = ctx;
                                     c.push_back(goal.lhs());
                                     return c;
                                   }()),
                                   goal.rhs()}};
    case Rule::AndRight:
      if (!goal.is(Kind::And)) return fail("goal is not a conjunction");
      return std::vector<Sequent>{{ctx, goal.lhs()}, {ctx, goal.rhs()}};
    case Rule::AndLeft:
      if (!pr.is(Kind::And)) return fail("principal is not a conjunction");
      return std::vector<Sequent>{{replace({pr.lhs(), pr.rhs()}), goal}};
    case Rule::OrRight1:
    case Rule::OrRight2:
      if (!goal.is(Kind::Or)) return fail("goal is not a disjunction");
      return std::vector<Sequent>{{ctx, n.rule == Rule::OrRight1 ? goal.lhs() : goal.rhs()}};
    case Rule::OrLeft:
      if (!pr.is(Kind::Or)) return fail("principal is not a disjunction");
      return std::vector<Sequent>{{replace({pr.lhs()}), goal}, {replace({pr.rhs()}), goal}};
    default:
      break;
  }
  if (!pr.is(Kind::Imp)) return fail("principal is not an implication");
  const Formula a = pr.lhs(), b = pr.rhs();
  switch (n.rule) {
    case Rule::ImpLeftAtom:
      if (!in_ctx(a)) return fail("antecedent not in context");
      return std::vector<Sequent>{{replace({b}), goal}};
    case Rule::ImpLeftTop:
      if (a != top()) return fail("antecedent is not T");
      return std::vector<Sequent>{{replace({b}), goal}};
    case Rule::ImpLeftBot:
      if (a != bot()) return fail("antecedent is not F");
      return std::vector<Sequent>{{replace({}), goal}};
    case Rule::ImpLeftAnd:
      if (!a.is(Kind::And)) return fail("antecedent is not a conjunction");
      return std::vector<Sequent>{{replace({imp(a.lhs(), imp(a.rhs(), b))}), goal}};
    case Rule::ImpLeftOr:
      if (!a.is(Kind::Or)) return fail("antecedent is not a disjunction");
      return std::vector<Sequent>{{replace({imp(a.lhs(), b), imp(a.rhs(), b)}), goal}};
    case Rule::ImpLeftImp:
      if (!a.is(Kind::Imp)) return fail("antecedent is not an implication");
      return std::vector<Sequent>{{replace({imp(a.rhs(), b)}), a}, {replace({b}), goal}};
    default:
      return fail("unknown rule");
  }
}

}  // namespace detail

/// Valid iff `d` is a locally correct derivation of `s` (context read as a set).
inline Verdict check_derivation(const Derivation& d, const Sequent& s) {
  if (!d) return Verdict::invalid("empty derivation");
  if (!(d->conclusion.goal == s.goal && detail::same_set(s.context, canonical_context(d->conclusion.context))))
    return Verdict::invalid("root conclusion does not match the sequent");
  std::unordered_map<const DerivationNode*, bool> checked;
  std::vector<std::pair<const DerivationNode*, std::vector<std::size_t>>> stack{{d.get(), {}}};
  while (!stack.empty()) {
    auto [node, path] = std::move(stack.back());
    stack.pop_back();
    if (!checked.emplace(node, true).second) continue;
    if (node->conclusion.context != canonical_context(node->conclusion.context))
      return Verdict::invalid("context not canonical", path);
    std::string why;
    auto expected = detail::expected_premises(*node, why);
    if (!expected) return Verdict::invalid(std::string(rule_name(node->rule)) + ": " + why, path);
    if (expected->size() != node->premises.size())
      return Verdict::invalid(std::string(rule_name(node->rule)) + ": wrong number of premises", path);
    for (std::size_t i = 0; i < expected->size(); ++i) {
      const auto& premise = node->premises[i];
      auto child_path = path;
      child_path.push_back(i);
      if (!premise) return Verdict::invalid("missing premise", child_path);
      if (!(premise->conclusion == (*expected)[i]))
        return Verdict::invalid(std::string(rule_name(node->rule)) + ": premise " + std::to_string(i) +
                                    " does not match",
                                child_path);
      stack.emplace_back(premise.get(), std::move(child_path));
    }
  }
  return Verdict::ok();
}

/// Indented rule-per-line rendering; shared subtrees are printed in full.
inline std::string serialize(const Derivation& d) {
  std::string out;
  auto emit = [&](auto&& self, const DerivationNode& n, std::size_t indent) -> void {
    out.append(indent * 2, ' ');
    out += rule_name(n.rule);
    out += ": ";
    out += print(n.conclusion);
    out += '\n';
    for (const auto& premise : n.premises) self(self, *premise, indent + 1);
  };
  if (d) emit(emit, *d, 0);
  return out;
}

/// Number of distinct nodes in the derivation DAG.
inline std::size_t derivation_size(const Derivation& d) {
  std::unordered_map<const DerivationNode*, bool> seen;
  std::vector<const DerivationNode*> stack{d.get()};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    if (!n || !seen.emplace(n, true).second) continue;
    for (const auto& p : n->premises) stack.push_back(p.get());
  }
  return seen.size();
}

// ---------------------------------------------------------------------------
// Termination measure: Dyckhoff's weight, compared in the multiset ordering.

inline std::uint64_t weight(Formula f) {
  return fold<std::uint64_t>(f, [](Formula g, const std::uint64_t* l, const std::uint64_t* r) -> std::uint64_t {
    if (!l) return 1;
    const std::uint64_t extra = g.is(Kind::And) ? 2 : 1;
    const std::uint64_t sum = *l + *r + extra;
    return sum < *l ? ~std::uint64_t{0} : sum;
  });
}

/// Dershowitz-Manna: the weight multiset of `to` is strictly below that of `from`.
inline bool weight_decreases(const Sequent& from, const Sequent& to) {
  auto weights = [](const Sequent& s) {
    std::vector<std::uint64_t> w;
    for (Formula f : canonical_context(s.context)) w.push_back(weight(f));
    w.push_back(weight(s.goal));
    std::sort(w.begin(), w.end());
    return w;
  };
  auto m = weights(from), n = weights(to);
  if (m == n) return false;
  // Cancel common elements.
  std::vector<std::uint64_t> only_m, only_n;
  std::set_difference(m.begin(), m.end(), n.begin(), n.end(), std::back_inserter(only_m));
  std::set_difference(n.begin(), n.end(), m.begin(), m.end(), std::back_inserter(only_n));
  if (only_n.empty()) return true;
  if (only_m.empty()) return false;
  return only_m.back() > only_n.back();
}

}  // namespace ruit
