#pragma once

#include <array>
#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "sequent.hpp"
#include "substitution.hpp"
#include "text.hpp"
#include "verdict.hpp"

namespace ruit {

// Proof terms for the turnstile Hilbert system: premises, the axiom schemata
// K, S, C1-C3 (conjunction), A1-A3 (disjunction), TT, FF, and modus ponens.
// Premises refer to context positions. MP nodes carry the formula they prove,
// so replay never has to guess it.

enum class HilbertRule : std::uint8_t { Premise, K, S, MP, C1, C2, C3, A1, A2, A3, TT, FF };

struct HilbertNode;
using HilbertProof = std::shared_ptr<const HilbertNode>;

struct HilbertNode {
  HilbertRule rule = HilbertRule::TT;
  std::size_t premise = 0;         // Premise
  std::array<Formula, 3> args{};   // schema parameters
  Formula proves;                  // MP annotation
  HilbertProof major, minor;       // MP: major proves minor -> proves
};

namespace hil {

inline HilbertProof node(HilbertRule rule, std::array<Formula, 3> args = {}) {
  auto n = std::make_shared<HilbertNode>();
  n->rule = rule;
  n->args = args;
  return n;
}

inline HilbertProof premise(std::size_t index) {
  auto n = std::make_shared<HilbertNode>();
  n->rule = HilbertRule::Premise;
  n->premise = index;
  return n;
}

inline HilbertProof ax_k(Formula a, Formula b) { return node(HilbertRule::K, {a, b}); }
inline HilbertProof ax_s(Formula a, Formula b, Formula c) { return node(HilbertRule::S, {a, b, c}); }
inline HilbertProof ax_c1(Formula a, Formula b) { return node(HilbertRule::C1, {a, b}); }
inline HilbertProof ax_c2(Formula a, Formula b) { return node(HilbertRule::C2, {a, b}); }
inline HilbertProof ax_c3(Formula a, Formula b) { return node(HilbertRule::C3, {a, b}); }
inline HilbertProof ax_a1(Formula a, Formula b) { return node(HilbertRule::A1, {a, b}); }
inline HilbertProof ax_a2(Formula a, Formula b) { return node(HilbertRule::A2, {a, b}); }
inline HilbertProof ax_a3(Formula a, Formula b, Formula c) { return node(HilbertRule::A3, {a, b, c}); }
inline HilbertProof ax_tt() { return node(HilbertRule::TT); }
inline HilbertProof ax_ff(Formula a) { return node(HilbertRule::FF, {a}); }

inline HilbertProof mp(HilbertProof major, HilbertProof minor, Formula proves) {
  auto n = std::make_shared<HilbertNode>();
  n->rule = HilbertRule::MP;
  n->major = std::move(major);
  n->minor = std::move(minor);
  n->proves = proves;
  return n;
}

/// The formula an axiom instance asserts.
inline Formula axiom_formula(const HilbertNode& n) {
  const auto [a, b, c] = n.args;
  switch (n.rule) {
    case HilbertRule::K: return imp(a, imp(b, a));
    case HilbertRule::S: return imp(imp(a, imp(b, c)), imp(imp(a, b), imp(a, c)));
    case HilbertRule::C1: return imp(a, imp(b, conj(a, b)));
    case HilbertRule::C2: return imp(conj(a, b), a);
    case HilbertRule::C3: return imp(conj(a, b), b);
    case HilbertRule::A1: return imp(a, disj(a, b));
    case HilbertRule::A2: return imp(b, disj(a, b));
    case HilbertRule::A3: return imp(imp(a, c), imp(imp(b, c), imp(disj(a, b), c)));
    case HilbertRule::TT: return top();
    case HilbertRule::FF: return imp(bot(), a);
    default: throw std::logic_error("axiom_formula: not an axiom");
  }
}

inline const char* rule_name(HilbertRule r) {
  switch (r) {
    case HilbertRule::Premise: return "premise";
    case HilbertRule::K: return "K";
    case HilbertRule::S: return "S";
    case HilbertRule::MP: return "MP";
    case HilbertRule::C1: return "C1";
    case HilbertRule::C2: return "C2";
    case HilbertRule::C3: return "C3";
    case HilbertRule::A1: return "A1";
    case HilbertRule::A2: return "A2";
    case HilbertRule::A3: return "A3";
    case HilbertRule::TT: return "TT";
    case HilbertRule::FF: return "FF";
  }
  return "?";
}

inline std::size_t arity(HilbertRule r) {
  switch (r) {
    case HilbertRule::S:
    case HilbertRule::A3: return 3;
    case HilbertRule::TT:
    case HilbertRule::Premise:
    case HilbertRule::MP: return 0;
    case HilbertRule::FF: return 1;
    default: return 2;
  }
}

}  // namespace hil

namespace detail {

/// Replays a proof against a context, memoizing shared nodes.
class HilbertReplay {
public:
  explicit HilbertReplay(const std::vector<Formula>& context) : context_(context) {}

  /// The formula proved by `pf`, or nullopt with `failure` filled in.
  std::optional<Formula> conclusion(const HilbertProof& pf, std::vector<std::size_t> path = {}) {
    if (!pf) {
      failure_ = Verdict::invalid("missing subproof", path);
      return std::nullopt;
    }
    if (auto it = memo_.find(pf.get()); it != memo_.end()) return it->second;
    std::optional<Formula> result;
    switch (pf->rule) {
      case HilbertRule::Premise:
        if (pf->premise >= context_.size()) {
          failure_ = Verdict::invalid("premise index " + std::to_string(pf->premise) + " out of range", path);
          return std::nullopt;
        }
        result = context_[pf->premise];
        break;
      case HilbertRule::MP: {
        auto major_path = path, minor_path = path;
        major_path.push_back(0);
        minor_path.push_back(1);
        auto major = conclusion(pf->major, major_path);
        if (!major) return std::nullopt;
        auto minor = conclusion(pf->minor, minor_path);
        if (!minor) return std::nullopt;
        if (*major != imp(*minor, pf->proves)) {
          failure_ = Verdict::invalid("modus ponens: major premise is not " + print(imp(*minor, pf->proves)), path);
          return std::nullopt;
        }
        result = pf->proves;
        break;
      }
      default:
        result = hil::axiom_formula(*pf);
        break;
    }
    memo_.emplace(pf.get(), *result);
    return result;
  }

  const Verdict& failure() const { return failure_; }

private:
  const std::vector<Formula>& context_;
  std::unordered_map<const HilbertNode*, Formula> memo_;
  Verdict failure_;
};

}  // namespace detail

/// The formula `pf` proves from `context`, or nullopt when it does not replay.
inline std::optional<Formula> conclusion(const HilbertProof& pf, const std::vector<Formula>& context) {
  return detail::HilbertReplay(context).conclusion(pf);
}

inline Verdict check_proof(const HilbertProof& pf, const Sequent& s) {
  detail::HilbertReplay replay(s.context);
  auto proved = replay.conclusion(pf);
  if (!proved) return replay.failure();
  if (*proved != s.goal) return Verdict::invalid("proves " + print(*proved) + ", not " + print(s.goal));
  return Verdict::ok();
}

inline std::size_t proof_size(const HilbertProof& pf) {
  std::unordered_map<const HilbertNode*, bool> seen;
  std::vector<const HilbertNode*> stack{pf.get()};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    if (!n || !seen.emplace(n, true).second) continue;
    stack.push_back(n->major.get());
    stack.push_back(n->minor.get());
  }
  return seen.size();
}

// ---------------------------------------------------------------------------
// Derived combinators (context-free unless stated).

namespace hil {

/// |- a -> a, by S K K.
inline HilbertProof identity(Formula a) {
  const Formula aa = imp(a, a);
  return mp(mp(ax_s(a, aa, a), ax_k(a, aa), imp(imp(a, aa), aa)), ax_k(a, a), aa);
}

inline HilbertProof and_intro(HilbertProof pa, Formula a, HilbertProof pb, Formula b) {
  return mp(mp(ax_c1(a, b), std::move(pa), imp(b, conj(a, b))), std::move(pb), conj(a, b));
}

/// From a proof of a & b.
inline HilbertProof and_left(HilbertProof pab, Formula a, Formula b) { return mp(ax_c2(a, b), std::move(pab), a); }
inline HilbertProof and_right(HilbertProof pab, Formula a, Formula b) { return mp(ax_c3(a, b), std::move(pab), b); }

}  // namespace hil

// ---------------------------------------------------------------------------
// Metatheorems as proof transformers.

namespace detail {

inline HilbertProof shift_premises(const HilbertProof& pf, std::unordered_map<const HilbertNode*, HilbertProof>& memo) {
  if (auto it = memo.find(pf.get()); it != memo.end()) return it->second;
  HilbertProof out;
  if (pf->rule == HilbertRule::Premise) {
    out = hil::premise(pf->premise - 1);
  } else if (pf->rule == HilbertRule::MP) {
    out = hil::mp(shift_premises(pf->major, memo), shift_premises(pf->minor, memo), pf->proves);
  } else {
    out = pf;
  }
  memo.emplace(pf.get(), out);
  return out;
}

inline bool uses_premise0(const HilbertProof& pf, std::unordered_map<const HilbertNode*, bool>& memo) {
  if (auto it = memo.find(pf.get()); it != memo.end()) return it->second;
  bool uses = false;
  if (pf->rule == HilbertRule::Premise) uses = pf->premise == 0;
  else if (pf->rule == HilbertRule::MP) uses = uses_premise0(pf->major, memo) || uses_premise0(pf->minor, memo);
  memo.emplace(pf.get(), uses);
  return uses;
}

}  // namespace detail

/// Deduction theorem by bracket abstraction: a proof of `a :: g |- b`
/// becomes a proof of `g |- a -> b`.
inline HilbertProof deduction(const HilbertProof& pf, const Sequent& s) {
  if (s.context.empty()) throw InvalidInput("deduction: context must be non-empty");
  if (auto v = check_proof(pf, s); !v)
    throw InvalidInput("deduction: input proof does not check: " + v.reason + " at " + path_string(v.path));
  const Formula a = s.context.front();
  detail::HilbertReplay replay(s.context);
  std::unordered_map<const HilbertNode*, bool> uses;
  std::unordered_map<const HilbertNode*, HilbertProof> shifted;
  std::unordered_map<const HilbertNode*, HilbertProof> lifted;

  // Returns a proof of `a -> X` from the tail context, X the node's conclusion.
  auto lift = [&](auto&& self, const HilbertProof& n) -> HilbertProof {
    if (auto it = lifted.find(n.get()); it != lifted.end()) return it->second;
    const Formula x = *replay.conclusion(n);
    HilbertProof out;
    if (!detail::uses_premise0(n, uses)) {
      out = hil::mp(hil::ax_k(x, a), detail::shift_premises(n, shifted), imp(a, x));
    } else if (n->rule == HilbertRule::Premise) {
      out = hil::identity(a);
    } else {
      // n = MP(major : y -> x, minor : y)
      const Formula y = *replay.conclusion(n->minor);
      HilbertProof major = self(self, n->major);
      HilbertProof minor = self(self, n->minor);
      out = hil::mp(hil::mp(hil::ax_s(a, y, x), major, imp(imp(a, y), imp(a, x))), minor, imp(a, x));
    }
    lifted.emplace(n.get(), out);
    return out;
  };
  return lift(lift, pf);
}

/// Re-indexes premises of a proof over `from` so it proves the same formula
/// over `to`. Every formula of `from` must occur in `to`.
inline HilbertProof weaken(const HilbertProof& pf, const std::vector<Formula>& from, const std::vector<Formula>& to) {
  std::vector<std::size_t> where(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    if (it == to.end()) throw InvalidInput("weaken: " + print(from[i]) + " missing from the target context");
    where[i] = static_cast<std::size_t>(it - to.begin());
  }
  std::unordered_map<const HilbertNode*, HilbertProof> memo;
  auto go = [&](auto&& self, const HilbertProof& n) -> HilbertProof {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    HilbertProof out;
    if (n->rule == HilbertRule::Premise) {
      if (n->premise >= from.size()) throw InvalidInput("weaken: premise index out of range");
      out = hil::premise(where[n->premise]);
    } else if (n->rule == HilbertRule::MP) {
      out = hil::mp(self(self, n->major), self(self, n->minor), n->proves);
    } else {
      out = n;
    }
    memo.emplace(n.get(), out);
    return out;
  };
  return go(go, pf);
}

/// Congruence of substitution: from `g |- (b -> c) & (c -> b)` build
/// `g |- (a{b}/n -> a{c}/n) & (a{c}/n -> a{b}/n)`, by recursion on `a`.
inline HilbertProof subst_equiv(Formula a, std::uint32_t n, const HilbertProof& pf, const std::vector<Formula>& g) {
  auto proved = conclusion(pf, g);
  if (!proved || !proved->is(Kind::And) || !proved->lhs().is(Kind::Imp) || !proved->rhs().is(Kind::Imp) ||
      proved->lhs().lhs() != proved->rhs().rhs() || proved->lhs().rhs() != proved->rhs().lhs())
    throw InvalidInput("subst_equiv: input is not a valid proof of an equivalence");
  const Formula b = proved->lhs().lhs(), c = proved->lhs().rhs();

  struct Eq {
    Formula lhs, rhs;     // lhs <-> rhs
    HilbertProof proof;   // over g
  };
  auto forward = [&](const Eq& e) { return hil::and_left(e.proof, imp(e.lhs, e.rhs), imp(e.rhs, e.lhs)); };
  auto backward = [&](const Eq& e) { return hil::and_right(e.proof, imp(e.lhs, e.rhs), imp(e.rhs, e.lhs)); };
  auto both = [&](Formula x, Formula y, HilbertProof xy, HilbertProof yx) {
    return Eq{x, y, hil::and_intro(std::move(xy), imp(x, y), std::move(yx), imp(y, x))};
  };
  auto extend = [&](std::initializer_list<Formula> front) {
    std::vector<Formula> h(front);
    h.insert(h.end(), g.begin(), g.end());
    return h;
  };

  // Each *_dir builds g |- x -> y for x = l1 op r1, y = l2 op r2 from
  // one-directional child implications over g.
  auto conj_dir = [&](Formula x, Formula y, HilbertProof l12, HilbertProof r12) {
    const auto h = extend({x});
    const Formula l1 = x.lhs(), r1 = x.rhs(), l2 = y.lhs(), r2 = y.rhs();
    HilbertProof l = hil::mp(weaken(l12, g, h), hil::and_left(hil::premise(0), l1, r1), l2);
    HilbertProof r = hil::mp(weaken(r12, g, h), hil::and_right(hil::premise(0), l1, r1), r2);
    return deduction(hil::and_intro(l, l2, r, r2), Sequent{h, y});
  };
  auto disj_dir = [&](Formula x, Formula y, HilbertProof l12, HilbertProof r12) {
    const Formula l1 = x.lhs(), r1 = x.rhs(), l2 = y.lhs(), r2 = y.rhs();
    const auto hl = extend({l1});
    HilbertProof left = deduction(
        hil::mp(hil::ax_a1(l2, r2), hil::mp(weaken(l12, g, hl), hil::premise(0), l2), y), Sequent{hl, y});
    const auto hr = extend({r1});
    HilbertProof right = deduction(
        hil::mp(hil::ax_a2(l2, r2), hil::mp(weaken(r12, g, hr), hil::premise(0), r2), y), Sequent{hr, y});
    return hil::mp(hil::mp(hil::ax_a3(l1, r1, y), left, imp(imp(r1, y), imp(x, y))), right, imp(x, y));
  };
  // (l1 -> r1) -> (l2 -> r2) needs l2 -> l1 and r1 -> r2.
  auto imp_dir = [&](Formula x, Formula y, HilbertProof l21, HilbertProof r12) {
    const Formula l1 = x.lhs(), r1 = x.rhs(), l2 = y.lhs(), r2 = y.rhs();
    const auto h = extend({l2, x});
    HilbertProof got_l1 = hil::mp(weaken(l21, g, h), hil::premise(0), l1);
    HilbertProof got_r1 = hil::mp(hil::premise(1), got_l1, r1);
    HilbertProof got_r2 = hil::mp(weaken(r12, g, h), got_r1, r2);
    HilbertProof inner = deduction(got_r2, Sequent{h, r2});
    return deduction(inner, Sequent{extend({x}), y});
  };

  std::unordered_map<std::uint32_t, Eq> memo;
  auto go = [&](auto&& self, Formula f) -> Eq {
    if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
    Eq out;
    if (f.is_var() && f.var_index() == n) {
      out = Eq{b, c, pf};
    } else if (!f.is_binary()) {
      out = both(f, f, hil::identity(f), hil::identity(f));
    } else {
      const Eq l = self(self, f.lhs());
      const Eq r = self(self, f.rhs());
      const Formula x = rebuild(f, l.lhs, r.lhs), y = rebuild(f, l.rhs, r.rhs);
      switch (f.kind()) {
        case Kind::And:
          out = both(x, y, conj_dir(x, y, forward(l), forward(r)), conj_dir(y, x, backward(l), backward(r)));
          break;
        case Kind::Or:
          out = both(x, y, disj_dir(x, y, forward(l), forward(r)), disj_dir(y, x, backward(l), backward(r)));
          break;
        default:
          out = both(x, y, imp_dir(x, y, backward(l), forward(r)), imp_dir(y, x, forward(l), backward(r)));
          break;
      }
    }
    memo.emplace(f.id(), out);
    return out;
  };
  return go(go, a).proof;
}

// ---------------------------------------------------------------------------
// S-expression serialization:
//   (premise 3)  (K "p" "q")  (MP "q" <major> <minor>)  (TT)

inline std::string serialize(const HilbertProof& pf) {
  std::string out;
  auto go = [&](auto&& self, const HilbertNode& n) -> void {
    out += '(';
    out += hil::rule_name(n.rule);
    if (n.rule == HilbertRule::Premise) {
      out += ' ' + std::to_string(n.premise);
    } else if (n.rule == HilbertRule::MP) {
      out += " \"" + print(n.proves) + "\" ";
      self(self, *n.major);
      out += ' ';
      self(self, *n.minor);
    } else {
      for (std::size_t i = 0; i < hil::arity(n.rule); ++i) out += " \"" + print(n.args[i]) + '"';
    }
    out += ')';
  };
  go(go, *pf);
  return out;
}

namespace detail {

[[noreturn]] inline void proof_syntax_error(std::size_t pos, const std::string& expected) {
  throw ParseError(pos, {expected}, "proof syntax error at offset " + std::to_string(pos) + ": expected " + expected);
}

}  // namespace detail

inline HilbertProof parse_proof(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& expected) { detail::proof_syntax_error(pos, expected); };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) fail(std::string(1, c));
    ++pos;
  };
  auto word = [&] {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("rule name");
    return std::string(text.substr(start, pos - start));
  };
  auto quoted = [&] {
    expect('"');
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '"') ++pos;
    if (pos >= text.size()) fail("closing quote");
    std::string_view body = text.substr(start, pos - start);
    ++pos;
    try {
      return parse(body);
    } catch (const ParseError& e) {
      throw ParseError(start + e.offset(), e.expected(), e.what());
    }
  };
  auto go = [&](auto&& self) -> HilbertProof {
    expect('(');
    const std::string name = word();
    HilbertProof out;
    if (name == "premise") {
      const std::string digits = word();
      for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch))) fail("premise index");
      out = hil::premise(std::stoull(digits));
    } else if (name == "MP") {
      const Formula proves = quoted();
      HilbertProof major = self(self);
      HilbertProof minor = self(self);
      out = hil::mp(std::move(major), std::move(minor), proves);
    } else {
      static const std::vector<std::pair<std::string, HilbertRule>> axioms = {
          {"K", HilbertRule::K},   {"S", HilbertRule::S},   {"C1", HilbertRule::C1}, {"C2", HilbertRule::C2},
          {"C3", HilbertRule::C3}, {"A1", HilbertRule::A1}, {"A2", HilbertRule::A2}, {"A3", HilbertRule::A3},
          {"TT", HilbertRule::TT}, {"FF", HilbertRule::FF}};
      auto it = std::find_if(axioms.begin(), axioms.end(), [&](const auto& e) { return e.first == name; });
      if (it == axioms.end()) fail("rule name");
      std::array<Formula, 3> args{};
      for (std::size_t i = 0; i < hil::arity(it->second); ++i) args[i] = quoted();
      out = hil::node(it->second, args);
    }
    expect(')');
    return out;
  };
  HilbertProof pf = go(go);
  skip();
  if (pos != text.size()) fail("end of input");
  return pf;
}

}  // namespace ruit
