#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ruit/ruit.hpp"

#ifndef RUIT_CORPUS_DIR
#define RUIT_CORPUS_DIR "corpus"
#endif

namespace ruit::testing {

/// (q -> p -> r) & ((p -> r) -> p | r)
inline Formula exform1() { return conj(imp(q(), imp(p(), r())), imp(imp(p(), r()), disj(p(), r()))); }

/// psi1 = p, psi2 = ~p, psi(2k+1) = psi(2k-1) | psi(2k), psi(2k+2) = psi(2k+1) -> psi(2k-1).
inline std::vector<Formula> rieger_nishimura(std::size_t count) {
  std::vector<Formula> psi{bot(), p(), neg(p())};
  for (std::size_t k = 3; k <= count; ++k)
    psi.push_back(k % 2 ? disj(psi[k - 2], psi[k - 1]) : imp(psi[k - 1], psi[k - 3]));
  return {psi.begin() + 1, psi.begin() + 1 + static_cast<std::ptrdiff_t>(count)};
}

inline std::vector<Formula> load_corpus(const std::string& name = "ruitenburg.txt") {
  std::ifstream in(std::string(RUIT_CORPUS_DIR) + "/" + name);
  std::vector<Formula> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Formula f = parse(line);
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Explicit trees, no sharing.

struct Tree {
  Kind kind;
  std::uint32_t var = 0;
  std::unique_ptr<Tree> l, r;
};

inline std::unique_ptr<Tree> unfold(Formula f) {
  auto t = std::make_unique<Tree>();
  t->kind = f.kind();
  if (f.is_var()) t->var = f.var_index();
  if (f.is_binary()) {
    t->l = unfold(f.lhs());
    t->r = unfold(f.rhs());
  }
  return t;
}

inline std::uint64_t count_nodes(const Tree& t) {
  return 1 + (t.l ? count_nodes(*t.l) : 0) + (t.r ? count_nodes(*t.r) : 0);
}

/// Direct recursion without memoization.
inline Formula naive_substitute(Formula a, std::uint32_t v, Formula b) {
  if (a.is_var()) return a.var_index() == v ? b : a;
  if (!a.is_binary()) return a;
  return rebuild(a, naive_substitute(a.lhs(), v, b), naive_substitute(a.rhs(), v, b));
}

inline std::size_t occurrences(Formula a, std::uint32_t v) {
  if (a.is_var()) return a.var_index() == v;
  if (!a.is_binary()) return 0;
  return occurrences(a.lhs(), v) + occurrences(a.rhs(), v);
}

/// Tree size of A^n when A has s tree nodes and k >= 2 occurrences of p:
/// T(0) = 1, T(n) = (s - k) + k T(n-1), so T(n) = (s - k)(k^n - 1)/(k - 1) + k^n.
inline BigInt iterate_tree_size_closed_form(Formula a, std::uint64_t n) {
  const BigInt s = count_nodes(*unfold(a));
  const BigInt k = occurrences(a, 0);
  BigInt kn = 1;
  for (std::uint64_t i = 0; i < n; ++i) kn *= k;
  return (s - k) * (kn - 1) / (k - 1) + kn;
}

// ---------------------------------------------------------------------------
// Semantics by clause unfolding.

inline bool naive_kripke(const KripkeModel& m, std::size_t w, Formula a) {
  switch (a.kind()) {
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::Var: return m.holds(w, a.var_index());
    case Kind::And: return naive_kripke(m, w, a.lhs()) && naive_kripke(m, w, a.rhs());
    case Kind::Or: return naive_kripke(m, w, a.lhs()) || naive_kripke(m, w, a.rhs());
    case Kind::Imp:
      for (std::size_t v = 0; v < m.worlds; ++v)
        if (m.leq(w, v) && naive_kripke(m, v, a.lhs()) && !naive_kripke(m, v, a.rhs())) return false;
      return true;
  }
  return false;
}

inline bool naive_boolean(Formula a, const std::map<std::uint32_t, bool>& val) {
  switch (a.kind()) {
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::Var: return val.at(a.var_index());
    case Kind::And: return naive_boolean(a.lhs(), val) && naive_boolean(a.rhs(), val);
    case Kind::Or: return naive_boolean(a.lhs(), val) || naive_boolean(a.rhs(), val);
    case Kind::Imp: return !naive_boolean(a.lhs(), val) || naive_boolean(a.rhs(), val);
  }
  return false;
}

/// Every assignment to the variables of `a`.
inline bool naive_tautology(Formula a) {
  const auto vs = variables(a);
  const std::vector<std::uint32_t> vars(vs.begin(), vs.end());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    std::map<std::uint32_t, bool> val;
    for (std::size_t i = 0; i < vars.size(); ++i) val[vars[i]] = (mask >> i) & 1;
    if (!naive_boolean(a, val)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration.

/// All formulas of depth <= max_depth over the atoms p, q and the binary
/// connectives ->, &, |. Level d holds exactly the formulas of depth <= d.
inline std::vector<Formula> all_formulas(std::uint64_t max_depth, std::vector<Formula> atoms = {p(), q()}) {
  std::vector<Formula> level = atoms;
  for (std::uint64_t d = 2; d <= max_depth; ++d) {
    std::vector<Formula> next = atoms;
    next.reserve(atoms.size() + 3 * level.size() * level.size());
    for (Formula a : level)
      for (Formula b : level) {
        next.push_back(imp(a, b));
        next.push_back(conj(a, b));
        next.push_back(disj(a, b));
      }
    level = std::move(next);
  }
  return level;
}

// ---------------------------------------------------------------------------
// Random valid Hilbert proofs.

struct ProvedSequent {
  HilbertProof proof;
  Sequent sequent;
};

/// Grows a pool of proofs over a fixed context by sound steps only; every
/// pool entry is valid by construction.
class HilbertGenerator {
public:
  explicit HilbertGenerator(std::uint64_t seed) : gen_(seed, {.variables = 3, .max_depth = 3, .leaf_percent = 40}) {}

  ProvedSequent operator()(std::size_t context_size = 2, std::size_t steps = 12) {
    std::vector<Formula> ctx;
    for (std::size_t i = 0; i < context_size; ++i) ctx.push_back(gen_());
    pool_.clear();
    for (std::size_t i = 0; i < ctx.size(); ++i) pool_.push_back({hil::premise(i), ctx[i]});
    for (std::size_t s = 0; s < steps; ++s) step();
    const auto& pick = pool_[pool_.size() - 1 - gen_.below(std::min<std::size_t>(pool_.size(), 4))];
    return {pick.first, Sequent{ctx, pick.second}};
  }

private:
  using Entry = std::pair<HilbertProof, Formula>;

  const Entry& any() { return pool_[gen_.below(pool_.size())]; }

  void step() {
    switch (gen_.below(8)) {
      case 0: {  // K-lift
        const Entry e = any();
        const Formula z = gen_();
        pool_.push_back({hil::mp(hil::ax_k(e.second, z), e.first, imp(z, e.second)), imp(z, e.second)});
        break;
      }
      case 1: {
        const Entry a = any(), b = any();
        pool_.push_back({hil::and_intro(a.first, a.second, b.first, b.second), conj(a.second, b.second)});
        break;
      }
      case 2: {
        const Entry e = any();
        const Formula z = gen_();
        pool_.push_back({hil::mp(hil::ax_a1(e.second, z), e.first, disj(e.second, z)), disj(e.second, z)});
        break;
      }
      case 3: {  // eliminate a conjunction or an implication already in the pool
        for (const Entry& e : pool_) {
          if (e.second.is(Kind::And)) {
            const Formula a = e.second.lhs(), b = e.second.rhs();
            pool_.push_back(gen_.below(2) ? Entry{hil::and_left(e.first, a, b), a} : Entry{hil::and_right(e.first, a, b), b});
            return;
          }
        }
        break;
      }
      case 4: {
        for (const Entry& major : pool_)
          if (major.second.is(Kind::Imp))
            for (const Entry& minor : pool_)
              if (minor.second == major.second.lhs()) {
                const Formula y = major.second.rhs();
                pool_.push_back({hil::mp(major.first, minor.first, y), y});
                return;
              }
        break;
      }
      case 5: {
        const Formula a = gen_();
        pool_.push_back({hil::identity(a), imp(a, a)});
        break;
      }
      case 6: {
        const Formula a = gen_(), b = gen_();
        pool_.push_back({hil::ax_k(a, b), imp(a, imp(b, a))});
        break;
      }
      default: {
        const Formula a = gen_();
        pool_.push_back({hil::ax_ff(a), imp(bot(), a)});
        break;
      }
    }
  }

  FormulaGenerator gen_;
  std::vector<Entry> pool_;
};

/// g |- (b -> b & b) & (b & b -> b), built by hand.
inline HilbertProof idempotence_equiv(Formula b, const std::vector<Formula>& g) {
  std::vector<Formula> h{b};
  h.insert(h.end(), g.begin(), g.end());
  const Formula bb = conj(b, b);
  HilbertProof fwd = deduction(hil::and_intro(hil::premise(0), b, hil::premise(0), b), Sequent{h, bb});
  HilbertProof bwd = hil::ax_c2(b, b);
  return hil::and_intro(fwd, imp(b, bb), bwd, imp(bb, b));
}

}  // namespace ruit::testing
