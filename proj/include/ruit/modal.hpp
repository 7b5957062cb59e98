#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "xformula.hpp"

namespace ruit {

using WorldSet = std::uint64_t;

inline WorldSet all_worlds(std::size_t n) { return n >= 64 ? ~WorldSet{0} : (WorldSet{1} << n) - 1; }

/// Worlds 0..N-1 with m R k iff k < m and m <=i k iff k <= m. Valuations are
/// downward closed, which is persistence for <=i.
struct ModalChainModel {
  std::size_t size = 1;
  std::map<std::uint32_t, WorldSet> valuation;

  bool is_persistent() const {
    for (const auto& [v, s] : valuation)
      if (s & ~all_worlds(size) || (s & (s + 1))) return false;  // downward closed = 0..k-1
    return true;
  }
};

/// Worlds forcing `a`: intuitionistic clauses over <=i, Box over R.
inline WorldSet denotation(const ModalChainModel& m, XFormula a) {
  if (m.size == 0 || m.size > 64) throw InvalidInput("modal chain: 1 <= N <= 64");
  const WorldSet everything = all_worlds(m.size);
  // below[w] = { k : k <= w }
  auto below = [](std::size_t w) { return all_worlds(w + 1); };
  return xfold<WorldSet>(a, [&](XFormula f, const WorldSet* l, const WorldSet* r) -> WorldSet {
    switch (f.kind()) {
      case XKind::Top: return everything;
      case XKind::Bot: return 0;
      case XKind::Var: {
        auto it = m.valuation.find(f.var_index());
        return it == m.valuation.end() ? 0 : it->second;
      }
      case XKind::And: return *l & *r;
      case XKind::Or: return *l | *r;
      case XKind::Imp: {
        WorldSet out = 0;
        const WorldSet bad = *l & ~*r;
        for (std::size_t w = 0; w < m.size; ++w)
          if (!(below(w) & bad)) out |= WorldSet{1} << w;
        return out;
      }
      case XKind::Box: {
        WorldSet out = 0;
        for (std::size_t w = 0; w < m.size; ++w)
          if (!(all_worlds(w) & ~*l)) out |= WorldSet{1} << w;
        return out;
      }
      case XKind::Fusion: throw InvalidInput("modal chain: fusion has no interpretation");
    }
    return 0;
  });
}

inline bool eval_modal_chain(const ModalChainModel& m, std::size_t w, XFormula a) {
  if (w >= m.size) throw std::out_of_range("eval_modal_chain: no such world");
  return (denotation(m, a) >> w) & 1;
}

inline XFormula a_km() { return x::box(x::p()); }

struct ChainDemo {
  std::size_t n = 0;
  std::vector<WorldSet> denotations;  // index k: A_KM^k(p)
  bool strictly_increasing = false;
};

/// Denotations of A_KM^k(p) for k = 0..N in the N-world chain with p false
/// everywhere.
inline ChainDemo km_chain_demo(std::size_t n) {
  if (n < 2 || n > 64) throw InvalidInput("km_chain_demo: 2 <= N <= 64");
  ModalChainModel m;
  m.size = n;
  ChainDemo out;
  out.n = n;
  for (std::size_t k = 0; k <= n; ++k) out.denotations.push_back(denotation(m, iterate(a_km(), k)));
  out.strictly_increasing = true;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const WorldSet a = out.denotations[k], b = out.denotations[k + 1];
    if ((a & ~b) || a == b) out.strictly_increasing = false;
  }
  return out;
}

/// Classical Kripke model: one relation, boolean worlds.
struct ClassicalModalModel {
  std::size_t worlds = 1;
  std::vector<WorldSet> succ;  // succ[w] = { v : w R v }
  std::map<std::uint32_t, WorldSet> valuation;

  bool is_transitive() const {
    for (std::size_t w = 0; w < worlds; ++w)
      for (std::size_t v = 0; v < worlds; ++v)
        if (((succ[w] >> v) & 1) && (succ[v] & ~succ[w])) return false;
    return true;
  }
};

inline WorldSet denotation(const ClassicalModalModel& m, XFormula a) {
  const WorldSet everything = all_worlds(m.worlds);
  return xfold<WorldSet>(a, [&](XFormula f, const WorldSet* l, const WorldSet* r) -> WorldSet {
    switch (f.kind()) {
      case XKind::Top: return everything;
      case XKind::Bot: return 0;
      case XKind::Var: {
        auto it = m.valuation.find(f.var_index());
        return it == m.valuation.end() ? 0 : it->second;
      }
      case XKind::And: return *l & *r;
      case XKind::Or: return *l | *r;
      case XKind::Imp: return (~*l | *r) & everything;
      case XKind::Box: {
        WorldSet out = 0;
        for (std::size_t w = 0; w < m.worlds; ++w)
          if (!(m.succ[w] & ~*l)) out |= WorldSet{1} << w;
        return out;
      }
      case XKind::Fusion: throw InvalidInput("classical modal: fusion has no interpretation");
    }
    return 0;
  });
}

/// Clause-by-clause recursive evaluation at one world, kept independent of
/// the set-based evaluator so witnesses can be replayed against it.
inline bool eval_classical_modal(const ClassicalModalModel& m, std::size_t w, XFormula a) {
  switch (a.kind()) {
    case XKind::Top: return true;
    case XKind::Bot: return false;
    case XKind::Var: {
      auto it = m.valuation.find(a.var_index());
      return it != m.valuation.end() && ((it->second >> w) & 1);
    }
    case XKind::And: return eval_classical_modal(m, w, a.lhs()) && eval_classical_modal(m, w, a.rhs());
    case XKind::Or: return eval_classical_modal(m, w, a.lhs()) || eval_classical_modal(m, w, a.rhs());
    case XKind::Imp: return !eval_classical_modal(m, w, a.lhs()) || eval_classical_modal(m, w, a.rhs());
    case XKind::Box:
      for (std::size_t v = 0; v < m.worlds; ++v)
        if (((m.succ[w] >> v) & 1) && !eval_classical_modal(m, v, a.body())) return false;
      return true;
    case XKind::Fusion: throw InvalidInput("classical modal: fusion has no interpretation");
  }
  return false;
}

/// q | [](q -> []p)
inline XFormula a_k4() { return x::disj(x::q(), x::box(x::imp(x::q(), x::box(x::p())))); }

struct ModalWitness {
  ClassicalModalModel model;
  std::size_t world = 0;
  bool value_i = false;  // A^i at world
  bool value_j = false;
};

/// Transitive relations on n worlds, enumerating the n*n relation bits upwards.
inline std::vector<std::vector<WorldSet>> transitive_relations(std::size_t n) {
  if (n == 0 || n > 5) throw InvalidInput("transitive_relations: 1 <= n <= 5");
  std::vector<std::vector<WorldSet>> out;
  const std::size_t bits = n * n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    ClassicalModalModel m;
    m.worlds = n;
    m.succ.assign(n, 0);
    for (std::size_t w = 0; w < n; ++w) m.succ[w] = (mask >> (w * n)) & all_worlds(n);
    if (m.is_transitive()) out.push_back(std::move(m.succ));
  }
  return out;
}

/// Exhaustive search over transitive models with 1..max_worlds worlds and all
/// valuations of A's variables for a world where A^i and A^j disagree.
inline std::optional<ModalWitness> modal_distinguish(XFormula a, std::uint64_t i, std::uint64_t j,
                                                     std::size_t max_worlds) {
  if (i == j) throw InvalidInput("modal_distinguish: i and j must differ");
  const XFormula ai = iterate(a, i), aj = iterate(a, j);
  std::vector<std::uint32_t> vars = variables(a);
  if (vars.empty() || vars.front() != 0) vars.insert(vars.begin(), 0);
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const std::uint64_t per_var = std::uint64_t{1} << n;
    for (const auto& succ : transitive_relations(n)) {
      ClassicalModalModel m;
      m.worlds = n;
      m.succ = succ;
      std::vector<std::uint64_t> choice(vars.size(), 0);
      while (true) {
        for (std::size_t k = 0; k < vars.size(); ++k) m.valuation[vars[k]] = choice[k];
        const WorldSet diff = denotation(m, ai) ^ denotation(m, aj);
        if (diff) {
          const std::size_t w = static_cast<std::size_t>(std::countr_zero(diff));
          ModalWitness out{m, w, eval_classical_modal(m, w, ai), eval_classical_modal(m, w, aj)};
          if (out.value_i == out.value_j) throw std::logic_error("modal witness replay failed");
          return out;
        }
        std::size_t k = 0;
        while (k < vars.size() && ++choice[k] == per_var) choice[k++] = 0;
        if (k == vars.size()) break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace ruit
