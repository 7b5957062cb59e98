#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "formula.hpp"

namespace ruit {

/// Finite intuitionistic Kripke model with at most 64 worlds. The order is a
/// preorder stored as up-sets; the valuation maps each variable to the set of
/// worlds where it holds. Variables absent from the map are false everywhere.
struct KripkeModel {
  using WorldSet = std::uint64_t;

  std::size_t worlds = 1;
  std::vector<WorldSet> up;                    // up[w] = { w' : w <= w' }
  std::map<std::uint32_t, WorldSet> valuation;

  static KripkeModel chain(std::size_t n) {
    KripkeModel m;
    m.worlds = n;
    m.up.resize(n);
    for (std::size_t w = 0; w < n; ++w) m.up[w] = all(n) & ~((WorldSet{1} << w) - 1);
    return m;
  }

  static WorldSet all(std::size_t n) { return n >= 64 ? ~WorldSet{0} : (WorldSet{1} << n) - 1; }

  bool leq(std::size_t w, std::size_t v) const { return (up[w] >> v) & 1; }
  bool holds(std::size_t w, std::uint32_t var) const {
    auto it = valuation.find(var);
    return it != valuation.end() && ((it->second >> w) & 1);
  }

  bool is_up_set(WorldSet s) const {
    for (std::size_t w = 0; w < worlds; ++w)
      if (((s >> w) & 1) && (up[w] & ~s)) return false;
    return true;
  }

  bool is_preorder() const {
    if (worlds == 0 || worlds > 64 || up.size() != worlds) return false;
    for (std::size_t w = 0; w < worlds; ++w) {
      if (!leq(w, w)) return false;
      if (up[w] & ~all(worlds)) return false;
      for (std::size_t v = 0; v < worlds; ++v)
        if (leq(w, v) && (up[v] & ~up[w])) return false;
    }
    return true;
  }

  bool is_persistent() const {
    for (const auto& [var, set] : valuation)
      if ((set & ~all(worlds)) || !is_up_set(set)) return false;
    return true;
  }
};

/// Set of worlds forcing `a`.
inline KripkeModel::WorldSet denotation(const KripkeModel& m, Formula a) {
  using WorldSet = KripkeModel::WorldSet;
  const WorldSet everything = KripkeModel::all(m.worlds);
  return fold<WorldSet>(a, [&](Formula f, const WorldSet* l, const WorldSet* r) -> WorldSet {
    switch (f.kind()) {
      case Kind::Top: return everything;
      case Kind::Bot: return 0;
      case Kind::Var: {
        auto it = m.valuation.find(f.var_index());
        return it == m.valuation.end() ? 0 : it->second;
      }
      case Kind::And: return *l & *r;
      case Kind::Or: return *l | *r;
      case Kind::Imp: {
        WorldSet out = 0;
        const WorldSet bad = *l & ~*r;
        for (std::size_t w = 0; w < m.worlds; ++w)
          if (!(m.up[w] & bad)) out |= WorldSet{1} << w;
        return out;
      }
    }
    return 0;
  });
}

/// Formulas flattened to a topologically ordered array, for evaluating the
/// same small DAG in many models without hashing.
class CompiledFormulas {
public:
  explicit CompiledFormulas(const std::vector<Formula>& roots) {
    const auto nodes = topological_nodes(roots);
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    for (Formula f : nodes) {
      Op op{f.kind(), 0, 0, 0};
      if (f.is_var()) op.var = f.var_index();
      if (f.is_binary()) {
        op.lhs = local.at(f.lhs().id());
        op.rhs = local.at(f.rhs().id());
      }
      local.emplace(f.id(), static_cast<std::uint32_t>(ops_.size()));
      ops_.push_back(op);
    }
    for (Formula f : roots) roots_.push_back(local.at(f.id()));
    values_.resize(ops_.size());
  }

  /// Denotations of the roots, in the order given to the constructor.
  std::span<const KripkeModel::WorldSet> evaluate(const KripkeModel& m) {
    using WorldSet = KripkeModel::WorldSet;
    const WorldSet everything = KripkeModel::all(m.worlds);
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      const Op& op = ops_[i];
      WorldSet v = 0;
      switch (op.kind) {
        case Kind::Top: v = everything; break;
        case Kind::Bot: v = 0; break;
        case Kind::Var: {
          auto it = m.valuation.find(op.var);
          v = it == m.valuation.end() ? 0 : it->second;
          break;
        }
        case Kind::And: v = values_[op.lhs] & values_[op.rhs]; break;
        case Kind::Or: v = values_[op.lhs] | values_[op.rhs]; break;
        case Kind::Imp: {
          const WorldSet bad = values_[op.lhs] & ~values_[op.rhs];
          for (std::size_t w = 0; w < m.worlds; ++w)
            if (!(m.up[w] & bad)) v |= WorldSet{1} << w;
          break;
        }
      }
      values_[i] = v;
    }
    results_.resize(roots_.size());
    for (std::size_t i = 0; i < roots_.size(); ++i) results_[i] = values_[roots_[i]];
    return results_;
  }

private:
  struct Op {
    Kind kind;
    std::uint32_t lhs, rhs, var;
  };
  std::vector<Op> ops_;
  std::vector<std::uint32_t> roots_;
  std::vector<KripkeModel::WorldSet> values_;
  std::vector<KripkeModel::WorldSet> results_;
};

inline bool eval_intuitionistic(const KripkeModel& m, std::size_t w, Formula a) {
  if (w >= m.worlds) throw std::out_of_range("eval_intuitionistic: no such world");
  return (denotation(m, a) >> w) & 1;
}

}  // namespace ruit
