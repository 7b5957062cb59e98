#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "substitution.hpp"

namespace ruit {

inline constexpr std::size_t kDefaultClassicalVarCap = 16;

namespace detail {

/// Truth-table evaluation over the shared DAG, 64 assignments per word.
/// Assignments range over the variables occurring in the inputs only.
class TruthTable {
public:
  TruthTable(std::span<const Formula> context, Formula goal, std::size_t max_vars) : goal_(goal) {
    std::vector<Formula> roots(context.begin(), context.end());
    roots.push_back(goal);
    context_.assign(context.begin(), context.end());
    nodes_ = topological_nodes(roots);
    for (Formula f : nodes_) {
      if (f.is_var() && !var_slot_.count(f.var_index())) {
        const auto slot = var_slot_.size();
        var_slot_.emplace(f.var_index(), slot);
      }
    }
    if (var_slot_.size() > max_vars)
      throw ResourceLimit("classical check: " + std::to_string(var_slot_.size()) + " variables exceed cap " +
                          std::to_string(max_vars));
    for (std::size_t i = 0; i < nodes_.size(); ++i) local_.emplace(nodes_[i].id(), i);
  }

  /// True iff every assignment satisfying all context formulas satisfies the goal.
  bool entails() const {
    const std::size_t nvars = var_slot_.size();
    const std::uint64_t total = std::uint64_t{1} << nvars;
    const std::uint64_t blocks = total <= 64 ? 1 : total / 64;
    const std::uint64_t used_mask = total >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << total) - 1);
    std::vector<std::uint64_t> value(nodes_.size());
    for (std::uint64_t block = 0; block < blocks; ++block) {
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Formula f = nodes_[i];
        switch (f.kind()) {
          case Kind::Top: value[i] = ~std::uint64_t{0}; break;
          case Kind::Bot: value[i] = 0; break;
          case Kind::Var: value[i] = column(var_slot_.at(f.var_index()), block); break;
          case Kind::Imp: value[i] = ~value[slot(f.lhs())] | value[slot(f.rhs())]; break;
          case Kind::And: value[i] = value[slot(f.lhs())] & value[slot(f.rhs())]; break;
          case Kind::Or: value[i] = value[slot(f.lhs())] | value[slot(f.rhs())]; break;
        }
      }
      std::uint64_t premises = ~std::uint64_t{0};
      for (Formula c : context_) premises &= value[slot(c)];
      const std::uint64_t holds = ~premises | value[slot(goal_)];
      if ((holds & used_mask) != used_mask) return false;
    }
    return true;
  }

private:
  static std::uint64_t column(std::size_t var, std::uint64_t block) {
    static constexpr std::uint64_t kPatterns[6] = {
        0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
        0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
    };
    if (var < 6) return kPatterns[var];
    return ((block >> (var - 6)) & 1) ? ~std::uint64_t{0} : 0;
  }

  std::size_t slot(Formula f) const { return local_.at(f.id()); }

  Formula goal_;
  std::vector<Formula> context_;
  std::vector<Formula> nodes_;
  std::unordered_map<std::uint32_t, std::size_t> var_slot_;
  std::unordered_map<std::uint32_t, std::size_t> local_;
};

}  // namespace detail

inline bool classically_entails(std::span<const Formula> context, Formula goal,
                                std::size_t max_vars = kDefaultClassicalVarCap) {
  return detail::TruthTable(context, goal, max_vars).entails();
}

/// True under every boolean assignment to the variables of `a`.
inline bool classical_valid(Formula a, std::size_t max_vars = kDefaultClassicalVarCap) {
  return classically_entails({}, a, max_vars);
}

inline bool classical_equiv(Formula a, Formula b, std::size_t max_vars = kDefaultClassicalVarCap) {
  return classical_valid(iff(a, b), max_vars);
}

}  // namespace ruit
