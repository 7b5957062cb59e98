#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kripke.hpp"
#include "sequent.hpp"
#include "substitution.hpp"

namespace ruit {

struct Countermodel {
  KripkeModel model;
  std::size_t world = 0;
};

namespace detail {

inline std::vector<std::vector<KripkeModel::WorldSet>> enumerate_preorders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<std::vector<KripkeModel::WorldSet>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<KripkeModel::WorldSet> up(n);
    for (std::size_t w = 0; w < n; ++w) up[w] = KripkeModel::WorldSet{1} << w;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1) up[pairs[k].first] |= KripkeModel::WorldSet{1} << pairs[k].second;
    bool transitive = true;
    for (std::size_t w = 0; w < n && transitive; ++w)
      for (std::size_t v = 0; v < n; ++v)
        if (((up[w] >> v) & 1) && (up[v] & ~up[w])) {
          transitive = false;
          break;
        }
    if (transitive) out.push_back(std::move(up));
  }
  return out;
}

}  // namespace detail

/// All preorders on `n` worlds (1 <= n <= 5), as up-set tables, in a fixed
/// order: the off-diagonal pairs form a bitmask that is enumerated upwards.
inline const std::vector<std::vector<KripkeModel::WorldSet>>& preorders(std::size_t n) {
  if (n == 0 || n > 5) throw std::invalid_argument("preorders: 1 <= n <= 5");
  static const auto table = [] {
    std::array<std::vector<std::vector<KripkeModel::WorldSet>>, 6> t;
    for (std::size_t k = 1; k <= 4; ++k) t[k] = detail::enumerate_preorders(k);
    return t;
  }();
  if (n <= 4) return table[n];
  static const auto five = detail::enumerate_preorders(5);
  return five;
}

/// Up-closed subsets of a preorder, ascending as bitmasks.
inline std::vector<KripkeModel::WorldSet> up_sets(const KripkeModel& frame) {
  std::vector<KripkeModel::WorldSet> out;
  for (KripkeModel::WorldSet s = 0; s <= KripkeModel::all(frame.worlds); ++s)
    if (frame.is_up_set(s)) out.push_back(s);
  return out;
}

/// Exhaustive search over preorders with 1..max_worlds worlds and persistent
/// valuations of the sequent's variables. The first witness in enumeration
/// order is returned, after re-verification with `eval_intuitionistic`.
inline std::optional<Countermodel> find_countermodel(const Sequent& s, std::size_t max_worlds) {
  if (max_worlds == 0) throw std::invalid_argument("find_countermodel: max_worlds must be >= 1");
  const auto vars_set = variables([&] {
    auto all = s.context;
    all.push_back(s.goal);
    return all;
  }());
  const std::vector<std::uint32_t> vars(vars_set.begin(), vars_set.end());
  std::vector<Formula> roots = s.context;
  roots.push_back(s.goal);
  CompiledFormulas compiled(roots);

  for (std::size_t n = 1; n <= max_worlds; ++n) {
    for (const auto& up : preorders(n)) {
      KripkeModel model;
      model.worlds = n;
      model.up = up;
      const auto ups = up_sets(model);
      std::vector<std::size_t> choice(vars.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) model.valuation[vars[i]] = ups[choice[i]];
        const auto den = compiled.evaluate(model);
        KripkeModel::WorldSet candidates = KripkeModel::all(n) & ~den.back();
        for (std::size_t i = 0; i + 1 < den.size(); ++i) candidates &= den[i];
        if (candidates) {
          const std::size_t world = static_cast<std::size_t>(std::countr_zero(candidates));
          for (Formula c : s.context)
            if (!eval_intuitionistic(model, world, c)) throw std::logic_error("countermodel replay failed");
          if (eval_intuitionistic(model, world, s.goal)) throw std::logic_error("countermodel replay failed");
          return Countermodel{model, world};
        }
        std::size_t i = 0;
        while (i < vars.size() && ++choice[i] == ups.size()) choice[i++] = 0;
        if (i == vars.size()) break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace ruit
