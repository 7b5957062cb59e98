#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "intern.hpp"

namespace ruit {

enum class Kind : std::uint8_t { Var, Imp, And, Or, Top, Bot };

namespace detail {

struct FormulaNode {
  Kind kind = Kind::Top;
  std::uint32_t lhs = 0;  // variable index for Var
  std::uint32_t rhs = 0;

  bool operator==(const FormulaNode&) const = default;
};

struct FormulaNodeHash {
  std::size_t operator()(const FormulaNode& n) const {
    std::size_t h = static_cast<std::size_t>(n.kind);
    h = hash_combine(h, n.lhs);
    return hash_combine(h, n.rhs);
  }
};

}  // namespace detail

class Formula;

/// The process-wide formula store. Top and Bot are pre-interned as ids 0 and 1.
class FormulaStore {
public:
  static FormulaStore& global() {
    static FormulaStore instance;
    return instance;
  }

  std::uint32_t make(Kind kind, std::uint32_t lhs = 0, std::uint32_t rhs = 0) {
    return table_.intern(detail::FormulaNode{kind, lhs, rhs});
  }
  const detail::FormulaNode& node(std::uint32_t id) const { return table_[id]; }
  std::uint32_t size() const { return table_.size(); }

private:
  FormulaStore() {
    make(Kind::Top);
    make(Kind::Bot);
  }

  InternTable<detail::FormulaNode, detail::FormulaNodeHash> table_;
};

/// Handle to an interned IPC formula. Structural equality is id equality.
class Formula {
public:
  constexpr Formula() = default;  // Top
  constexpr explicit Formula(std::uint32_t id) : id_(id) {}

  std::uint32_t id() const { return id_; }

  Kind kind() const { return node().kind; }
  Formula lhs() const { return Formula(node().lhs); }
  Formula rhs() const { return Formula(node().rhs); }
  std::uint32_t var_index() const { return node().lhs; }

  bool is(Kind k) const { return kind() == k; }
  bool is_var() const { return is(Kind::Var); }
  bool is_binary() const {
    const Kind k = kind();
    return k == Kind::Imp || k == Kind::And || k == Kind::Or;
  }

  auto operator<=>(const Formula&) const = default;

private:
  const detail::FormulaNode& node() const { return FormulaStore::global().node(id_); }

  std::uint32_t id_ = 0;
};

inline Formula make_formula(Kind k, Formula lhs, Formula rhs) {
  return Formula(FormulaStore::global().make(k, lhs.id(), rhs.id()));
}

inline Formula top() { return Formula(0); }
inline Formula bot() { return Formula(1); }
inline Formula var(std::uint32_t index) { return Formula(FormulaStore::global().make(Kind::Var, index)); }
inline Formula imp(Formula a, Formula b) { return make_formula(Kind::Imp, a, b); }
inline Formula conj(Formula a, Formula b) { return make_formula(Kind::And, a, b); }
inline Formula disj(Formula a, Formula b) { return make_formula(Kind::Or, a, b); }
inline Formula neg(Formula a) { return imp(a, bot()); }
/// (a -> b) & (b -> a)
inline Formula iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }

inline Formula p() { return var(0); }
inline Formula q() { return var(1); }
inline Formula r() { return var(2); }

/// Same kind as `node`, new children.
inline Formula rebuild(Formula node, Formula lhs, Formula rhs) {
  return make_formula(node.kind(), lhs, rhs);
}

/// Post-order fold over the shared DAG; each distinct node is visited once.
/// `combine(node, lhs, rhs)` receives pointers to the children's values;
/// both are null for leaves.
template <class T, class Combine>
T fold(Formula root, Combine&& combine, std::unordered_map<std::uint32_t, T>& memo) {
  if (auto it = memo.find(root.id()); it != memo.end()) return it->second;
  std::vector<std::pair<Formula, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [f, expanded] = stack.back();
    if (memo.count(f.id())) {
      stack.pop_back();
      continue;
    }
    if (f.is_binary() && !expanded) {
      stack.back().second = true;
      if (!memo.count(f.rhs().id())) stack.emplace_back(f.rhs(), false);
      if (!memo.count(f.lhs().id())) stack.emplace_back(f.lhs(), false);
      continue;
    }
    stack.pop_back();
    if (f.is_binary()) {
      // Copies: the map may rehash while inserting.
      T a = memo.at(f.lhs().id());
      T b = memo.at(f.rhs().id());
      memo.emplace(f.id(), combine(f, &a, &b));
    } else {
      memo.emplace(f.id(), combine(f, static_cast<const T*>(nullptr), static_cast<const T*>(nullptr)));
    }
  }
  return memo.at(root.id());
}

template <class T, class Combine>
T fold(Formula root, Combine&& combine) {
  std::unordered_map<std::uint32_t, T> memo;
  return fold<T>(root, std::forward<Combine>(combine), memo);
}

/// Distinct nodes reachable from the roots, children before parents.
inline std::vector<Formula> topological_nodes(const std::vector<Formula>& roots) {
  std::vector<Formula> order;
  std::unordered_map<std::uint32_t, bool> memo;
  for (Formula root : roots) {
    fold<bool>(
        root,
        [&](Formula f, const bool*, const bool*) {
          order.push_back(f);
          return true;
        },
        memo);
  }
  return order;
}

}  // namespace ruit

template <>
struct std::hash<ruit::Formula> {
  std::size_t operator()(ruit::Formula f) const noexcept { return std::hash<std::uint32_t>{}(f.id()); }
};
