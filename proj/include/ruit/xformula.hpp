#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "intern.hpp"
#include "text.hpp"

namespace ruit {

/// Formula kinds plus the modal box and substructural fusion.
enum class XKind : std::uint8_t { Var, Imp, And, Or, Top, Bot, Box, Fusion };

namespace detail {

struct XNode {
  XKind kind = XKind::Top;
  std::uint32_t lhs = 0;  // variable index for Var, body for Box
  std::uint32_t rhs = 0;

  bool operator==(const XNode&) const = default;
};

struct XNodeHash {
  std::size_t operator()(const XNode& n) const {
    return hash_combine(hash_combine(static_cast<std::size_t>(n.kind), n.lhs), n.rhs);
  }
};

class XStore {
public:
  static XStore& global() {
    static XStore instance;
    return instance;
  }
  std::uint32_t make(XKind kind, std::uint32_t lhs = 0, std::uint32_t rhs = 0) {
    return table_.intern(XNode{kind, lhs, rhs});
  }
  const XNode& node(std::uint32_t id) const { return table_[id]; }

private:
  XStore() {
    make(XKind::Top);
    make(XKind::Bot);
  }
  InternTable<XNode, XNodeHash> table_;
};

}  // namespace detail

class XFormula {
public:
  constexpr XFormula() = default;  // Top
  constexpr explicit XFormula(std::uint32_t id) : id_(id) {}

  std::uint32_t id() const { return id_; }
  XKind kind() const { return node().kind; }
  XFormula lhs() const { return XFormula(node().lhs); }
  XFormula rhs() const { return XFormula(node().rhs); }
  XFormula body() const { return XFormula(node().lhs); }
  std::uint32_t var_index() const { return node().lhs; }

  bool is(XKind k) const { return kind() == k; }
  bool is_binary() const {
    const XKind k = kind();
    return k == XKind::Imp || k == XKind::And || k == XKind::Or || k == XKind::Fusion;
  }

  auto operator<=>(const XFormula&) const = default;

private:
  const detail::XNode& node() const { return detail::XStore::global().node(id_); }
  std::uint32_t id_ = 0;
};

namespace x {

inline XFormula make(XKind k, XFormula a, XFormula b) {
  return XFormula(detail::XStore::global().make(k, a.id(), b.id()));
}
inline XFormula top() { return XFormula(0); }
inline XFormula bot() { return XFormula(1); }
inline XFormula var(std::uint32_t i) { return XFormula(detail::XStore::global().make(XKind::Var, i)); }
inline XFormula p() { return var(0); }
inline XFormula q() { return var(1); }
inline XFormula imp(XFormula a, XFormula b) { return make(XKind::Imp, a, b); }
inline XFormula conj(XFormula a, XFormula b) { return make(XKind::And, a, b); }
inline XFormula disj(XFormula a, XFormula b) { return make(XKind::Or, a, b); }
inline XFormula neg(XFormula a) { return imp(a, bot()); }
inline XFormula box(XFormula a) { return XFormula(detail::XStore::global().make(XKind::Box, a.id())); }
inline XFormula fusion(XFormula a, XFormula b) { return make(XKind::Fusion, a, b); }

}  // namespace x

/// Embedding of the plain language.
inline XFormula to_x(Formula f) {
  return fold<XFormula>(f, [](Formula g, const XFormula* l, const XFormula* r) {
    switch (g.kind()) {
      case Kind::Var: return x::var(g.var_index());
      case Kind::Top: return x::top();
      case Kind::Bot: return x::bot();
      case Kind::Imp: return x::imp(*l, *r);
      case Kind::And: return x::conj(*l, *r);
      case Kind::Or: return x::disj(*l, *r);
    }
    return x::top();
  });
}

namespace detail {

template <class T, class F>
T xfold(XFormula f, F& combine, std::unordered_map<std::uint32_t, T>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  T out;
  if (f.is_binary()) {
    T a = xfold<T>(f.lhs(), combine, memo);
    T b = xfold<T>(f.rhs(), combine, memo);
    out = combine(f, &a, &b);
  } else if (f.is(XKind::Box)) {
    T a = xfold<T>(f.body(), combine, memo);
    out = combine(f, &a, static_cast<const T*>(nullptr));
  } else {
    out = combine(f, static_cast<const T*>(nullptr), static_cast<const T*>(nullptr));
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace detail

/// Memoized post-order fold; Box passes its body value as `l`.
template <class T, class F>
T xfold(XFormula f, F&& combine) {
  std::unordered_map<std::uint32_t, T> memo;
  return detail::xfold<T>(f, combine, memo);
}

inline XFormula substitute(XFormula a, std::uint32_t var, XFormula replacement) {
  return xfold<XFormula>(a, [&](XFormula f, const XFormula* l, const XFormula* r) {
    switch (f.kind()) {
      case XKind::Var: return f.var_index() == var ? replacement : f;
      case XKind::Top:
      case XKind::Bot: return f;
      case XKind::Box: return x::box(*l);
      default: return x::make(f.kind(), *l, *r);
    }
  });
}

/// A^0 = p, A^{n+1} = A[A^n/p].
inline XFormula iterate(XFormula a, std::uint64_t n) {
  XFormula cur = x::p();
  for (std::uint64_t i = 0; i < n; ++i) cur = substitute(a, 0, cur);
  return cur;
}

inline std::vector<std::uint32_t> variables(XFormula a) {
  std::vector<std::uint32_t> out;
  xfold<bool>(a, [&](XFormula f, const bool*, const bool*) {
    if (f.is(XKind::Var)) out.push_back(f.var_index());
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string print(XFormula a) {
  // Fully parenthesized; these formulas are only ever displayed.
  return xfold<std::string>(a, [](XFormula f, const std::string* l, const std::string* r) -> std::string {
    switch (f.kind()) {
      case XKind::Var: return var_name(f.var_index());
      case XKind::Top: return "T";
      case XKind::Bot: return "F";
      case XKind::Box: return "[]" + *l;
      case XKind::Imp: return "(" + *l + " -> " + *r + ")";
      case XKind::And: return "(" + *l + " & " + *r + ")";
      case XKind::Or: return "(" + *l + " | " + *r + ")";
      case XKind::Fusion: return "(" + *l + " * " + *r + ")";
    }
    return "?";
  });
}

}  // namespace ruit

template <>
struct std::hash<ruit::XFormula> {
  std::size_t operator()(ruit::XFormula f) const noexcept { return std::hash<std::uint32_t>{}(f.id()); }
};
