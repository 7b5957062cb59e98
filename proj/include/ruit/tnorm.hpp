#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "errors.hpp"
#include "xformula.hpp"

namespace ruit {

using Rational = boost::rational<boost::multiprecision::cpp_int>;

enum class TNorm { Product, Lukasiewicz };

inline std::string to_string(TNorm t) { return t == TNorm::Product ? "product" : "lukasiewicz"; }

inline std::optional<TNorm> parse_tnorm(std::string_view s) {
  if (s == "product") return TNorm::Product;
  if (s == "lukasiewicz") return TNorm::Lukasiewicz;
  return std::nullopt;
}

/// The unit interval with a continuous t-norm and its residuum.
struct TNormAlgebra {
  TNorm kind = TNorm::Product;

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }

  Rational fusion(const Rational& x, const Rational& y) const {
    if (kind == TNorm::Product) return x * y;
    return std::max(zero(), x + y - one());
  }
  Rational residuum(const Rational& x, const Rational& y) const {
    if (x <= y) return one();
    if (kind == TNorm::Product) return y / x;
    return one() - x + y;
  }
  Rational meet(const Rational& x, const Rational& y) const { return std::min(x, y); }
  Rational join(const Rational& x, const Rational& y) const { return std::max(x, y); }
};

// Comparisons against plain ints recurse forever in boost::rational<cpp_int>.
inline bool in_unit_interval(const Rational& x) { return x >= TNormAlgebra::zero() && x <= TNormAlgebra::one(); }

/// "a/b" or "a" with a, b decimal.
inline Rational parse_rational(std::string_view s) {
  auto parse_int = [&](std::string_view t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string_view::npos)
      throw InvalidInput("not a rational: " + std::string(s));
    return boost::multiprecision::cpp_int(std::string(t));
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  const auto den = parse_int(s.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator: " + std::string(s));
  return Rational(parse_int(s.substr(0, slash)), den);
}

inline std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return x.numerator().str();
  return x.numerator().str() + "/" + x.denominator().str();
}

/// Exact value of `a`; variables missing from the assignment are 0.
inline Rational eval_tnorm(const TNormAlgebra& alg, const std::map<std::uint32_t, Rational>& assignment, XFormula a) {
  for (const auto& [v, x] : assignment)
    if (!in_unit_interval(x)) throw InvalidInput("eval_tnorm: value outside [0,1]");
  return xfold<Rational>(a, [&](XFormula f, const Rational* l, const Rational* r) -> Rational {
    switch (f.kind()) {
      case XKind::Top: return TNormAlgebra::one();
      case XKind::Bot: return TNormAlgebra::zero();
      case XKind::Var: {
        auto it = assignment.find(f.var_index());
        return it == assignment.end() ? TNormAlgebra::zero() : it->second;
      }
      case XKind::And: return alg.meet(*l, *r);
      case XKind::Or: return alg.join(*l, *r);
      case XKind::Imp: return alg.residuum(*l, *r);
      case XKind::Fusion: return alg.fusion(*l, *r);
      case XKind::Box: throw InvalidInput("eval_tnorm: box has no interpretation");
    }
    return TNormAlgebra::zero();
  });
}

/// p * p
inline XFormula a_fusion() { return x::fusion(x::p(), x::p()); }

struct TNormDemo {
  TNorm kind = TNorm::Product;
  Rational p0;
  std::vector<Rational> values;       // index k: A^{k+1}(p) at p = p0
  bool strictly_decreasing = false;
  std::optional<std::size_t> zero_at;  // first n with value 0
};

inline TNormDemo tnorm_demo(TNorm kind, const Rational& p0, std::size_t steps) {
  if (!(p0 > TNormAlgebra::zero() && p0 < TNormAlgebra::one())) throw InvalidInput("tnorm_demo: 0 < p0 < 1 required");
  const TNormAlgebra alg{kind};
  const std::map<std::uint32_t, Rational> assignment{{0, p0}};
  TNormDemo out{kind, p0, {}, true, std::nullopt};
  XFormula an = x::p();
  Rational prev = p0;
  for (std::size_t n = 1; n <= steps; ++n) {
    an = substitute(a_fusion(), 0, an);
    Rational v = eval_tnorm(alg, assignment, an);
    if (!(v < prev)) out.strictly_decreasing = false;
    if (v == TNormAlgebra::zero() && !out.zero_at) out.zero_at = n;
    prev = v;
    out.values.push_back(std::move(v));
  }
  return out;
}

}  // namespace ruit
