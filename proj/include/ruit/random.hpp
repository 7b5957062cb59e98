#pragma once

#include <cstdint>
#include <random>

#include "formula.hpp"

namespace ruit {

/// Seeded formula generator. Draws use raw engine output modulo the range so
/// a seed yields the same formulas with every standard library.
class FormulaGenerator {
public:
  struct Shape {
    std::uint32_t variables = 3;  // indices 0..variables-1
    std::uint64_t max_depth = 5;  // leaves have depth 1
    unsigned leaf_percent = 30;   // chance of stopping early at an inner level
    unsigned constant_percent = 10;
  };

  explicit FormulaGenerator(std::uint64_t seed) : rng_(seed) {}
  FormulaGenerator(std::uint64_t seed, Shape shape) : rng_(seed), shape_(shape) {}

  Formula operator()() { return gen(shape_.max_depth, Sign::Any); }

  /// Every occurrence of p is positive (or p is absent).
  Formula monotone() { return gen(shape_.max_depth, Sign::Positive); }

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  std::mt19937_64& engine() { return rng_; }
  const Shape& shape() const { return shape_; }

private:
  enum class Sign { Any, Positive, Negative };

  static Sign flip(Sign s) {
    if (s == Sign::Positive) return Sign::Negative;
    if (s == Sign::Negative) return Sign::Positive;
    return s;
  }

  Formula leaf(Sign s) {
    if (below(100) < shape_.constant_percent) return below(2) ? top() : bot();
    // p may only sit at positive or unconstrained positions.
    const std::uint32_t lo = s == Sign::Negative ? 1 : 0;
    if (lo >= shape_.variables) return below(2) ? top() : bot();
    return var(lo + static_cast<std::uint32_t>(below(shape_.variables - lo)));
  }

  Formula gen(std::uint64_t depth, Sign s) {
    if (depth <= 1 || below(100) < shape_.leaf_percent) return leaf(s);
    switch (below(4)) {
      case 0: return conj(gen(depth - 1, s), gen(depth - 1, s));
      case 1: return disj(gen(depth - 1, s), gen(depth - 1, s));
      case 2: return neg(gen(depth - 1, flip(s)));
      default: return imp(gen(depth - 1, flip(s)), gen(depth - 1, s));
    }
  }

  std::mt19937_64 rng_;
  Shape shape_;
};

}  // namespace ruit
