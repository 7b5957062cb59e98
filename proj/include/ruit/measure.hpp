#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "formula.hpp"

namespace ruit {

using BigInt = boost::multiprecision::cpp_int;

struct SizeReport {
  std::uint64_t dag_size = 0;  // distinct shared nodes
  BigInt tree_size = 0;        // nodes with sharing unfolded
  std::uint64_t depth = 0;     // a single leaf has depth 1

  bool operator==(const SizeReport&) const = default;
};

inline std::uint64_t dag_size(Formula f) {
  std::unordered_map<std::uint32_t, bool> memo;
  fold<bool>(f, [](Formula, const bool*, const bool*) { return true; }, memo);
  return memo.size();
}

inline std::uint64_t depth(Formula f) {
  return fold<std::uint64_t>(f, [](Formula, const std::uint64_t* a, const std::uint64_t* b) -> std::uint64_t {
    return a ? 1 + std::max(*a, *b) : 1;
  });
}

inline BigInt tree_size(Formula f) {
  return fold<BigInt>(f, [](Formula, const BigInt* a, const BigInt* b) -> BigInt {
    return a ? BigInt(1 + *a + *b) : BigInt(1);
  });
}

/// Exact sizes computed over the DAG; the unfolded tree is never built.
inline SizeReport measure(Formula f) {
  struct Acc {
    BigInt tree;
    std::uint64_t depth;
  };
  std::unordered_map<std::uint32_t, Acc> memo;
  Acc root = fold<Acc>(
      f,
      [](Formula, const Acc* a, const Acc* b) -> Acc {
        if (!a) return {1, 1};
        return {1 + a->tree + b->tree, 1 + std::max(a->depth, b->depth)};
      },
      memo);
  return SizeReport{memo.size(), std::move(root.tree), root.depth};
}

}  // namespace ruit
