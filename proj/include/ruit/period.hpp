#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "measure.hpp"
#include "prover.hpp"
#include "sharing.hpp"
#include "substitution.hpp"

namespace ruit {

/// Lazily extended sequence A^0, A^1, ... either raw or reduced. Reduced
/// entries are normalized and then rebuilt with prover-certified sharing of
/// equivalent subformulas, so each is provably equivalent to the raw entry.
class IterateSequence {
public:
  IterateSequence(Formula a, bool reduced, std::uint64_t max_dag_size = kUnlimited,
                  ProverOptions options = {.node_budget = 1'000'000, .record_derivations = false})
      : reduced_(reduced), max_dag_size_(max_dag_size), seq_{p()} {
    if (reduced_) {
      auto vars = variables(a);
      vars.insert(0);
      sharing_.emplace(std::vector<std::uint32_t>(vars.begin(), vars.end()), options);
    }
    base_ = reduce(a);
  }

  Formula operator[](std::uint64_t n) {
    while (seq_.size() <= n) {
      const Formula next = reduce(substitute_p(base_, seq_.back()));
      if (max_dag_size_ != kUnlimited && dag_size(next) > max_dag_size_)
        throw ResourceLimit("iterate: DAG size ceiling " + std::to_string(max_dag_size_) + " exceeded at step " +
                            std::to_string(seq_.size()));
      seq_.push_back(next);
    }
    return seq_[n];
  }

  bool reduced() const { return reduced_; }

private:
  Formula reduce(Formula f) { return reduced_ ? (*sharing_)(normalize(f)) : f; }

  Formula base_;
  bool reduced_;
  std::uint64_t max_dag_size_;
  std::vector<Formula> seq_;
  std::optional<EquivalenceSharing> sharing_;
};

struct MinimalEntry {
  std::uint64_t b = 0;
  std::uint64_t c = 0;

  bool operator==(const MinimalEntry&) const = default;
};

struct PeriodOptions {
  BoundMode mode = BoundMode::Pruned;
  bool raw_iterates = false;
  bool minimal = false;
  std::uint64_t b_cap = 0;  // minimal search cap; 0 means the guaranteed b
  std::uint64_t max_dag_size = 5'000'000;
  ProverOptions prover{.record_derivations = false};
};

struct PeriodReport {
  Formula formula;
  std::size_t m = 0;
  std::size_t m_optimized = 0;
  std::uint64_t b_guaranteed = 0;
  std::optional<bool> verified;  // empty when a resource limit intervened
  std::optional<MinimalEntry> minimal;
  SizeReport sizes;  // of A^{b+2}, the largest iterate touched
  bool used_reduced_iterates = true;
  std::optional<std::string> resource_limit;
};

struct EntryPoint {
  std::size_t m = 0;
  std::uint64_t b = 0;
};

/// m = length of the bound in `mode`, b = 2m + 2.
inline EntryPoint guaranteed_entry(Formula a, BoundMode mode, Prover& prover) {
  const std::size_t m = compute_bound(a, mode, prover).size();
  return {m, 2 * static_cast<std::uint64_t>(m) + 2};
}

inline EntryPoint guaranteed_entry(Formula a, BoundMode mode = BoundMode::Pruned) {
  Prover prover(ProverOptions{.record_derivations = false});
  return guaranteed_entry(a, mode, prover);
}

/// First (b, c) in lexicographic order, c in {1, 2}, with |- A^b <-> A^{b+c}.
/// nullopt when nothing is found for b <= b_cap.
inline std::optional<MinimalEntry> minimal_entry(IterateSequence& iterates, std::uint64_t b_cap, Prover& prover) {
  for (std::uint64_t b = 0; b <= b_cap; ++b)
    for (std::uint64_t c = 1; c <= 2; ++c)
      if (prover.equiv({}, iterates[b], iterates[b + c])) return MinimalEntry{b, c};
  return std::nullopt;
}

inline std::optional<MinimalEntry> minimal_entry(Formula a, std::uint64_t b_cap, bool raw_iterates = false,
                                                 ProverOptions options = {.record_derivations = false}) {
  Prover prover(options);
  IterateSequence iterates(a, !raw_iterates);
  return minimal_entry(iterates, b_cap, prover);
}

/// Computes the guaranteed entry point and checks |- A^b <-> A^{b+2}.
inline PeriodReport verify_ruitenburg(Formula a, const PeriodOptions& options = {}) {
  PeriodReport report;
  report.formula = a;
  report.used_reduced_iterates = !options.raw_iterates;
  Prover prover(options.prover);
  try {
    const EntryPoint entry = guaranteed_entry(a, options.mode, prover);
    report.m = entry.m;
    report.b_guaranteed = entry.b;
    report.m_optimized = options.mode == BoundMode::Optimized ? entry.m : optimized_bound(a).size();
    IterateSequence iterates(a, !options.raw_iterates, options.max_dag_size);
    const Formula lo = iterates[entry.b];
    const Formula hi = iterates[entry.b + 2];
    report.sizes = measure(hi);
    report.verified = prover.equiv({}, lo, hi);
    if (options.minimal) {
      const std::uint64_t cap = options.b_cap ? options.b_cap : entry.b;
      report.minimal = minimal_entry(iterates, cap, prover);
    }
  } catch (const ResourceLimit& e) {
    report.verified.reset();
    report.resource_limit = e.what();
  }
  return report;
}

struct FixpointReport {
  bool monotone = false;
  Formula lfp;
  Formula gfp;
  std::uint64_t b = 0;
  bool verified = false;
};

/// For A monotone in p: lfp = A^b{F}/p and gfp = A^b{T}/p with b the
/// guaranteed entry point; verified when both are fixpoints up to |- <->.
/// Iterates are normalized unless `raw_iterates`, so the returned formulas are
/// equivalent to, not identical with, the raw substitution instances.
inline FixpointReport fixpoints(Formula a, const PeriodOptions& options = {}) {
  FixpointReport out;
  const Polarity pol = polarity(a, 0);
  if (pol != Polarity::Positive && pol != Polarity::Absent) return out;
  out.monotone = true;
  Prover prover(options.prover);
  out.b = guaranteed_entry(a, options.mode, prover).b;
  IterateSequence iterates(a, !options.raw_iterates, options.max_dag_size);
  const Formula ab = iterates[out.b];
  out.lfp = substitute_p(ab, bot());
  out.gfp = substitute_p(ab, top());
  if (!options.raw_iterates) {
    out.lfp = normalize(out.lfp);
    out.gfp = normalize(out.gfp);
  }
  out.verified = prover.equiv({}, substitute_p(a, out.lfp), out.lfp) &&
                 prover.equiv({}, substitute_p(a, out.gfp), out.gfp);
  return out;
}

enum class LemmaStatus { Verified, Failed, PremiseFalse, ResourceLimit };

inline std::string to_string(LemmaStatus s) {
  switch (s) {
    case LemmaStatus::Verified: return "verified";
    case LemmaStatus::Failed: return "FAILED";
    case LemmaStatus::PremiseFalse: return "premise false";
    case LemmaStatus::ResourceLimit: return "resource limit";
  }
  return "?";
}

struct LemmaInstance {
  std::string lemma;    // e.g. "climb"
  std::string indices;  // e.g. "i=1 k=2"
  LemmaStatus status = LemmaStatus::Failed;
  std::string detail;
};

struct LemmaReport {
  Formula formula;
  std::uint64_t cap = 0;
  std::size_t bound_length = 0;
  std::vector<LemmaInstance> instances;

  /// No failures and no resource limits; "premise false" is not a failure.
  bool all_verified() const {
    for (const auto& i : instances)
      if (i.status == LemmaStatus::Failed || i.status == LemmaStatus::ResourceLimit) return false;
    return true;
  }
  std::size_t count(LemmaStatus s) const {
    std::size_t n = 0;
    for (const auto& i : instances) n += i.status == s;
    return n;
  }
};

/// Instances of the iteration lemmas for indices up to `cap`, each decided by
/// the prover. With At = A{T}/p and X' = X{T}/p:
///   climb        A^i, At |- A^{i+k}
///   peirce       A^i, At |- (A^{n+1} -> A^n) -> A^n
///   odd-top      (A^{2m+1})' |- (A^n)'
///   even-top     (A^{2m+2})' |- (A^{2n})'
///   stabilize    if A^i, At |- A^m for all i <= cap, then At |- A^m <-> A^{m+1}
///   period-two   if At |- A^m <-> A^{m+1}, then |- A^{m+1} <-> A^{m+3}
///   bound-entry  At, A^i |- A^{2n+1}, n the bound length
/// Conditional instances whose premise fails are reported as PremiseFalse.
inline LemmaReport lemma_suite(Formula a, std::uint64_t cap, const PeriodOptions& options = {}) {
  LemmaReport report;
  report.formula = a;
  report.cap = cap;
  Prover prover(options.prover);
  IterateSequence it(a, !options.raw_iterates, options.max_dag_size);
  const Formula at = substitute_p(a, top());  // A{T}/p
  auto tsub = [&](Formula f) {
    const Formula g = substitute_p(f, top());
    return options.raw_iterates ? g : normalize(g);
  };
  auto entails = [&](std::vector<Formula> ctx, Formula goal) { return prover.provable({std::move(ctx), goal}); };
  auto run = [&](std::string lemma, std::string indices, auto&& body) {
    LemmaInstance inst{std::move(lemma), std::move(indices), LemmaStatus::Failed, {}};
    try {
      inst.status = body();
    } catch (const ResourceLimit& e) {
      inst.status = LemmaStatus::ResourceLimit;
      inst.detail = e.what();
    }
    report.instances.push_back(std::move(inst));
  };
  auto verdict = [](bool ok) { return ok ? LemmaStatus::Verified : LemmaStatus::Failed; };
  auto idx = [](std::initializer_list<std::pair<const char*, std::uint64_t>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) {
      if (!s.empty()) s += ' ';
      s += std::string(k) + "=" + std::to_string(v);
    }
    return s;
  };

  for (std::uint64_t i = 0; i <= cap; ++i)
    for (std::uint64_t k = 0; k <= cap; ++k)
      run("climb", idx({{"i", i}, {"k", k}}), [&] { return verdict(entails({it[i], at}, it[i + k])); });

  for (std::uint64_t i = 0; i <= cap; ++i)
    for (std::uint64_t n = 0; n <= cap; ++n)
      run("peirce", idx({{"i", i}, {"n", n}}),
          [&] { return verdict(entails({it[i], at}, imp(imp(it[n + 1], it[n]), it[n]))); });

  for (std::uint64_t m = 0; m <= cap; ++m)
    for (std::uint64_t n = 0; n <= cap; ++n)
      run("odd-top", idx({{"m", m}, {"n", n}}), [&] { return verdict(entails({tsub(it[2 * m + 1])}, tsub(it[n]))); });

  for (std::uint64_t m = 0; m <= cap; ++m)
    for (std::uint64_t n = 0; n <= cap; ++n)
      run("even-top", idx({{"m", m}, {"n", n}}),
          [&] { return verdict(entails({tsub(it[2 * m + 2])}, tsub(it[2 * n]))); });

  for (std::uint64_t m = 0; m <= cap; ++m)
    run("stabilize", idx({{"m", m}}), [&] {
      for (std::uint64_t i = 0; i <= cap; ++i)
        if (!entails({it[i], at}, it[m])) return LemmaStatus::PremiseFalse;
      return verdict(entails({at}, iff(it[m], it[m + 1])));
    });

  for (std::uint64_t m = 0; m <= cap; ++m)
    run("period-two", idx({{"m", m}}), [&] {
      if (!entails({at}, iff(it[m], it[m + 1]))) return LemmaStatus::PremiseFalse;
      return verdict(entails({}, iff(it[m + 1], it[m + 3])));
    });

  try {
    report.bound_length = compute_bound(a, options.mode, prover).size();
    const std::uint64_t n = report.bound_length;
    for (std::uint64_t i = 0; i <= cap; ++i)
      run("bound-entry", idx({{"n", n}, {"i", i}}), [&] { return verdict(entails({at, it[i]}, it[2 * n + 1])); });
  } catch (const ResourceLimit& e) {
    report.instances.push_back({"bound-entry", "bound", LemmaStatus::ResourceLimit, e.what()});
  }
  return report;
}

}  // namespace ruit
