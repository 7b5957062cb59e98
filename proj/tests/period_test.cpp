#include <gtest/gtest.h>

#include "support.hpp"

namespace ruit {
namespace {

using testing::exform1;

PeriodOptions with_minimal() {
  PeriodOptions o;
  o.minimal = true;
  return o;
}

TEST(Entry, GuaranteedExamples) {
  EXPECT_EQ(guaranteed_entry(p()).m, 1u);
  EXPECT_EQ(guaranteed_entry(p()).b, 4u);
  EXPECT_EQ(guaranteed_entry(neg(p())).b, 6u);
  EXPECT_EQ(guaranteed_entry(exform1()).m, 4u);
  EXPECT_EQ(guaranteed_entry(exform1()).b, 10u);
  EXPECT_EQ(guaranteed_entry(exform1(), BoundMode::Optimized).b, 10u);
  EXPECT_GT(guaranteed_entry(exform1(), BoundMode::Naive).b, 10u);
}

TEST(Period, VerifyExamples) {
  for (const char* text : {"p", "~p", "T", "F", "p -> F", "q | p", "~~p -> p", "(p -> q) -> p"}) {
    const PeriodReport r = verify_ruitenburg(parse(text));
    ASSERT_TRUE(r.verified.has_value()) << text;
    EXPECT_TRUE(*r.verified) << text;
    EXPECT_EQ(r.b_guaranteed, 2 * r.m + 2);
    EXPECT_LE(r.m, r.m_optimized);
    EXPECT_FALSE(r.resource_limit.has_value());
  }
  const PeriodReport e = verify_ruitenburg(exform1());
  EXPECT_EQ(e.m, 4u);
  EXPECT_EQ(e.b_guaranteed, 10u);
  EXPECT_EQ(e.verified, std::optional<bool>(true));
}

TEST(Period, MinimalExamples) {
  EXPECT_EQ(minimal_entry(p(), 4), (MinimalEntry{0, 1}));
  EXPECT_EQ(minimal_entry(neg(p()), 6), (MinimalEntry{1, 2}));
  EXPECT_EQ(minimal_entry(top(), 4), (MinimalEntry{1, 1}));
  EXPECT_EQ(minimal_entry(exform1(), 10), (MinimalEntry{1, 1}));
  EXPECT_FALSE(minimal_entry(neg(p()), 0).has_value());
  EXPECT_EQ(verify_ruitenburg(neg(p()), with_minimal()).minimal, (MinimalEntry{1, 2}));
}

TEST(Period, RawAndReducedIteratesGiveTheSameMinimalEntry) {
  for (Formula a : testing::load_corpus()) {
    const auto reduced = minimal_entry(a, 6);
    const auto raw = minimal_entry(a, 6, true);
    EXPECT_EQ(reduced, raw) << print(a);
  }
}

TEST(Period, PairsBeforeTheMinimalEntryAreRefuted) {
  Prover prover(ProverOptions{.record_derivations = false, .classical_filter = false});
  for (const char* text : {"p", "~p", "T", "~~p", "p | ~p", "~~p -> p", "q -> p", "(p -> q) -> p"}) {
    const Formula a = parse(text);
    const auto min = minimal_entry(a, 8);
    ASSERT_TRUE(min.has_value()) << text;
    for (std::uint64_t b = 0; b <= min->b; ++b)
      for (std::uint64_t c = 1; c <= 2; ++c) {
        if (b == min->b && c == min->c) break;
        const Sequent s{{}, iff(iterate(a, b), iterate(a, b + c))};
        EXPECT_FALSE(prover.provable(s)) << text << " b=" << b << " c=" << c;
        const auto cm = find_countermodel(s, 4);
        ASSERT_TRUE(cm.has_value()) << text << " b=" << b << " c=" << c;
        EXPECT_FALSE(testing::naive_kripke(cm->model, cm->world, s.goal));
      }
  }
}

TEST(Period, ReducedIteratesAreEquivalentToRawOnes) {
  Prover prover(ProverOptions{.record_derivations = false});
  for (Formula a : testing::load_corpus()) {
    IterateSequence reduced(a, true), raw(a, false);
    for (std::uint64_t n = 0; n <= 5; ++n) EXPECT_TRUE(prover.equiv({}, reduced[n], raw[n])) << print(a) << " n=" << n;
  }
}

TEST(Period, CorpusVerifies) {
  const auto corpus = testing::load_corpus();
  EXPECT_EQ(corpus.size(), 18u);
  for (Formula a : corpus) {
    const PeriodReport r = verify_ruitenburg(a, with_minimal());
    EXPECT_EQ(r.verified, std::optional<bool>(true)) << print(a);
    ASSERT_TRUE(r.minimal.has_value()) << print(a);
    EXPECT_LE(r.minimal->b, r.b_guaranteed);
  }
}

TEST(Period, CorpusContainsTheRiegerNishimuraChain) {
  const auto corpus = testing::load_corpus();
  for (Formula psi : testing::rieger_nishimura(8))
    EXPECT_NE(std::find(corpus.begin(), corpus.end(), psi), corpus.end()) << print(psi);
}

TEST(Period, RandomFormulasVerifyAndMinimalStaysBelowTheGuarantee) {
  FormulaGenerator gen(91, {.variables = 3, .max_depth = 4});
  for (int i = 0; i < 40; ++i) {
    const Formula a = gen();
    const PeriodReport r = verify_ruitenburg(a, with_minimal());
    ASSERT_TRUE(r.verified.has_value()) << print(a) << ": " << r.resource_limit.value_or("");
    EXPECT_TRUE(*r.verified) << print(a);
    ASSERT_TRUE(r.minimal.has_value());
    EXPECT_LE(r.minimal->b, r.b_guaranteed);
    // The period-two identity persists from the minimal entry onwards.
    if (r.minimal->c == 1) {
      EXPECT_TRUE(equiv({}, iterate(a, r.minimal->b + 1), iterate(a, r.minimal->b + 2)));
    }
  }
}

TEST(Period, ResourceLimitLeavesTheVerdictOpen) {
  PeriodOptions o;
  o.raw_iterates = true;
  o.max_dag_size = 20;
  const PeriodReport r = verify_ruitenburg(exform1(), o);
  EXPECT_FALSE(r.verified.has_value());
  ASSERT_TRUE(r.resource_limit.has_value());
  EXPECT_NE(r.resource_limit->find("ceiling"), std::string::npos);
}

TEST(Fixpoints, Examples) {
  FixpointReport f = fixpoints(p());
  EXPECT_TRUE(f.monotone);
  EXPECT_EQ(f.lfp, bot());
  EXPECT_EQ(f.gfp, top());
  EXPECT_TRUE(f.verified);

  f = fixpoints(disj(q(), p()));
  EXPECT_EQ(f.lfp, q());
  EXPECT_EQ(f.gfp, top());

  f = fixpoints(conj(p(), p()));
  EXPECT_EQ(f.lfp, bot());
  EXPECT_EQ(f.gfp, top());

  EXPECT_FALSE(fixpoints(neg(p())).monotone);
  EXPECT_TRUE(fixpoints(q()).monotone);
}

TEST(Fixpoints, LeastBelowGreatestForMonotoneFormulas) {
  FormulaGenerator gen(92, {.variables = 3, .max_depth = 5});
  Prover prover(ProverOptions{.record_derivations = false});
  for (int i = 0; i < 60; ++i) {
    const Formula a = gen.monotone();
    const FixpointReport f = fixpoints(a);
    ASSERT_TRUE(f.monotone) << print(a);
    EXPECT_TRUE(f.verified) << print(a);
    EXPECT_TRUE(prover.provable({{f.lfp}, f.gfp})) << print(a);
    // Any fixpoint sits between them; A{lfp} and A{gfp} are such fixpoints.
    EXPECT_TRUE(prover.provable({{f.lfp}, substitute_p(a, f.gfp)})) << print(a);
  }
}

TEST(Lemmas, SuiteOnSmallFormulas) {
  const LemmaReport neg_report = lemma_suite(neg(p()), 3);
  EXPECT_EQ(neg_report.instances.size(), 76u);
  EXPECT_TRUE(neg_report.all_verified());
  EXPECT_EQ(neg_report.count(LemmaStatus::Failed), 0u);
  EXPECT_EQ(neg_report.bound_length, 2u);

  const LemmaReport ex = lemma_suite(exform1(), 1);
  EXPECT_TRUE(ex.all_verified());
  EXPECT_GT(ex.count(LemmaStatus::Verified), 0u);
}

TEST(Lemmas, StatusNames) {
  EXPECT_EQ(to_string(LemmaStatus::Verified), "verified");
  EXPECT_EQ(to_string(LemmaStatus::Failed), "FAILED");
  EXPECT_EQ(to_string(LemmaStatus::PremiseFalse), "premise false");
  EXPECT_EQ(to_string(LemmaStatus::ResourceLimit), "resource limit");
}

TEST(Lemmas, HoldOnRandomFormulas) {
  FormulaGenerator gen(93, {.variables = 2, .max_depth = 4});
  for (int i = 0; i < 15; ++i) {
    const Formula a = gen();
    const LemmaReport r = lemma_suite(a, 2);
    for (const auto& inst : r.instances)
      EXPECT_NE(inst.status, LemmaStatus::Failed) << print(a) << " " << inst.lemma << " " << inst.indices;
  }
}

}  // namespace
}  // namespace ruit
