#include <gtest/gtest.h>

#include "support.hpp"

namespace ruit {
namespace {

TEST(Parse, Examples) {
  EXPECT_EQ(parse("p & q -> r"), imp(conj(p(), q()), r()));
  EXPECT_EQ(parse("~p"), imp(p(), bot()));
  EXPECT_EQ(parse("p -> q -> p"), imp(p(), imp(q(), p())));
  EXPECT_EQ(parse("p | q | r"), disj(disj(p(), q()), r()));
  EXPECT_EQ(parse("p | q & r"), disj(p(), conj(q(), r())));
  EXPECT_EQ(parse("  x12 ->T"), imp(var(12), top()));
  EXPECT_EQ(parse("~~(p)"), neg(neg(p())));
  EXPECT_EQ(parse("x0 | x1 | x2"), parse("p | q | r"));
}

TEST(Parse, ErrorsCarryOffsetAndExpectations) {
  try {
    parse("p & -> q");
    FAIL() << "accepted malformed input";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("(p"), ParseError);
  EXPECT_THROW(parse("p q"), ParseError);
  EXPECT_THROW(parse("x"), ParseError);
  EXPECT_THROW(parse("s"), ParseError);
}

TEST(Print, Examples) {
  EXPECT_EQ(print(imp(p(), bot())), "~p");
  EXPECT_EQ(print(conj(p(), conj(q(), r()))), "p & (q & r)");
  EXPECT_EQ(print(top()), "T");
  EXPECT_EQ(print(imp(imp(p(), q()), r())), "(p -> q) -> r");
  EXPECT_EQ(print(var(7)), "x7");
  EXPECT_EQ(print(neg(neg(p()))), "~~p");
  EXPECT_EQ(print(testing::exform1()), "(q -> p -> r) & ((p -> r) -> p | r)");
}

TEST(Print, RoundTripsGeneratedFormulas) {
  FormulaGenerator gen(1, {.variables = 4, .max_depth = 8, .leaf_percent = 20});
  for (int i = 0; i < 1000; ++i) {
    const Formula a = gen();
    EXPECT_EQ(parse(print(a)), a) << print(a);
  }
}

TEST(Sequent, ParseAndPrint) {
  const Sequent s = parse_sequent("p -> q, p |- q");
  EXPECT_EQ(s.context, (std::vector<Formula>{imp(p(), q()), p()}));
  EXPECT_EQ(s.goal, q());
  const Sequent e = parse_sequent("|- p | ~p");
  EXPECT_TRUE(e.context.empty());
  EXPECT_EQ(parse_sequent(print(s)).context, s.context);
  EXPECT_THROW(parse_sequent("p, |- q"), ParseError);
  EXPECT_THROW(parse_sequent("p -> q"), ParseError);
}

}  // namespace
}  // namespace ruit
