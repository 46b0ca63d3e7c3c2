#include <gtest/gtest.h>

#include "generators.hpp"
#include "lmu/error.hpp"
#include "lmu/evaluator.hpp"
#include "lmu/oracle.hpp"
#include "lmu/transform.hpp"
#include "lmu/translator.hpp"

namespace lmu {
namespace {

using F = Formula;
using T = MuTerm;
using Pairs = std::set<std::pair<std::size_t, std::size_t>>;

Model two_state() {
  Model m{Pnts({"s0", "s1"}, {{Distribution({{0, Rational(1, 2)}, {1, Rational(1, 2)}})}, {}}), {}};
  m.interpretation.set("P", {Rational(0), Rational(1)});
  return m;
}

TEST(Domination, FollowsNesting) {
  EXPECT_EQ(DominationRelation::of(parse_formula("mu _X1. nu _X2. (_X1 /\\ _X2)")).pairs(), (Pairs{{1, 2}}));
  EXPECT_EQ(DominationRelation::of(parse_formula("(mu _X1. _X1) \\/ mu _X2. _X2")).pairs(), Pairs{});
  EXPECT_EQ(DominationRelation::of(parse_formula("mu _X1. mu _X2. mu _X3. (_X1 \\/ _X2 \\/ _X3)")).pairs(),
            (Pairs{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_THROW(DominationRelation::of(parse_formula("mu X. X")), Error);
}

TEST(GammaStep, ResetsDominatedEntries) {
  auto none = DominationRelation::of(parse_formula("(mu _X1. _X1) \\/ mu _X2. _X2"));
  auto nested = DominationRelation::of(parse_formula("mu _X1. mu _X2. (_X1 \\/ _X2)"));
  EXPECT_EQ(gamma_step({}, none, 1, 0), (Context{{1, 0}}));
  EXPECT_EQ(gamma_step({{2, 0}}, nested, 1, 1), (Context{{1, 1}}));
  EXPECT_EQ(gamma_step({{2, 0}}, none, 1, 1), (Context{{2, 0}, {1, 1}}));
  EXPECT_EQ(gamma_step({{1, 0}}, nested, 2, 1), (Context{{1, 0}, {2, 1}}));
}

TEST(Translate, DiamondIsWeightedSum) {
  Model m = two_state();
  T t = translate(F::diamond(F::prop("P")), m, 0);
  EXPECT_EQ(t, T::oplus(T::scalar(Rational(1, 2), T::constant(Rational(0))),
                        T::scalar(Rational(1, 2), T::constant(Rational(1)))));
  EXPECT_EQ(eval_closed(t), Rational(1, 2));
}

TEST(Translate, DeadlockModalitiesAreConstants) {
  Model m = two_state();
  EXPECT_EQ(translate(F::diamond(F::prop("P")), m, 1), T::constant(Rational(0)));
  EXPECT_EQ(translate(F::box(F::prop("P")), m, 1), T::constant(Rational(1)));
  EXPECT_EQ(render(translate(F::diamond(F::prop("P")), m, 1)), "0*1");
  EXPECT_EQ(render(translate(F::box(F::coprop("P")), m, 0)), "1/2*1*1 (+) 1/2*0*1");
}

TEST(Translate, ReachabilityFixedPoint) {
  Model m = two_state();
  F f = parse_formula("mu X. (P \\/ <>X)");
  T t = translate(f, m, 0);
  EXPECT_EQ(render(t), "mu x_1@s0. (0*1 \\/ 1/2*x_1@s0 (+) 1/2*(mu x_1@s1. (1*1 \\/ 0*1)))");
  Rational v = eval_closed(t);
  EXPECT_EQ(v, Rational(1));
  StateBounds b = kleene_bounds(f, m);
  EXPECT_LE(b.lower[0], v);
  EXPECT_GE(b.upper[0], v);
}

TEST(Translate, VariablesResetWhenOuterBinderUnfolds) {
  // The inner νY must be re-expanded at s0 after a step through s1 under the outer μX.
  Model m{Pnts({"s0", "s1"}, {{Distribution({{1, Rational(1)}})}, {Distribution({{0, Rational(1)}})}}), {}};
  m.interpretation.set("P", {Rational(1), Rational(0)});
  F f = parse_formula("mu X. nu Y. (<>X \\/ P /\\ <>Y)");
  Translator tr(f, m);
  EXPECT_EQ(tr.binder_count(), 2u);
  EXPECT_TRUE(tr.domination().dominates(1, 2));
  T t = tr.translate(0);
  EXPECT_TRUE(t.free_variables().empty());
  StateBounds b = kleene_bounds(f, m);
  Rational v = eval_closed(t);
  EXPECT_LE(b.lower[0], v);
  EXPECT_GE(b.upper[0], v);
}

TEST(Translate, UnknownPropositionIsAnError) {
  EXPECT_THROW(translate(F::prop("R"), two_state(), 0), Error);
  EXPECT_THROW(translate(F::var("X"), two_state(), 0), Error);
}

TEST(TermVariableName, Format) { EXPECT_EQ(term_variable_name(3, "s2"), "x_3@s2"); }

TEST(TranslateProperty, SharedTranslatorMatchesFreshOnes) {
  testing::Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    testing::FormulaShape shape;
    shape.size = testing::pick(rng, 2, 10);
    F f = testing::random_formula(rng, shape);
    Model m = testing::random_model(rng);
    Translator shared(f, m);
    for (StateIndex s = m.system.size(); s-- > 0;) {
      EXPECT_EQ(shared.translate(s), Translator(f, m).translate(s)) << render(f);
    }
  }
}

TEST(TranslateProperty, FixedPointFreeAgreesWithDirectEvaluation) {
  testing::Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    testing::FormulaShape shape;
    shape.fixed_points = false;
    shape.size = testing::pick(rng, 1, 10);
    F f = testing::random_formula(rng, shape);
    testing::ModelShape ms;
    ms.boolean = false;
    Model m = testing::random_model(rng, ms);
    EXPECT_EQ(testing::evaluate_states(f, m), direct_eval(f, m)) << render(f);
  }
}

TEST(TranslateProperty, ValuesWithinKleeneBounds) {
  testing::Rng rng(43);
  for (int i = 0; i < 60; ++i) {
    testing::FormulaShape shape;
    shape.size = testing::pick(rng, 2, 9);
    F f = testing::random_formula(rng, shape);
    testing::ModelShape ms;
    ms.boolean = false;
    Model m = testing::random_model(rng, ms);
    auto values = testing::evaluate_states(f, m);
    StateBounds b = kleene_bounds(f, m);
    for (std::size_t s = 0; s < values.size(); ++s) {
      EXPECT_LE(b.lower[s], values[s]) << render(f);
      EXPECT_GE(b.upper[s], values[s]) << render(f);
      if (b.exact) EXPECT_EQ(b.lower[s], values[s]) << render(f);
    }
  }
}

}  // namespace
}  // namespace lmu
