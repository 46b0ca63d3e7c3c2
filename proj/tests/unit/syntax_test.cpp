#include <gtest/gtest.h>

#include "generators.hpp"
#include "lmu/encoder.hpp"
#include "lmu/error.hpp"
#include "lmu/formula.hpp"
#include "lmu/pctl.hpp"
#include "lmu/term.hpp"
#include "lmu/transform.hpp"

namespace lmu {
namespace {

using F = Formula;

TEST(ParseFormula, ReadsFixedPointsAndModalities) {
  EXPECT_EQ(parse_formula("mu X. (P \\/ <> X)"), F::mu("X", F::join(F::prop("P"), F::diamond(F::var("X")))));
  EXPECT_EQ(parse_formula("[]~P"), F::box(F::coprop("P")));
  EXPECT_EQ(parse_formula("1/2*P (+) 0.25*1"),
            F::oplus(F::scalar(Rational(1, 2), F::prop("P")), F::constant(Rational(1, 4))));
  EXPECT_EQ(parse_formula("1"), F::one());
  EXPECT_EQ(parse_formula("0"), F::zero());
}

TEST(ParseFormula, PrecedenceTightestFirst) {
  // scalar/modal, (.), (+), /\, \/
  EXPECT_EQ(parse_formula("P \\/ Q /\\ P (+) Q (.) <>P"),
            F::join(F::prop("P"), F::meet(F::prop("Q"), F::oplus(F::prop("P"), F::otimes(F::prop("Q"),
                                                                                          F::diamond(F::prop("P")))))));
  EXPECT_EQ(parse_formula("P \\/ Q \\/ P"), F::join(F::join(F::prop("P"), F::prop("Q")), F::prop("P")));
  EXPECT_EQ(parse_formula("1/2*<>P (.) Q"),
            F::otimes(F::scalar(Rational(1, 2), F::diamond(F::prop("P"))), F::prop("Q")));
}

TEST(ParseFormula, BinderScope) {
  // Without parentheses the body extends as far right as possible.
  EXPECT_EQ(parse_formula("mu X. X \\/ P"), F::mu("X", F::join(F::var("X"), F::prop("P"))));
  EXPECT_EQ(parse_formula("P /\\ nu X. X \\/ Q"), F::meet(F::prop("P"), F::nu("X", F::join(F::var("X"), F::prop("Q")))));
  // A parenthesized group right after the dot is the whole body.
  EXPECT_EQ(parse_formula("(nu Y. (Y (.) P)) \\/ Q"),
            F::join(F::nu("Y", F::otimes(F::var("Y"), F::prop("P"))), F::prop("Q")));
  EXPECT_EQ(parse_formula("nu Y. (Y (.) P) \\/ Q"), parse_formula("(nu Y. (Y (.) P)) \\/ Q"));
}

TEST(ParseFormula, IdentifierResolution) {
  EXPECT_EQ(parse_formula("mu P. P"), F::mu("P", F::var("P")));
  FormulaParseOptions open;
  open.free_variables = {"Z"};
  EXPECT_EQ(parse_formula("Z \\/ P", open), F::join(F::var("Z"), F::prop("P")));
  try {
    parse_formula("mu X. (X \\/ y)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unbound variable 'y'"), std::string::npos);
    EXPECT_EQ(e.column(), 13u);
  }
  open.require_closed = false;
  EXPECT_EQ(parse_formula("y", open), F::var("y"));
}

TEST(ParseFormula, RejectsMalformedInput) {
  for (const char* bad : {"", "P \\/", "(P", "mu . P", "mu X P", "3/2*P", "1/2", "~mu X. X", "P Q", "<>", "mu mu. P",
                          "P $ Q"}) {
    EXPECT_THROW(parse_formula(bad), ParseError) << bad;
  }
  EXPECT_THROW(F::scalar(Rational(2), F::one()), Error);
}

TEST(ParseFormula, DuplicateBinderNamesShadow) {
  F f = parse_formula("mu X. (X \\/ mu X. X)");
  EXPECT_EQ(f, F::mu("X", F::join(F::var("X"), F::mu("X", F::var("X")))));
  EXPECT_TRUE(f.is_closed());
}

TEST(Formula, FreeVariablesAndHelpers) {
  F f = F::mu("X", F::join(F::var("X"), F::var("Y")));
  EXPECT_EQ(f.free_variables(), (std::vector<std::string>{"Y"}));
  EXPECT_EQ(variable_names(f), (std::set<std::string>{"X", "Y"}));
  EXPECT_EQ(fresh_variable(F::var("_T1")), "_T2");
  EXPECT_EQ(binder_count(f), 1u);
  EXPECT_FALSE(has_fixed_points(F::constant(Rational(1, 3))));
  EXPECT_TRUE(has_fixed_points(f));
}

TEST(RenderFormula, CanonicalText) {
  EXPECT_EQ(render(parse_formula("mu X.(P \\/ <>X)")), "mu X. (P \\/ <>X)");
  EXPECT_EQ(render(F::constant(Rational(1, 2))), "1/2*1");
  EXPECT_EQ(render(F::join(F::nu("Y", F::var("Y")), F::prop("Q"))), "(nu Y. Y) \\/ Q");
  EXPECT_EQ(render(F::otimes(F::prop("P"), F::oplus(F::prop("P"), F::prop("Q")))), "P (.) (P (+) Q)");
  EXPECT_EQ(render(F::join(F::prop("P"), F::join(F::prop("Q"), F::prop("P")))), "P \\/ (Q \\/ P)");
}

TEST(SyntaxProperty, FormulaRoundTrip) {
  testing::Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    testing::FormulaShape shape;
    shape.size = testing::pick(rng, 1, 14);
    F f = testing::random_formula(rng, shape);
    std::string text = render(f);
    EXPECT_EQ(parse_formula(text), f) << text;
  }
}

TEST(ParseTerm, ReadsTheNestedExample) {
  using T = MuTerm;
  T half = T::constant(Rational(1, 2));
  T expected = T::mu("x", T::join(T::nu("y", T::otimes(T::var("y"), T::oplus(T::var("x"), half))), half));
  EXPECT_EQ(parse_term("mu x . ( nu y . ( y (.) ( x (+) 1/2*1 ) ) \\/ 1/2*1 )", true), expected);
  EXPECT_EQ(parse_term("mu x.(nu y.(y (.) (x (+) 1/2*1)) \\/ 1/2*1)"), expected);
  EXPECT_EQ(render(expected), "mu x. ((nu y. (y (.) (x (+) 1/2*1))) \\/ 1/2*1)");
}

TEST(ParseTerm, VariablesAndErrors) {
  MuTerm t = parse_term("x_1@s0 (+) 1/3*y");
  EXPECT_EQ(t.free_variables(), (std::vector<std::string>{"x_1@s0", "y"}));
  EXPECT_THROW(parse_term("x", true), ParseError);
  EXPECT_THROW(parse_term("<>x"), ParseError);
  EXPECT_THROW(parse_term("[]x"), ParseError);
  EXPECT_THROW(parse_term("5/4*x"), ParseError);
  Rational q;
  EXPECT_TRUE(MuTerm::constant(Rational(3, 7)).is_constant(&q));
  EXPECT_EQ(q, Rational(3, 7));
  EXPECT_EQ(fixed_point_depth(parse_term("mu a. (nu b. (a /\\ b) \\/ mu c. c)")), 2u);
}

TEST(SyntaxProperty, TermRoundTrip) {
  testing::Rng rng(22);
  for (int i = 0; i < 500; ++i) {
    testing::TermShape shape;
    shape.size = testing::pick(rng, 1, 14);
    MuTerm t = testing::random_term(rng, shape);
    std::string text = render(t);
    EXPECT_EQ(parse_term(text), t) << text;
  }
}

TEST(ParsePctl, ReadsOperators) {
  using S = PctlState;
  EXPECT_EQ(parse_pctl("Pmax>=1/2 [ P1 U P2 ]"),
            S::pexists(Bound::GreaterEqual, Rational(1, 2), PctlPath::until(S::prop("P1"), S::prop("P2"))));
  EXPECT_EQ(parse_pctl("Pmin>0.3 [X !P]"),
            S::pforall(Bound::Greater, Rational(3, 10), PctlPath::next(S::negation(S::prop("P")))));
  EXPECT_EQ(parse_pctl("E X P | A[true U Q]"),
            S::disjunction(S::exists(PctlPath::next(S::prop("P"))),
                           S::forall(PctlPath::until(S::truth(), S::prop("Q")))));
  EXPECT_EQ(parse_pctl("P & false"), S::conjunction(S::prop("P"), S::falsity()));
  EXPECT_EQ(parse_pctl("P & false"),
            S::negation(S::disjunction(S::negation(S::prop("P")), S::negation(S::negation(S::truth())))));
  EXPECT_EQ(parse_pctl("!P | Q & P"), S::disjunction(S::negation(S::prop("P")), S::conjunction(S::prop("Q"), S::prop("P"))));
  EXPECT_EQ(pctl_depth(parse_pctl("E[P U A X Pmax>0 [X Q]]")), 3u);
}

TEST(ParsePctl, RejectsMalformedInput) {
  for (const char* bad : {"Pmax>3/2 [X P]", "Pmax=1/2 [X P]", "E[P U]", "E P", "p", "P |", "Pmax>=1/2 X P", "U",
                          "A[P Q]", "(P"}) {
    EXPECT_THROW(parse_pctl(bad), ParseError) << bad;
  }
  EXPECT_THROW(PctlState::pexists(Bound::Greater, Rational(-1), PctlPath::next(PctlState::truth())), Error);
}

TEST(SyntaxProperty, PctlRoundTrip) {
  testing::Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    PctlState phi = testing::random_pctl(rng, testing::pick(rng, 0, 3), {"P", "Q", "R1"});
    std::string text = render(phi);
    EXPECT_EQ(parse_pctl(text), phi) << text;
  }
}

TEST(Dual, SwapsConnectives) {
  EXPECT_EQ(dual(F::diamond(F::prop("P"))), F::box(F::coprop("P")));
  EXPECT_EQ(dual(F::one()), F::zero());
  EXPECT_EQ(dual(parse_formula("mu X. (X (+) ~P) /\\ nu Y. []Y")), parse_formula("nu X. (X (.) P) \\/ mu Y. <>Y"));
  EXPECT_EQ(dual(F::constant(Rational(1, 3))),
            F::oplus(F::scalar(Rational(1, 3), F::zero()), F::constant(Rational(2, 3))));
  EXPECT_THROW(dual(F::var("X")), Error);
}

TEST(Dual, ScalarDualHasComplementValue) {
  Model m{Pnts({"s0"}, {{}}), {}};
  EXPECT_EQ(testing::evaluate_states(dual(F::constant(Rational(1, 3))), m), (std::vector<Rational>{Rational(2, 3)}));
}

TEST(DualProperty, InvolutionWithoutScalars) {
  testing::Rng rng(24);
  for (int i = 0; i < 300; ++i) {
    testing::FormulaShape shape;
    shape.scalars = false;
    shape.size = testing::pick(rng, 1, 12);
    F f = testing::random_formula(rng, shape);
    EXPECT_EQ(dual(dual(f)), f) << render(f);
  }
}

TEST(DualProperty, DoubleDualPreservesValues) {
  testing::Rng rng(25);
  for (int i = 0; i < 100; ++i) {
    testing::FormulaShape shape;
    shape.size = testing::pick(rng, 1, 8);
    F f = testing::random_formula(rng, shape);
    testing::ModelShape ms;
    ms.boolean = false;
    Model m = testing::random_model(rng, ms);
    EXPECT_EQ(testing::evaluate_states(dual(dual(f)), m), testing::evaluate_states(f, m)) << render(f);
  }
}

TEST(ExpandThreshold, BuildsMacroSkeletons) {
  F phi = F::diamond(F::prop("P"));
  EXPECT_EQ(expand_threshold(ThresholdKind::Positive, {}, phi), F::mu("_T1", F::oplus(F::var("_T1"), phi)));
  EXPECT_EQ(expand_threshold(ThresholdKind::Almost, {}, phi), F::nu("_T1", F::otimes(F::var("_T1"), phi)));
  EXPECT_EQ(expand_threshold(ThresholdKind::AtLeast, Rational(1, 2), phi),
            F::nu("_T1", F::otimes(F::var("_T1"), F::oplus(phi, F::constant(Rational(1, 2))))));
  EXPECT_EQ(expand_threshold(ThresholdKind::Greater, Rational(1, 3), phi),
            F::mu("_T1", F::oplus(F::var("_T1"), F::otimes(phi, F::constant(Rational(2, 3))))));
  // The bound variable avoids names already in use.
  EXPECT_EQ(expand_threshold(ThresholdKind::Positive, {}, F::mu("_T1", F::var("_T1"))).name(), "_T2");
  EXPECT_THROW(expand_threshold(ThresholdKind::Greater, Rational(0), phi), Error);
  EXPECT_THROW(expand_threshold(ThresholdKind::AtLeast, Rational(1), phi), Error);
}

TEST(ExpandThreshold, AlmostSureOfOneIsOne) {
  testing::Rng rng(26);
  for (int i = 0; i < 10; ++i) {
    Model m = testing::random_model(rng);
    for (const auto& v : testing::evaluate_states(expand_threshold(ThresholdKind::Almost, {}, F::one()), m)) {
      EXPECT_EQ(v, Rational(1));
    }
  }
}

TEST(ExpandThreshold, OutputStaysInThresholdFragment) {
  testing::Rng rng(27);
  for (int i = 0; i < 100; ++i) {
    testing::FormulaShape shape;
    shape.scalars = false;
    shape.size = testing::pick(rng, 1, 8);
    F phi = testing::random_formula(rng, shape);
    // Strip ⊕/⊙ from the argument so that only the skeleton contributes them.
    if (!in_threshold_fragment(phi)) continue;
    ThresholdKind kind = static_cast<ThresholdKind>(testing::pick(rng, 0, 3));
    F out = expand_threshold(kind, Rational(1, 3), phi);
    EXPECT_TRUE(in_threshold_fragment(out)) << render(out);
  }
  EXPECT_FALSE(in_threshold_fragment(parse_formula("P (+) Q")));
  EXPECT_FALSE(in_threshold_fragment(parse_formula("1/2*P")));
  EXPECT_TRUE(in_threshold_fragment(parse_formula("mu X. (X (+) <>P (.) 1/2*1)")));
}

TEST(NormalizeBinders, RenamesInPreorder) {
  EXPECT_EQ(normalize_binders(parse_formula("mu X. (X \\/ mu X. X)")),
            F::mu("_X1", F::join(F::var("_X1"), F::mu("_X2", F::var("_X2")))));
  EXPECT_EQ(normalize_binders(parse_formula("mu X. nu Y. (X /\\ Y)")),
            F::mu("_X1", F::nu("_X2", F::meet(F::var("_X1"), F::var("_X2")))));
  F distinct = parse_formula("(mu A. <>A) \\/ nu B. []B");
  EXPECT_EQ(normalize_binders(distinct), parse_formula("(mu _X1. <>_X1) \\/ nu _X2. []_X2"));
}

TEST(NormalizeBindersProperty, PreservesValues) {
  testing::Rng rng(28);
  for (int i = 0; i < 100; ++i) {
    testing::FormulaShape shape;
    shape.size = testing::pick(rng, 1, 10);
    F f = testing::random_formula(rng, shape);
    F g = normalize_binders(f);
    EXPECT_EQ(binder_count(g), binder_count(f));
    EXPECT_EQ(normalize_binders(g), g);
    testing::ModelShape ms;
    ms.boolean = false;
    Model m = testing::random_model(rng, ms);
    EXPECT_EQ(testing::evaluate_states(g, m), testing::evaluate_states(f, m)) << render(f);
  }
}

}  // namespace
}  // namespace lmu
