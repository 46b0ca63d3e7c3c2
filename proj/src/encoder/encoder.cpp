#include "lmu/encoder.hpp"

#include "lmu/error.hpp"
#include "lmu/transform.hpp"

namespace lmu {

Formula box_dot(const Formula& f) { return Formula::meet(Formula::box(f), Formula::diamond(Formula::one())); }

namespace {

Formula threshold(Bound bound, const Rational& q, const Formula& f) {
  if (bound == Bound::GreaterEqual) {
    if (q.is_zero()) return Formula::one();
    if (q == Rational::one()) return expand_threshold(ThresholdKind::Almost, q, f);
    return expand_threshold(ThresholdKind::AtLeast, q, f);
  }
  if (q == Rational::one()) return Formula::zero();
  if (q.is_zero()) return expand_threshold(ThresholdKind::Positive, q, f);
  return expand_threshold(ThresholdKind::Greater, q, f);
}

// μX.(goal ⊔ (stay ⊓ step(X))) with X fresh for both operands.
template <class Step>
Formula until(const Formula& stay, const Formula& goal, Step step) {
  std::string x = fresh_variable(Formula::join(stay, goal));
  return Formula::mu(x, Formula::join(goal, Formula::meet(stay, step(Formula::var(x)))));
}

}  // namespace

Formula encode_pctl(const PctlState& phi) {
  switch (phi.kind()) {
    case PctlKind::True:
      return Formula::one();
    case PctlKind::Prop:
      return Formula::prop(phi.name());
    case PctlKind::Not:
      return dual(encode_pctl(phi.operand()));
    case PctlKind::Or:
      return Formula::join(encode_pctl(phi.left()), encode_pctl(phi.right()));
    case PctlKind::Exists:
    case PctlKind::Forall: {
      const bool exists = phi.kind() == PctlKind::Exists;
      auto step = [exists](const Formula& f) {
        return exists ? expand_threshold(ThresholdKind::Positive, {}, Formula::diamond(f))
                      : expand_threshold(ThresholdKind::Almost, {}, box_dot(f));
      };
      const auto& path = phi.path();
      if (path.kind == PathKind::Next) return step(encode_pctl(*path.right));
      return until(encode_pctl(*path.left), encode_pctl(*path.right), step);
    }
    case PctlKind::PExists:
    case PctlKind::PForall: {
      const bool exists = phi.kind() == PctlKind::PExists;
      auto step = [exists](const Formula& f) { return exists ? Formula::diamond(f) : box_dot(f); };
      const auto& path = phi.path();
      Formula inner = path.kind == PathKind::Next
                          ? step(encode_pctl(*path.right))
                          : until(encode_pctl(*path.left), encode_pctl(*path.right), step);
      return threshold(phi.bound(), phi.threshold(), inner);
    }
  }
  throw InternalError("encode_pctl: unknown formula kind");
}

namespace {

bool is_constant(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Prop:
    case FormulaKind::CoProp:
    case FormulaKind::Diamond:
    case FormulaKind::Box:
      return false;
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      return f.is_one() || f.is_zero();
    case FormulaKind::Scalar:
      return is_constant(f.body());
    default:
      return is_constant(f.left()) && is_constant(f.right());
  }
}

bool fragment(const Formula& f);

// Argument of a threshold skeleton: ψ, ψ ⊙ c or ψ ⊕ c.
bool macro_argument(const Formula& arg) {
  if ((arg.kind() == FormulaKind::OTimes || arg.kind() == FormulaKind::OPlus) && is_constant(arg.right())) {
    return fragment(arg.left());
  }
  return fragment(arg);
}

bool fragment(const Formula& f) {
  if (is_constant(f)) return true;
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Prop:
    case FormulaKind::CoProp:
      return true;
    case FormulaKind::Scalar:
    case FormulaKind::OPlus:
    case FormulaKind::OTimes:
      return false;
    case FormulaKind::Join:
    case FormulaKind::Meet:
      return fragment(f.left()) && fragment(f.right());
    case FormulaKind::Diamond:
    case FormulaKind::Box:
      return fragment(f.body());
    case FormulaKind::Mu:
    case FormulaKind::Nu: {
      const Formula body = f.body();
      const FormulaKind skeleton = f.kind() == FormulaKind::Mu ? FormulaKind::OPlus : FormulaKind::OTimes;
      if (body.kind() == skeleton && body.left().kind() == FormulaKind::Var && body.left().name() == f.name()) {
        return macro_argument(body.right());
      }
      return fragment(body);
    }
  }
  return false;
}

}  // namespace

bool in_threshold_fragment(const Formula& f) { return fragment(f); }

}  // namespace lmu
