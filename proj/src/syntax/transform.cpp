#include "lmu/transform.hpp"

#include <map>

#include "lmu/error.hpp"

namespace lmu {

namespace {

Formula dual_open(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Var:
      return f;
    case FormulaKind::Prop:
      return Formula::coprop(f.name());
    case FormulaKind::CoProp:
      return Formula::prop(f.name());
    case FormulaKind::Scalar:
      return Formula::oplus(Formula::scalar(f.coefficient(), dual_open(f.body())),
                            Formula::constant(Rational::one() - f.coefficient()));
    case FormulaKind::Join:
      return Formula::meet(dual_open(f.left()), dual_open(f.right()));
    case FormulaKind::Meet:
      return Formula::join(dual_open(f.left()), dual_open(f.right()));
    case FormulaKind::OPlus:
      return Formula::otimes(dual_open(f.left()), dual_open(f.right()));
    case FormulaKind::OTimes:
      return Formula::oplus(dual_open(f.left()), dual_open(f.right()));
    case FormulaKind::Diamond:
      return Formula::box(dual_open(f.body()));
    case FormulaKind::Box:
      return Formula::diamond(dual_open(f.body()));
    case FormulaKind::Mu:
      return Formula::nu(f.name(), dual_open(f.body()));
    case FormulaKind::Nu:
      return Formula::mu(f.name(), dual_open(f.body()));
  }
  throw InternalError("dual: unknown formula kind");
}

class Renamer {
 public:
  Formula run(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Var: {
        auto it = scope_.find(f.name());
        if (it == scope_.end() || it->second.empty()) return f;
        return Formula::var(it->second.back());
      }
      case FormulaKind::Prop:
      case FormulaKind::CoProp:
        return f;
      case FormulaKind::Mu:
      case FormulaKind::Nu: {
        std::string fresh = normalized_name(++count_);
        scope_[f.name()].push_back(fresh);
        Formula body = run(f.body());
        scope_[f.name()].pop_back();
        return Formula::binder(f.kind(), fresh, body);
      }
      case FormulaKind::Scalar:
        return Formula::scalar(f.coefficient(), run(f.body()));
      case FormulaKind::Diamond:
        return Formula::diamond(run(f.body()));
      case FormulaKind::Box:
        return Formula::box(run(f.body()));
      default: {
        Formula lhs = run(f.left());
        return Formula::binary(f.kind(), lhs, run(f.right()));
      }
    }
  }

 private:
  std::map<std::string, std::vector<std::string>> scope_;
  std::size_t count_ = 0;
};

}  // namespace

Formula dual(const Formula& f) {
  if (!f.is_closed()) throw Error("dual requires a closed formula; free variable '" + f.free_variables().front() + "'");
  return dual_open(f);
}

Formula expand_threshold(ThresholdKind kind, const Rational& q, const Formula& f) {
  switch (kind) {
    case ThresholdKind::Positive: {
      std::string x = fresh_variable(f);
      return Formula::mu(x, Formula::oplus(Formula::var(x), f));
    }
    case ThresholdKind::Almost: {
      std::string x = fresh_variable(f);
      return Formula::nu(x, Formula::otimes(Formula::var(x), f));
    }
    case ThresholdKind::Greater:
    case ThresholdKind::AtLeast:
      break;
  }
  if (q.sign() <= 0 || q >= Rational::one()) throw Error("threshold " + q.str() + " must lie strictly between 0 and 1");
  Formula slack = Formula::constant(Rational::one() - q);
  if (kind == ThresholdKind::Greater) {
    return expand_threshold(ThresholdKind::Positive, q, Formula::otimes(f, slack));
  }
  return expand_threshold(ThresholdKind::Almost, q, Formula::oplus(f, slack));
}

std::string normalized_name(std::size_t k) { return "_X" + std::to_string(k); }

Formula normalize_binders(const Formula& f) {
  for (const auto& name : f.free_variables()) {
    if (name.rfind("_X", 0) == 0) throw Error("free variable '" + name + "' clashes with normalized binder names");
  }
  return Renamer().run(f);
}

}  // namespace lmu
