#include "lmu/error.hpp"
#include "lmu/oracle.hpp"

namespace lmu {

namespace {

class PctlChecker {
 public:
  PctlChecker(const Model& model, const OracleOptions& options)
      : model_(model), graph_(underlying_graph(model.system)), options_(options) {}

  StateSet check(const PctlState& phi) {
    const std::size_t n = model_.system.size();
    switch (phi.kind()) {
      case PctlKind::True:
        return StateSet(n, true);
      case PctlKind::Prop: {
        const auto& values = model_.interpretation.values(phi.name());
        StateSet out(n);
        for (StateIndex s = 0; s < n; ++s) out[s] = values.at(s) == Rational::one();
        return out;
      }
      case PctlKind::Not: {
        StateSet out = check(phi.operand());
        out.flip();
        return out;
      }
      case PctlKind::Or: {
        StateSet a = check(phi.left());
        StateSet b = check(phi.right());
        for (StateIndex s = 0; s < n; ++s) a[s] = a[s] || b[s];
        return a;
      }
      case PctlKind::Exists:
      case PctlKind::Forall:
        return quantified(phi.kind() == PctlKind::Exists, phi.path());
      case PctlKind::PExists:
      case PctlKind::PForall: {
        auto p = probabilities(phi);
        StateSet out(n);
        for (StateIndex s = 0; s < n; ++s) {
          out[s] = phi.bound() == Bound::Greater ? p[s] > phi.threshold() : p[s] >= phi.threshold();
        }
        return out;
      }
    }
    throw InternalError("pctl_oracle: unknown formula kind");
  }

  std::vector<Rational> probabilities(const PctlState& phi) {
    if (phi.kind() != PctlKind::PExists && phi.kind() != PctlKind::PForall) {
      throw Error("path probabilities need a Pmax/Pmin formula");
    }
    const Extremum mode = phi.kind() == PctlKind::PExists ? Extremum::Max : Extremum::Min;
    const auto& path = phi.path();
    if (path.kind == PathKind::Next) return next_prob(model_.system, check(*path.right), mode);
    return until_prob_md(model_.system, check(*path.left), check(*path.right), mode, options_);
  }

 private:
  // Whether some / every successor of s lies in `x`; false at deadlocks.
  bool step(bool exists, StateIndex s, const StateSet& x) const {
    const auto& succ = graph_.successors(s);
    if (succ.empty()) return false;
    for (StateIndex t : succ) {
      if (x[t] == exists) return exists;
    }
    return !exists;
  }

  StateSet quantified(bool exists, const PctlPath& path) {
    const std::size_t n = model_.system.size();
    if (path.kind == PathKind::Next) {
      StateSet target = check(*path.right);
      StateSet out(n);
      for (StateIndex s = 0; s < n; ++s) out[s] = step(exists, s, target);
      return out;
    }
    StateSet stay = check(*path.left);
    StateSet goal = check(*path.right);
    StateSet x = goal;
    for (bool changed = true; changed;) {
      changed = false;
      for (StateIndex s = 0; s < n; ++s) {
        if (!x[s] && stay[s] && step(exists, s, x)) {
          x[s] = true;
          changed = true;
        }
      }
    }
    return x;
  }

  const Model& model_;
  EdgeRelation graph_;
  const OracleOptions& options_;
};

void require_boolean(const Model& model) {
  if (!model.interpretation.is_boolean()) throw Error("PCTL needs a boolean interpretation");
}

}  // namespace

StateSet pctl_oracle(const PctlState& phi, const Model& model, const OracleOptions& options) {
  require_boolean(model);
  return PctlChecker(model, options).check(phi);
}

std::vector<Rational> pctl_path_probabilities(const PctlState& phi, const Model& model,
                                              const OracleOptions& options) {
  require_boolean(model);
  return PctlChecker(model, options).probabilities(phi);
}

}  // namespace lmu
