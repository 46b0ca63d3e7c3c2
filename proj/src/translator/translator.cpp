#include "lmu/translator.hpp"

#include <limits>

#include "lmu/error.hpp"
#include "lmu/transform.hpp"

namespace lmu {

std::string term_variable_name(std::size_t binder, const std::string& state) {
  return "x_" + std::to_string(binder) + "@" + state;
}

namespace {

struct BinderCollector {
  std::vector<Formula> binders;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> open;  // indices of enclosing binders

  void visit(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Var:
      case FormulaKind::Prop:
      case FormulaKind::CoProp:
        return;
      case FormulaKind::Mu:
      case FormulaKind::Nu: {
        binders.push_back(f);
        std::size_t k = binders.size();
        if (f.name() != normalized_name(k)) {
          throw Error("binder '" + f.name() + "' is not normalized (expected " + normalized_name(k) + ")");
        }
        for (auto i : open) pairs.insert({i, k});
        open.push_back(k);
        visit(f.body());
        open.pop_back();
        return;
      }
      default:
        if (f.is_binary()) {
          visit(f.left());
          visit(f.right());
        } else {
          visit(f.body());
        }
    }
  }
};

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

void check_propositions(const Formula& f, const Interpretation& rho) {
  switch (f.kind()) {
    case FormulaKind::Var:
      return;
    case FormulaKind::Prop:
    case FormulaKind::CoProp:
      if (!rho.contains(f.name())) throw Error("unknown proposition '" + f.name() + "'");
      return;
    default:
      if (f.is_binary()) {
        check_propositions(f.left(), rho);
        check_propositions(f.right(), rho);
      } else {
        check_propositions(f.body(), rho);
      }
  }
}

}  // namespace

DominationRelation DominationRelation::of(const Formula& normalized) {
  BinderCollector c;
  c.visit(normalized);
  DominationRelation d;
  d.pairs_ = std::move(c.pairs);
  return d;
}

Context gamma_step(const Context& gamma, const DominationRelation& dom, std::size_t i, StateIndex s) {
  Context out;
  for (const auto& entry : gamma) {
    if (!dom.dominates(i, entry.binder)) out.insert(entry);
  }
  out.insert({i, s});
  return out;
}

Translator::Translator(const Formula& f, const Model& model) : model_(model), formula_(normalize_binders(f)) {
  if (!f.is_closed()) throw Error("cannot translate open formula; free variable '" + f.free_variables().front() + "'");
  check_propositions(f, model.interpretation);

  BinderCollector c;
  c.visit(formula_);
  dom_ = DominationRelation::of(formula_);
  for (std::size_t k = 0; k < c.binders.size(); ++k) {
    binders_.push_back({c.binders[k].kind(), c.binders[k].body()});
    index_[c.binders[k].name()] = k + 1;
  }

  // Every binder descent raises the per-index occupancy of Γ, so no branch
  // can nest more than (n+1)^m binder unfoldings.
  std::size_t bound = 1;
  for (std::size_t k = 0; k < binders_.size(); ++k) bound = saturating_mul(bound, model.system.size() + 1);
  depth_bound_ = saturating_mul(bound, formula_size(formula_) + 1);
}

std::size_t Translator::index_of(const Formula& f) const {
  auto it = index_.find(f.name());
  if (it == index_.end()) throw InternalError("translate: unbound variable '" + f.name() + "'");
  return it->second;
}

MuTerm Translator::translate(StateIndex s) {
  if (s >= model_.system.size()) throw Error("state index out of range");
  return run(formula_, s, {});
}

MuTerm Translator::unfold(std::size_t i, StateIndex s, const Context& gamma) {
  const Binder& b = binders_[i - 1];
  MuTerm body = run(b.body, s, gamma);
  const TermKind kind = b.kind == FormulaKind::Mu ? TermKind::Mu : TermKind::Nu;
  return MuTerm::binder(kind, term_variable_name(i, model_.system.name(s)), body);
}

MuTerm Translator::modality(const Formula& f, StateIndex s, const Context& gamma) {
  const bool diamond = f.kind() == FormulaKind::Diamond;
  std::optional<MuTerm> acc;
  for (const auto& d : model_.system.distributions(s)) {
    std::optional<MuTerm> sum;
    for (const auto& [target, weight] : d.weights()) {
      MuTerm part = MuTerm::scalar(weight, run(f.body(), target, gamma));
      sum = sum ? MuTerm::oplus(*sum, part) : part;
    }
    if (!sum) throw InternalError("translate: empty distribution");
    if (!acc) {
      acc = *sum;
    } else {
      acc = diamond ? MuTerm::join(*acc, *sum) : MuTerm::meet(*acc, *sum);
    }
  }
  if (!acc) return MuTerm::constant(diamond ? Rational::zero() : Rational::one());
  return *acc;
}

MuTerm Translator::run(const Formula& f, StateIndex s, const Context& gamma) {
  const bool closed = f.is_closed();
  if (closed) {
    auto it = closed_memo_.find({f.id(), s});
    if (it != closed_memo_.end()) return it->second;
  } else {
    auto it = memo_.find({f.id(), s, gamma});
    if (it != memo_.end()) return it->second;
  }
  if (++depth_ > depth_bound_) throw InternalError("translate: recursion depth exceeds termination bound");

  const auto& rho = model_.interpretation;
  MuTerm out = [&]() -> MuTerm {
    switch (f.kind()) {
      case FormulaKind::Var: {
        std::size_t i = index_of(f);
        if (gamma.count({i, s})) return MuTerm::var(term_variable_name(i, model_.system.name(s)));
        return unfold(i, s, gamma_step(gamma, dom_, i, s));
      }
      case FormulaKind::Prop:
        return MuTerm::constant(rho.value(f.name(), s));
      case FormulaKind::CoProp:
        return MuTerm::constant(rho.complement(f.name(), s));
      case FormulaKind::Scalar:
        return MuTerm::scalar(f.coefficient(), run(f.body(), s, gamma));
      case FormulaKind::Join:
      case FormulaKind::Meet:
      case FormulaKind::OPlus:
      case FormulaKind::OTimes: {
        static constexpr TermKind kinds[] = {TermKind::Join, TermKind::Meet, TermKind::OPlus, TermKind::OTimes};
        MuTerm lhs = run(f.left(), s, gamma);
        MuTerm rhs = run(f.right(), s, gamma);
        return MuTerm::binary(kinds[static_cast<int>(f.kind()) - static_cast<int>(FormulaKind::Join)], lhs, rhs);
      }
      case FormulaKind::Diamond:
      case FormulaKind::Box:
        return modality(f, s, gamma);
      case FormulaKind::Mu:
      case FormulaKind::Nu: {
        std::size_t i = index_of(f);
        Context inner = gamma;
        inner.insert({i, s});
        return unfold(i, s, inner);
      }
    }
    throw InternalError("translate: unknown formula kind");
  }();
  --depth_;

  if (closed) {
    closed_memo_.emplace(std::pair{f.id(), s}, out);
  } else {
    memo_.emplace(std::tuple{f.id(), s, gamma}, out);
  }
  return out;
}

MuTerm translate(const Formula& f, const Model& model, StateIndex s) { return Translator(f, model).translate(s); }

}  // namespace lmu
