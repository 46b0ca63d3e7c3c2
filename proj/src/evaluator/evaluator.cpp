#include <map>
#include <set>
#include <unordered_map>

#include "lmu/error.hpp"
#include "lmu/evaluator.hpp"

namespace lmu {

namespace {

class Evaluator {
 public:
  explicit Evaluator(const EvalOptions& options) : options_(options) {}

  void bind_point(const Point& point) {
    for (const auto& [name, value] : point) push(name, value);
  }

  ConditionedLinExpr eval(const MuTerm& t) {
    ConditionedLinExpr out = t.is_closed() ? closed(t) : open(t);
    if (options_.check_conditions) {
      if (auto bad = out.conditions.first_violated(point_)) {
        throw InternalError("condition " + bad->str(names_) + " fails at the evaluation point");
      }
      if (!out.expr.evaluate(point_).in_unit_interval()) throw InternalError("term value outside [0,1]");
    }
    return out;
  }

  std::size_t iterations() const { return iterations_; }

 private:
  void push(const std::string& name, Rational value) {
    scope_[name].push_back(point_.size());
    names_.push_back(name);
    point_.push_back(std::move(value));
  }

  void pop() {
    auto it = scope_.find(names_.back());
    it->second.pop_back();
    if (it->second.empty()) scope_.erase(it);
    names_.pop_back();
    point_.pop_back();
  }

  // 0 <= x_j <= 1 for every level currently in scope.
  const ConditionSet& range() {
    const std::size_t n = point_.size();
    while (ranges_.size() <= n) {
      ConditionSet c = ranges_.empty() ? ConditionSet{} : ranges_.back();
      const Level j = ranges_.size() - 1;
      if (!ranges_.empty()) {
        c.insert(Inequality::at_least(LinExpr::variable(j), Rational::zero()));
        c.insert(Inequality::at_least(Rational::one(), LinExpr::variable(j)));
      }
      ranges_.push_back(std::move(c));
    }
    return ranges_[n];
  }

  // A closed subterm denotes a constant, so its value is computed once
  // without the enclosing variables and reused on the whole unit box.
  ConditionedLinExpr closed(const MuTerm& t) {
    auto it = closed_values_.find(t.id());
    if (it == closed_values_.end()) {
      Rational value;
      if (point_.empty()) {
        value = open(t).expr.constant();
      } else {
        Evaluator inner(options_);
        inner.closed_values_ = std::move(closed_values_);
        inner.iterations_ = iterations_;
        value = inner.eval(t).expr.constant();
        closed_values_ = std::move(inner.closed_values_);
        iterations_ = inner.iterations_;
      }
      it = closed_values_.emplace(t.id(), std::move(value)).first;
    }
    return {range(), LinExpr(it->second)};
  }

  ConditionedLinExpr open(const MuTerm& t) {
    switch (t.kind()) {
      case TermKind::Var: {
        auto it = scope_.find(t.name());
        if (it == scope_.end()) throw Error("point does not assign free variable '" + t.name() + "'");
        return {range(), LinExpr::variable(it->second.back())};
      }
      case TermKind::Scalar: {
        ConditionedLinExpr inner = eval(t.body());
        inner.expr *= t.coefficient();
        return inner;
      }
      case TermKind::Join:
      case TermKind::Meet: {
        ConditionedLinExpr a = eval(t.left());
        ConditionedLinExpr b = eval(t.right());
        const Rational va = a.expr.evaluate(point_);
        const Rational vb = b.expr.evaluate(point_);
        // Join keeps the larger side, meet the smaller; ties go left.
        const bool keep_left = t.kind() == TermKind::Join ? va >= vb : va <= vb;
        a.conditions.insert(b.conditions);
        const LinExpr& kept = keep_left ? a.expr : b.expr;
        const LinExpr& other = keep_left ? b.expr : a.expr;
        if (t.kind() == TermKind::Join) {
          a.conditions.insert(Inequality::at_least(kept, other));
        } else {
          a.conditions.insert(Inequality::at_least(other, kept));
        }
        return {std::move(a.conditions), kept};
      }
      case TermKind::OPlus: {
        ConditionedLinExpr a = eval(t.left());
        ConditionedLinExpr b = eval(t.right());
        a.conditions.insert(b.conditions);
        LinExpr sum = a.expr + b.expr;
        if (sum.evaluate(point_) <= Rational::one()) {
          a.conditions.insert(Inequality::at_least(Rational::one(), sum));
          return {std::move(a.conditions), std::move(sum)};
        }
        a.conditions.insert(Inequality::at_least(sum, Rational::one()));
        return {std::move(a.conditions), Rational::one()};
      }
      case TermKind::OTimes: {
        ConditionedLinExpr a = eval(t.left());
        ConditionedLinExpr b = eval(t.right());
        a.conditions.insert(b.conditions);
        LinExpr sum = a.expr + b.expr;
        if (sum.evaluate(point_) >= Rational::one()) {
          a.conditions.insert(Inequality::at_least(sum, Rational::one()));
          return {std::move(a.conditions), sum - Rational::one()};
        }
        a.conditions.insert(Inequality::at_least(Rational::one(), sum));
        return {std::move(a.conditions), Rational::zero()};
      }
      case TermKind::Mu:
      case TermKind::Nu:
        return fixpoint(t);
    }
    throw InternalError("eval: unknown term kind");
  }

  ConditionedLinExpr fixpoint(const MuTerm& t) {
    const bool least = t.kind() == TermKind::Mu;
    const Level n = point_.size();
    ConditionSet constraints;                        // D
    LinExpr approx = least ? Rational::zero() : Rational::one();  // d
    push(t.name(), Rational::zero());
    // Bound levels above n come and go during body evaluation, so the
    // outer view is rebuilt on each use.
    auto outer = [&] { return std::span<const Rational>(point_.data(), n); };

    for (;;) {
      if (++iterations_ > options_.iteration_cap) {
        throw InternalError("fixed-point iteration cap of " + std::to_string(options_.iteration_cap) + " exceeded");
      }
      point_[n] = approx.evaluate(outer());
      ConditionedLinExpr body = eval(t.body());
      const Rational q = body.expr.coefficient(n);
      std::optional<Inequality> next;  // N

      if (q != Rational::one()) {
        // Unique solution of x = e(r, x) on the current region.
        LinExpr f = (Rational::one() / (Rational::one() - q)) * body.expr.without(n);
        ConditionSet at_f = body.conditions.substitute(n, f);
        if (auto bad = at_f.first_violated(outer())) {
          next = bad->negated();
        } else {
          constraints.insert(body.conditions.substitute(n, approx));
          constraints.insert(at_f);
          pop();
          return {std::move(constraints), std::move(f)};
        }
      } else {
        LinExpr row = body.expr.without(n);
        const Rational residual = row.evaluate(outer());
        if (residual.is_zero()) {
          constraints.insert(body.conditions.substitute(n, approx));
          constraints.insert(Inequality(row, Relation::NonStrict));
          constraints.insert(Inequality(-row, Relation::NonStrict));
          pop();
          return {std::move(constraints), std::move(approx)};
        }
        next = residual.sign() > 0 ? Inequality(row, Relation::Strict) : Inequality(-row, Relation::Strict);
      }

      // Move the approximation to the boundary of the current region.
      VariableBounds bounds = normalize_on(body.conditions, n);
      std::vector<const LinExpr*> candidates;
      for (const auto& b : least ? bounds.upper_nonstrict : bounds.lower_strict) candidates.push_back(&b);
      for (const auto& b : least ? bounds.upper_strict : bounds.lower_nonstrict) candidates.push_back(&b);
      if (candidates.empty()) throw InternalError("fixed-point region has no bound on the bound variable");

      std::size_t j = 0;
      Rational best = candidates[0]->evaluate(outer());
      for (std::size_t i = 1; i < candidates.size(); ++i) {
        Rational v = candidates[i]->evaluate(outer());
        if (least ? v < best : v > best) {
          best = std::move(v);
          j = i;
        }
      }

      constraints.insert(body.conditions.substitute(n, approx));
      constraints.insert(*next);
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (i == j) continue;
        constraints.insert(least ? Inequality::at_least(*candidates[i], *candidates[j])
                                 : Inequality::at_least(*candidates[j], *candidates[i]));
      }
      approx = body.expr.substitute(n, *candidates[j]);
    }
  }

  const EvalOptions& options_;
  std::vector<Rational> point_;
  std::vector<std::string> names_;
  std::map<std::string, std::vector<Level>> scope_;
  std::vector<ConditionSet> ranges_;
  std::unordered_map<const MuTerm::Node*, Rational> closed_values_;
  std::size_t iterations_ = 0;
};

}  // namespace

EvalResult eval_term(const MuTerm& t, const Point& point, const EvalOptions& options) {
  std::set<std::string> seen;
  for (const auto& [name, value] : point) {
    if (!seen.insert(name).second) throw Error("variable '" + name + "' assigned twice");
    if (!value.in_unit_interval()) throw Error("value " + value.str() + " of '" + name + "' outside [0,1]");
  }
  for (const auto& name : t.free_variables()) {
    if (!seen.count(name)) throw Error("point does not assign free variable '" + name + "'");
  }

  Evaluator ev(options);
  ev.bind_point(point);
  EvalResult result;
  result.cle = ev.eval(t);
  std::vector<Rational> values;
  for (const auto& [name, value] : point) {
    result.variables.push_back(name);
    values.push_back(value);
  }
  result.value = result.cle.expr.evaluate(values);
  result.iterations = ev.iterations();
  return result;
}

Rational eval_closed(const MuTerm& t, const EvalOptions& options) {
  if (!t.is_closed()) throw Error("term has free variable '" + t.free_variables().front() + "'");
  return eval_term(t, {}, options).value;
}

}  // namespace lmu
