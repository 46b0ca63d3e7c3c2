#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmu/rational.hpp"
#include "lmu/term.hpp"

namespace lmu {

/// Variables are numbered by level: the point's variables first, in the
/// order given, then one level per enclosing binder.
using Level = std::size_t;

/// q_1 x_1 + ... + q_n x_n + q, zero coefficients omitted.
class LinExpr {
 public:
  using Term = std::pair<Level, Rational>;

  LinExpr() = default;
  LinExpr(Rational constant) : constant_(std::move(constant)) {}  // NOLINT(google-explicit-constructor)
  static LinExpr variable(Level v);

  const std::vector<Term>& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  Rational coefficient(Level v) const;
  bool is_constant() const { return terms_.empty(); }
  /// Largest level with a nonzero coefficient, if any.
  std::optional<Level> top_level() const;

  LinExpr& operator+=(const LinExpr& rhs);
  LinExpr& operator-=(const LinExpr& rhs);
  LinExpr& operator*=(const Rational& q);
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(const Rational& q, LinExpr e) { return e *= q; }
  LinExpr operator-() const;

  /// Throws Error if a variable's level is outside the point.
  Rational evaluate(std::span<const Rational> point) const;
  /// Replaces x_v by `f`, multiplying out.
  LinExpr substitute(Level v, const LinExpr& f) const;
  /// The expression with the x_v term removed.
  LinExpr without(Level v) const;

  std::string str(std::span<const std::string> names) const;

  friend bool operator==(const LinExpr&, const LinExpr&) = default;
  friend std::strong_ordering operator<=>(const LinExpr& a, const LinExpr& b);

 private:
  std::vector<Term> terms_;  // sorted by level
  Rational constant_;
};

enum class Relation { Strict, NonStrict };  // expr > 0, expr >= 0

/// expr ▷ 0, scaled by a positive factor to primitive integer coefficients.
class Inequality {
 public:
  Inequality(LinExpr expr, Relation relation);

  /// a >= b
  static Inequality at_least(const LinExpr& a, const LinExpr& b) { return {a - b, Relation::NonStrict}; }
  /// a > b
  static Inequality greater(const LinExpr& a, const LinExpr& b) { return {a - b, Relation::Strict}; }

  const LinExpr& expr() const { return expr_; }
  Relation relation() const { return relation_; }
  bool is_ground() const { return expr_.is_constant(); }

  bool holds(std::span<const Rational> point) const;
  /// The complementary inequality: ¬(e > 0) is -e >= 0 and ¬(e >= 0) is -e > 0.
  Inequality negated() const;
  Inequality substitute(Level v, const LinExpr& f) const { return {expr_.substitute(v, f), relation_}; }

  std::string str(std::span<const std::string> names) const;

  friend bool operator==(const Inequality&, const Inequality&) = default;
  friend std::strong_ordering operator<=>(const Inequality& a, const Inequality& b);

 private:
  LinExpr expr_;
  Relation relation_;
};

/// Finite conjunction of inequalities kept sorted and duplicate-free.
/// Ground inequalities that hold are dropped; inserting a false ground
/// inequality is an internal error.
class ConditionSet {
 public:
  ConditionSet() = default;

  void insert(const Inequality& c);
  void insert(const ConditionSet& other);
  ConditionSet substitute(Level v, const LinExpr& f) const;

  bool holds(std::span<const Rational> point) const;
  /// Least failing inequality in canonical order.
  std::optional<Inequality> first_violated(std::span<const Rational> point) const;

  const std::vector<Inequality>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  friend bool operator==(const ConditionSet&, const ConditionSet&) = default;

 private:
  std::vector<Inequality> items_;
};

/// C ⊢ e: on the region where C holds, the term equals e.
struct ConditionedLinExpr {
  ConditionSet conditions;
  LinExpr expr;

  std::string str(std::span<const std::string> names) const;
  friend bool operator==(const ConditionedLinExpr&, const ConditionedLinExpr&) = default;
};

/// Inequalities of a set solved for one variable: x > a, x >= a, x <= b, x < b.
struct VariableBounds {
  ConditionSet rest;  // inequalities not mentioning the variable
  std::vector<LinExpr> lower_strict;
  std::vector<LinExpr> lower_nonstrict;
  std::vector<LinExpr> upper_nonstrict;
  std::vector<LinExpr> upper_strict;
};

VariableBounds normalize_on(const ConditionSet& conditions, Level v);

struct EvalOptions {
  std::size_t iteration_cap = 1'000'000;
  /// Verify on every intermediate result that the conditions hold at the point.
  bool check_conditions = true;
};

struct EvalResult {
  ConditionedLinExpr cle;
  /// Names of the point's variables, indexed by level.
  std::vector<std::string> variables;
  Rational value;
  std::size_t iterations = 0;

  std::string str() const { return cle.str(variables); }
};

using Point = std::vector<std::pair<std::string, Rational>>;

/// Conditioned linear expression of `t` local to `point`. The point must
/// assign every free variable of `t` a value in [0,1]; extra entries become
/// unused variables. Throws Error on bad points, InternalError when the
/// iteration cap is hit or an invariant fails.
EvalResult eval_term(const MuTerm& t, const Point& point, const EvalOptions& options = {});

/// Value of a closed term.
Rational eval_closed(const MuTerm& t, const EvalOptions& options = {});

}  // namespace lmu
