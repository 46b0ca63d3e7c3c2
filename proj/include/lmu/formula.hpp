#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lmu/detail/tree.hpp"
#include "lmu/rational.hpp"

namespace lmu {

enum class FormulaKind { Var, Prop, CoProp, Scalar, Join, Meet, OPlus, OTimes, Diamond, Box, Mu, Nu };

/// Łukasiewicz μ-calculus formula in positive normal form.
///
/// Values are immutable handles; copies share structure. Equality is
/// structural (bound variable names included).
class Formula {
 public:
  using Node = detail::TreeNode<FormulaKind>;

  static Formula var(std::string name);
  static Formula prop(std::string name);
  static Formula coprop(std::string name);
  /// Throws Error unless q ∈ [0,1].
  static Formula scalar(Rational q, Formula f);
  static Formula join(Formula a, Formula b);
  static Formula meet(Formula a, Formula b);
  static Formula oplus(Formula a, Formula b);
  static Formula otimes(Formula a, Formula b);
  static Formula diamond(Formula f);
  static Formula box(Formula f);
  static Formula mu(std::string variable, Formula body);
  static Formula nu(std::string variable, Formula body);
  static Formula binary(FormulaKind kind, Formula a, Formula b);
  static Formula binder(FormulaKind kind, std::string variable, Formula body);

  /// νX.X, written `1`.
  static Formula one();
  /// μX.X, written `0`.
  static Formula zero();
  /// q·1, the constant q.
  static Formula constant(Rational q);
  /// Binder variable used by one() and zero().
  static const std::string& constant_variable();

  FormulaKind kind() const { return node_->kind; }
  /// Variable, proposition, or bound variable name.
  const std::string& name() const { return node_->name; }
  const Rational& coefficient() const { return node_->coefficient; }
  Formula left() const { return Formula(node_->lhs); }
  Formula right() const { return Formula(node_->rhs); }
  /// Operand of a scalar or modality, body of a binder.
  Formula body() const { return Formula(node_->lhs); }

  bool is_binary() const;
  bool is_binder() const { return kind() == FormulaKind::Mu || kind() == FormulaKind::Nu; }
  bool is_one() const;
  bool is_zero() const;

  const std::vector<std::string>& free_variables() const { return node_->free; }
  bool is_closed() const { return node_->free.empty(); }
  const Node* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) { return detail::same_tree(a.id(), b.id()); }

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(FormulaKind kind, std::string name, Rational q, std::shared_ptr<const Node> lhs,
                      std::shared_ptr<const Node> rhs);

  std::shared_ptr<const Node> node_;
};

/// Every variable name occurring in `f`, free or bound.
std::set<std::string> variable_names(const Formula& f);
/// Smallest `<prefix><k>` (k ≥ 1) not in variable_names(f).
std::string fresh_variable(const Formula& f, const std::string& prefix = "_T");
/// Number of binders in `f`.
std::size_t binder_count(const Formula& f);
/// True if `f` has a binder other than the constants νX.X and μX.X.
bool has_fixed_points(const Formula& f);
std::size_t formula_size(const Formula& f);

struct FormulaParseOptions {
  /// Identifiers that denote free variables when not bound.
  std::set<std::string> free_variables;
  /// Reject formulas whose free variables are not all declared.
  bool require_closed = true;
};

/// Parses the Łμ surface syntax. Unbound identifiers starting with an
/// uppercase letter are propositions.
Formula parse_formula(std::string_view text, const FormulaParseOptions& options = {});
std::string render(const Formula& f);

}  // namespace lmu
