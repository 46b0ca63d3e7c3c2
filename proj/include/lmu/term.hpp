#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lmu/detail/tree.hpp"
#include "lmu/rational.hpp"

namespace lmu {

enum class TermKind { Var, Scalar, Join, Meet, OPlus, OTimes, Mu, Nu };

/// Łukasiewicz μ-term: a model-independent fixed-point expression denoting a
/// monotone map [0,1]^n -> [0,1].
class MuTerm {
 public:
  using Node = detail::TreeNode<TermKind>;

  static MuTerm var(std::string name);
  /// Throws Error unless q ∈ [0,1].
  static MuTerm scalar(Rational q, MuTerm t);
  static MuTerm join(MuTerm a, MuTerm b);
  static MuTerm meet(MuTerm a, MuTerm b);
  static MuTerm oplus(MuTerm a, MuTerm b);
  static MuTerm otimes(MuTerm a, MuTerm b);
  static MuTerm mu(std::string variable, MuTerm body);
  static MuTerm nu(std::string variable, MuTerm body);
  static MuTerm binary(TermKind kind, MuTerm a, MuTerm b);
  static MuTerm binder(TermKind kind, std::string variable, MuTerm body);

  /// νx.x
  static MuTerm one();
  /// q·νx.x
  static MuTerm constant(Rational q);

  TermKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Rational& coefficient() const { return node_->coefficient; }
  MuTerm left() const { return MuTerm(node_->lhs); }
  MuTerm right() const { return MuTerm(node_->rhs); }
  MuTerm body() const { return MuTerm(node_->lhs); }

  bool is_binary() const;
  bool is_binder() const { return kind() == TermKind::Mu || kind() == TermKind::Nu; }
  bool is_one() const;
  /// True for q·νx.x; `value` receives q.
  bool is_constant(Rational* value = nullptr) const;

  const std::vector<std::string>& free_variables() const { return node_->free; }
  bool is_closed() const { return node_->free.empty(); }
  const Node* id() const { return node_.get(); }

  friend bool operator==(const MuTerm& a, const MuTerm& b) { return detail::same_tree(a.id(), b.id()); }

 private:
  explicit MuTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static MuTerm make(TermKind kind, std::string name, Rational q, std::shared_ptr<const Node> lhs,
                     std::shared_ptr<const Node> rhs);

  std::shared_ptr<const Node> node_;
};

std::size_t fixed_point_depth(const MuTerm& t);

/// Parses the μ-term syntax; every identifier is a variable.
MuTerm parse_term(std::string_view text, bool require_closed = false);
std::string render(const MuTerm& t);

}  // namespace lmu
