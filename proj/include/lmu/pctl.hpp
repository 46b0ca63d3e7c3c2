#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "lmu/rational.hpp"

namespace lmu {

enum class PctlKind { True, Prop, Not, Or, Exists, Forall, PExists, PForall };
enum class PathKind { Next, Until };
enum class Bound { Greater, GreaterEqual };

class PctlState;

/// ○φ or φ1 U φ2.
struct PctlPath {
  PathKind kind = PathKind::Next;
  std::shared_ptr<const PctlState> left;  // Until only
  std::shared_ptr<const PctlState> right;

  static PctlPath next(PctlState phi);
  static PctlPath until(PctlState lhs, PctlState rhs);
};

/// PCTL state formula. `Exists`/`Forall` are the path quantifiers of the
/// underlying graph; `PExists`/`PForall` the sup/inf probability thresholds.
class PctlState {
 public:
  static PctlState truth();
  static PctlState falsity();  // ¬true
  static PctlState prop(std::string name);
  static PctlState negation(PctlState phi);
  static PctlState disjunction(PctlState a, PctlState b);
  static PctlState conjunction(PctlState a, PctlState b);  // ¬(¬a ∨ ¬b)
  static PctlState exists(PctlPath path);
  static PctlState forall(PctlPath path);
  /// Throws Error unless q ∈ [0,1].
  static PctlState pexists(Bound bound, Rational q, PctlPath path);
  static PctlState pforall(Bound bound, Rational q, PctlPath path);

  PctlKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const PctlState& operand() const { return *node_->lhs; }  // Not
  const PctlState& left() const { return *node_->lhs; }     // Or
  const PctlState& right() const { return *node_->rhs; }    // Or
  const PctlPath& path() const { return node_->path; }
  Bound bound() const { return node_->bound; }
  const Rational& threshold() const { return node_->threshold; }

  friend bool operator==(const PctlState& a, const PctlState& b);

 private:
  struct Node {
    PctlKind kind;
    std::string name;
    std::shared_ptr<const PctlState> lhs;
    std::shared_ptr<const PctlState> rhs;
    PctlPath path;
    Bound bound = Bound::Greater;
    Rational threshold;
  };
  explicit PctlState(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

bool operator==(const PctlPath& a, const PctlPath& b);

/// Nesting depth of path operators.
std::size_t pctl_depth(const PctlState& phi);

PctlState parse_pctl(std::string_view text);
std::string render(const PctlState& phi);
std::string render(const PctlPath& path);

}  // namespace lmu
