#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lmu/formula.hpp"
#include "lmu/model.hpp"
#include "lmu/term.hpp"

namespace lmu {

/// Term variable x_{i,s}, one per (binder index, state).
struct TermVar {
  std::size_t binder;  // 1-based
  StateIndex state;

  friend auto operator<=>(const TermVar&, const TermVar&) = default;
};

/// `x_<i>@<state name>`
std::string term_variable_name(std::size_t binder, const std::string& state);

/// i ⊳ j iff binder j occurs in the body of binder i. Binders are numbered
/// 1..m in depth-first pre-order of a normalized formula.
class DominationRelation {
 public:
  /// Throws Error if the binders of `f` are not the normalized `_X1.._Xm`.
  static DominationRelation of(const Formula& normalized);

  bool dominates(std::size_t i, std::size_t j) const { return pairs_.count({i, j}) != 0; }
  const std::set<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

 private:
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Set of (binder index, state) pairs whose variables are currently bound.
using Context = std::set<TermVar>;

/// (Γ ∪ {(i,s)}) minus every (j,s') ∈ Γ with i ⊳ j.
Context gamma_step(const Context& gamma, const DominationRelation& dom, std::size_t i, StateIndex s);

/// Unfolds a closed Łμ formula over a finite model into one closed μ-term
/// per state. Subterms are shared between states and calls.
class Translator {
 public:
  /// Throws Error if `f` is not closed or mentions an unknown proposition.
  Translator(const Formula& f, const Model& model);

  MuTerm translate(StateIndex s);

  const Formula& normalized() const { return formula_; }
  const DominationRelation& domination() const { return dom_; }
  std::size_t binder_count() const { return binders_.size(); }

 private:
  struct Binder {
    FormulaKind kind;
    Formula body;
  };

  MuTerm run(const Formula& f, StateIndex s, const Context& gamma);
  MuTerm modality(const Formula& f, StateIndex s, const Context& gamma);
  MuTerm unfold(std::size_t i, StateIndex s, const Context& gamma);
  std::size_t index_of(const Formula& binder) const;

  const Model& model_;
  Formula formula_;
  DominationRelation dom_;
  std::vector<Binder> binders_;  // binders_[i-1]
  std::map<std::string, std::size_t> index_;
  std::map<std::tuple<const Formula::Node*, StateIndex, Context>, MuTerm> memo_;
  std::map<std::pair<const Formula::Node*, StateIndex>, MuTerm> closed_memo_;
  std::size_t depth_ = 0;
  std::size_t depth_bound_ = 0;
};

MuTerm translate(const Formula& f, const Model& model, StateIndex s);

}  // namespace lmu
