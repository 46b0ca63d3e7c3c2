#pragma once

#include "lmu/formula.hpp"

namespace lmu {

/// Complement formula: ⟦dual φ⟧ = 1 − ⟦φ⟧. Swaps ⊔/⊓, ⊕/⊙, ◇/□, μ/ν and
/// P/~P. A scalar q·ψ becomes q·dual(ψ) ⊕ (1−q), since the connective-wise
/// rule would send the constant q to 0. Throws Error if `f` has free
/// variables.
Formula dual(const Formula& f);

enum class ThresholdKind {
  Positive,  // P>0
  Almost,    // P=1
  Greater,   // P>q
  AtLeast,   // P>=q
};

/// Threshold modality built from fixed points. The bound variable is fresh
/// for `f`. `q` is ignored for Positive/Almost and must lie strictly between
/// 0 and 1 otherwise.
Formula expand_threshold(ThresholdKind kind, const Rational& q, const Formula& f);

/// Alpha-renames every binder to `_X1`, `_X2`, ... in depth-first pre-order.
Formula normalize_binders(const Formula& f);

/// Name given to the k-th binder (1-based) by normalize_binders.
std::string normalized_name(std::size_t k);

}  // namespace lmu
