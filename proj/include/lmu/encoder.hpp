#pragma once

#include "lmu/formula.hpp"
#include "lmu/pctl.hpp"

namespace lmu {

/// ⊡φ = □φ ⊓ ◇1: like □ but false at deadlocks.
Formula box_dot(const Formula& f);

/// Closed Łμ formula whose value at every state is the PCTL verdict of `phi`
/// (1 for true, 0 for false) under a boolean interpretation.
Formula encode_pctl(const PctlState& phi);

/// True if every ⊕, ⊙ and scalar node of `f` sits inside a threshold
/// modality skeleton μX.(X ⊕ ψ) / νX.(X ⊙ ψ), possibly with a constant slack
/// ψ ⊙ c or ψ ⊕ c. Constants (1, 0 and their scalings) are exempt.
bool in_threshold_fragment(const Formula& f);

}  // namespace lmu
