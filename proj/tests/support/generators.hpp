#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lmu/formula.hpp"
#include "lmu/model.hpp"
#include "lmu/pctl.hpp"
#include "lmu/rational.hpp"
#include "lmu/term.hpp"

namespace lmu::testing {

using Rng = std::mt19937_64;

/// Picks uniformly from [lo, hi].
std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi);
bool coin(Rng& rng, double p = 0.5);

/// k/den with den in [1, max_den] and 0 <= k <= den.
Rational unit_rational(Rng& rng, long max_den = 8);
/// Like unit_rational but strictly between 0 and 1.
Rational open_unit_rational(Rng& rng, long max_den = 8);

struct ModelShape {
  std::size_t max_states = 4;
  std::size_t max_distributions = 3;
  long max_denominator = 8;
  double deadlock_chance = 0.15;
  std::vector<std::string> propositions = {"P", "Q"};
  bool boolean = true;
};

Model random_model(Rng& rng, const ModelShape& shape = {});

/// `depth` bounds the nesting of path operators.
PctlState random_pctl(Rng& rng, std::size_t depth, const std::vector<std::string>& props = {"P", "Q"});

struct FormulaShape {
  std::size_t size = 8;
  bool fixed_points = true;
  /// Scalars and constants other than 1 and 0.
  bool scalars = true;
  std::vector<std::string> propositions = {"P", "Q"};
};

/// Random closed Łμ formula.
Formula random_formula(Rng& rng, const FormulaShape& shape = {});

struct TermShape {
  std::size_t size = 10;
  std::size_t max_fixed_point_depth = 3;
  std::vector<std::string> free_variables = {"x", "y", "z"};
};

/// Random μ-term over (a subset of) the given free variables.
MuTerm random_term(Rng& rng, const TermShape& shape = {});

/// Value of a closed formula at every state via translation and the evaluator.
std::vector<Rational> evaluate_states(const Formula& f, const Model& model);

}  // namespace lmu::testing
