#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lmu/formula.hpp"
#include "lmu/model.hpp"
#include "lmu/pctl.hpp"
#include "lmu/rational.hpp"
#include "lmu/term.hpp"

namespace lmu {

using StateSet = std::vector<bool>;

/// Memoryless deterministic scheduler: one distribution index per
/// non-deadlock state, nullopt exactly at deadlocks.
struct MdScheduler {
  std::vector<std::optional<std::size_t>> choice;
};

/// The Markov chain obtained by resolving every choice of `system`.
Pnts induced_chain(const Pnts& system, const MdScheduler& scheduler);

/// Probability of φ1 U φ2 in a chain (at most one distribution per state),
/// with S1/S2 the states satisfying φ1/φ2. Exact Gaussian elimination over
/// the states that can still reach S2.
std::vector<Rational> solve_chain_until(const Pnts& chain, const StateSet& s1, const StateSet& s2);

enum class Extremum { Max, Min };

struct OracleOptions {
  /// Upper limit on the number of MD schedulers enumerated for one until.
  std::size_t scheduler_cap = 1'000'000;
};

/// Pointwise max/min of the until probability over all MD schedulers.
std::vector<Rational> until_prob_md(const Pnts& system, const StateSet& s1, const StateSet& s2, Extremum mode,
                                    const OracleOptions& options = {});

/// Pointwise max/min over distributions of the mass on `target`; 0 at deadlocks.
std::vector<Rational> next_prob(const Pnts& system, const StateSet& target, Extremum mode);

/// PCTL verdict per state. Throws Error unless the interpretation is boolean.
StateSet pctl_oracle(const PctlState& phi, const Model& model, const OracleOptions& options = {});

/// Extremal path probabilities of a Pmax/Pmin formula, per state.
std::vector<Rational> pctl_path_probabilities(const PctlState& phi, const Model& model,
                                              const OracleOptions& options = {});

/// Values of a fixed-point-free Łμ formula by its recursive semantics.
std::vector<Rational> direct_eval(const Formula& f, const Model& model);

struct KleeneOptions {
  /// Maximum number of iterates per fixed point.
  std::size_t budget = 10'000;
  /// Total body applications across all nested fixed points; once spent,
  /// remaining fixed points fall back to their trivially sound bound.
  std::size_t work_cap = 200'000;
};

/// Interval for the value of a μ-term at a point, from finite Kleene
/// iteration. `exact` means every fixed point stabilized, so lower = upper =
/// the true value. `trace` lists the iterates of the outermost fixed point
/// (lower-bound run), if the term is a binder.
struct KleeneBounds {
  Rational lower;
  Rational upper;
  bool exact = false;
  std::vector<Rational> trace;
};

struct StateBounds {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  bool exact = false;
};

/// Variables missing from `point` are an Error.
KleeneBounds kleene_bounds(const MuTerm& t, const std::vector<std::pair<std::string, Rational>>& point,
                           const KleeneOptions& options = {});
StateBounds kleene_bounds(const Formula& f, const Model& model, const KleeneOptions& options = {});

}  // namespace lmu
