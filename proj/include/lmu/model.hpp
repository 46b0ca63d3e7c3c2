#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lmu/rational.hpp"

namespace lmu {

/// Position of a state in declaration order; the canonical state order.
using StateIndex = std::size_t;

/// Finitely supported probability distribution over states.
class Distribution {
 public:
  using Entry = std::pair<StateIndex, Rational>;

  Distribution() = default;
  /// Entries are sorted by state; nothing else is checked here.
  explicit Distribution(std::vector<Entry> weights);

  const std::vector<Entry>& weights() const { return weights_; }
  Rational weight(StateIndex s) const;
  Rational total() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<Entry> weights_;
};

/// Finite rational probabilistic nondeterministic transition system.
///
/// Identical distributions leaving the same state are merged on
/// construction. A state with no distribution is a deadlock.
class Pnts {
 public:
  Pnts() = default;
  Pnts(std::vector<std::string> state_names, std::vector<std::vector<Distribution>> transitions);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(StateIndex s) const { return names_.at(s); }
  std::optional<StateIndex> find(std::string_view name) const;
  StateIndex index(std::string_view name) const;  // throws Error when unknown

  std::span<const Distribution> distributions(StateIndex s) const { return transitions_.at(s); }
  bool is_deadlock(StateIndex s) const { return transitions_.at(s).empty(); }

  friend bool operator==(const Pnts&, const Pnts&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Distribution>> transitions_;
};

/// Valuation of propositions; complements are derived on lookup.
class Interpretation {
 public:
  void set(std::string proposition, std::vector<Rational> values);

  bool contains(std::string_view proposition) const;
  const std::vector<Rational>& values(std::string_view proposition) const;  // throws Error when unknown
  const Rational& value(std::string_view proposition, StateIndex s) const;
  Rational complement(std::string_view proposition, StateIndex s) const;

  const std::map<std::string, std::vector<Rational>, std::less<>>& valuation() const { return valuation_; }
  bool is_boolean() const;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  std::map<std::string, std::vector<Rational>, std::less<>> valuation_;
};

struct Model {
  Pnts system;
  Interpretation interpretation;

  friend bool operator==(const Model&, const Model&) = default;
};

enum class ValuationMode {
  Quantitative,  // values anywhere in [0,1]
  Boolean,       // PCTL use: values in {0,1}
};

/// Every invariant violation of (system, interpretation), one message each.
std::vector<std::string> validate_model(const Pnts& system, const Interpretation& interpretation,
                                        ValuationMode mode = ValuationMode::Quantitative);

/// Parses the line-oriented model format and validates the result.
Model parse_model(std::string_view text);
/// Canonical text form; parse_model(render_model(m)) == m.
std::string render_model(const Model& model);

/// The graph underlying a PNTS: s ~> t iff some s -> d has d(t) > 0.
class EdgeRelation {
 public:
  explicit EdgeRelation(std::size_t states = 0) : successors_(states) {}

  void add(StateIndex from, StateIndex to);
  bool contains(StateIndex from, StateIndex to) const;
  const std::vector<StateIndex>& successors(StateIndex s) const { return successors_.at(s); }
  std::set<std::pair<StateIndex, StateIndex>> edges() const;
  std::size_t size() const { return successors_.size(); }

 private:
  std::vector<std::vector<StateIndex>> successors_;  // sorted, unique
};

EdgeRelation underlying_graph(const Pnts& system);

}  // namespace lmu
