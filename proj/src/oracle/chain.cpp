#include <deque>

#include "lmu/error.hpp"
#include "lmu/oracle.hpp"

namespace lmu {

Pnts induced_chain(const Pnts& system, const MdScheduler& scheduler) {
  if (scheduler.choice.size() != system.size()) throw Error("scheduler does not cover every state");
  std::vector<std::vector<Distribution>> transitions(system.size());
  for (StateIndex s = 0; s < system.size(); ++s) {
    const auto& c = scheduler.choice[s];
    if (system.is_deadlock(s) != !c.has_value()) throw Error("scheduler must choose exactly at non-deadlock states");
    if (c) transitions[s].push_back(system.distributions(s)[*c]);
  }
  return Pnts(system.names(), std::move(transitions));
}

namespace {

// Solves A x = b in place; A is square and nonsingular.
std::vector<Rational> gaussian_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw InternalError("singular until system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      Rational factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) {
        if (!a[col][k].is_zero()) a[row][k] -= factor * a[col][k];
      }
      b[row] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

std::vector<Rational> solve_chain_until(const Pnts& chain, const StateSet& s1, const StateSet& s2) {
  const std::size_t n = chain.size();
  if (s1.size() != n || s2.size() != n) throw Error("state set size does not match the model");
  for (StateIndex s = 0; s < n; ++s) {
    if (chain.distributions(s).size() > 1) throw Error("solve_chain_until needs at most one distribution per state");
  }

  // Backward search from S2 through S1 states.
  std::vector<std::vector<StateIndex>> pred(n);
  for (StateIndex s = 0; s < n; ++s) {
    for (const auto& d : chain.distributions(s)) {
      for (const auto& [t, w] : d.weights()) pred[t].push_back(s);
    }
  }
  StateSet reach = s2;
  std::deque<StateIndex> queue;
  for (StateIndex s = 0; s < n; ++s) {
    if (s2[s]) queue.push_back(s);
  }
  while (!queue.empty()) {
    StateIndex t = queue.front();
    queue.pop_front();
    for (StateIndex s : pred[t]) {
      if (!reach[s] && s1[s]) {
        reach[s] = true;
        queue.push_back(s);
      }
    }
  }

  std::vector<Rational> value(n, Rational::zero());
  std::vector<std::size_t> slot(n, n);
  std::vector<StateIndex> unknown;
  for (StateIndex s = 0; s < n; ++s) {
    if (s2[s]) {
      value[s] = Rational::one();
    } else if (reach[s]) {
      slot[s] = unknown.size();
      unknown.push_back(s);
    }
  }

  // x_s - Σ_{t unknown} d(t) x_t = Σ_{t ∈ S2} d(t)
  const std::size_t m = unknown.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  std::vector<Rational> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i][i] = Rational::one();
    for (const auto& [t, w] : chain.distributions(unknown[i]).front().weights()) {
      if (slot[t] < n) {
        a[i][slot[t]] -= w;
      } else if (s2[t]) {
        b[i] += w;
      }
    }
  }
  auto x = gaussian_solve(std::move(a), std::move(b));
  for (std::size_t i = 0; i < m; ++i) value[unknown[i]] = std::move(x[i]);
  return value;
}

std::vector<Rational> until_prob_md(const Pnts& system, const StateSet& s1, const StateSet& s2, Extremum mode,
                                    const OracleOptions& options) {
  const std::size_t n = system.size();
  std::size_t count = 1;
  for (StateIndex s = 0; s < n; ++s) {
    std::size_t k = system.distributions(s).size();
    if (k == 0) continue;
    if (count > options.scheduler_cap / k) {
      throw Error("scheduler space exceeds the cap of " + std::to_string(options.scheduler_cap));
    }
    count *= k;
  }

  MdScheduler sigma;
  sigma.choice.resize(n);
  for (StateIndex s = 0; s < n; ++s) {
    if (!system.is_deadlock(s)) sigma.choice[s] = 0;
  }

  std::optional<std::vector<Rational>> best;
  for (;;) {
    auto v = solve_chain_until(induced_chain(system, sigma), s1, s2);
    if (!best) {
      best = std::move(v);
    } else {
      for (StateIndex s = 0; s < n; ++s) {
        if (mode == Extremum::Max ? v[s] > (*best)[s] : v[s] < (*best)[s]) (*best)[s] = std::move(v[s]);
      }
    }
    // Odometer step over the choices, lowest state fastest.
    StateIndex s = 0;
    for (; s < n; ++s) {
      if (!sigma.choice[s]) continue;
      if (++*sigma.choice[s] < system.distributions(s).size()) break;
      sigma.choice[s] = 0;
    }
    if (s == n) break;
  }
  return *best;
}

std::vector<Rational> next_prob(const Pnts& system, const StateSet& target, Extremum mode) {
  std::vector<Rational> out(system.size(), Rational::zero());
  for (StateIndex s = 0; s < system.size(); ++s) {
    bool first = true;
    for (const auto& d : system.distributions(s)) {
      Rational mass;
      for (const auto& [t, w] : d.weights()) {
        if (target.at(t)) mass += w;
      }
      if (first || (mode == Extremum::Max ? mass > out[s] : mass < out[s])) out[s] = mass;
      first = false;
    }
  }
  return out;
}

}  // namespace lmu
