#include "properties.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lmu/error.hpp"
#include "lmu/oracle.hpp"

namespace lmu::testing {

Point random_point(Rng& rng, const std::vector<std::string>& names, long max_den) {
  Point p;
  for (const auto& n : names) p.emplace_back(n, unit_rational(rng, max_den));
  return p;
}

namespace {

std::vector<Rational> values_of(const Point& p) {
  std::vector<Rational> v;
  for (const auto& [_, q] : p) v.push_back(q);
  return v;
}

Point with_values(const Point& p, const std::vector<Rational>& v) {
  Point out = p;
  for (std::size_t i = 0; i < v.size(); ++i) out[i].second = v[i];
  return out;
}

Rational clip(const Rational& q) { return max(Rational(0), min(Rational(1), q)); }

std::vector<Rational> mix(const std::vector<Rational>& a, const std::vector<Rational>& b, const Rational& lambda) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(lambda * a[i] + (Rational(1) - lambda) * b[i]);
  return out;
}

// Candidates come from the whole box, from small moves around the point and from convex
// combinations of accepted points; the region is convex so the last kind stays inside.
std::vector<std::vector<Rational>> sample_region(const ConditionSet& c, const std::vector<Rational>& r, Rng& rng,
                                                 const PropertyOptions& options) {
  std::set<std::vector<Rational>> seen{r};
  std::vector<std::vector<Rational>> accepted{r};
  for (std::size_t attempt = 0; attempt < options.sample_attempts && accepted.size() < options.samples; ++attempt) {
    std::vector<Rational> cand;
    switch (attempt % 3) {
      case 0:
        for (std::size_t i = 0; i < r.size(); ++i) cand.push_back(unit_rational(rng, 16));
        break;
      case 1: {
        Rational delta(1, 1L << pick(rng, 1, 10));
        for (const auto& q : r) cand.push_back(clip(q + delta * Rational(static_cast<long>(pick(rng, 0, 2)) - 1)));
        break;
      }
      default:
        cand = mix(accepted[pick(rng, 0, accepted.size() - 1)], accepted[pick(rng, 0, accepted.size() - 1)],
                   open_unit_rational(rng, 16));
    }
    if (!seen.insert(cand).second || !c.holds(cand)) continue;
    accepted.push_back(cand);
  }
  return accepted;
}

void binders(const MuTerm& t, std::vector<MuTerm>& out) {
  if (t.is_binder()) {
    out.push_back(t);
    binders(t.body(), out);
  } else if (t.kind() == TermKind::Scalar) {
    binders(t.body(), out);
  } else if (t.is_binary()) {
    binders(t.left(), out);
    binders(t.right(), out);
  }
}

}  // namespace

std::vector<std::string> check_term_properties(const MuTerm& t, const Point& point, Rng& rng, PropertyStats& stats,
                                               const PropertyOptions& options) {
  std::vector<std::string> failures;
  auto fail = [&](const std::string& what) { failures.push_back(what + " for " + render(t)); };
  ++stats.terms;

  EvalResult res;
  try {
    res = eval_term(t, point);
  } catch (const std::exception& e) {
    fail(std::string("evaluation threw: ") + e.what());
    return failures;
  }
  stats.iterations += res.iterations;
  const auto r = values_of(point);
  if (!res.cle.conditions.holds(r)) fail("conditions fail at the evaluation point");
  if (!res.value.in_unit_interval()) fail("value outside [0,1]");

  auto samples = sample_region(res.cle.conditions, r, rng, options);
  stats.distinct_samples += samples.size();
  if (samples.size() < options.samples) ++stats.degenerate_regions;
  // A region with fewer distinct points is re-sampled along the segment to the point.
  while (samples.size() < options.samples) samples.push_back(mix(samples.back(), r, open_unit_rational(rng)));
  for (const auto& s : samples) {
    for (const auto& q : s) {
      if (!q.in_unit_interval()) fail("satisfying point outside the unit box");
    }
    ++stats.sample_checks;
    if (eval_term(t, with_values(point, s)).value != res.cle.expr.evaluate(s)) {
      fail("expression disagrees with the term at a satisfying point");
    }
  }

  std::vector<MuTerm> fixed_points;
  binders(t, fixed_points);
  for (const auto& u : fixed_points) {
    Point pu;
    for (const auto& name : u.free_variables()) {
      auto it = std::find_if(point.begin(), point.end(), [&](const auto& e) { return e.first == name; });
      pu.emplace_back(name, it != point.end() ? it->second : unit_rational(rng));
    }
    const Rational v = eval_term(u, pu).value;
    const bool least = u.kind() == TermKind::Mu;
    auto body_at = [&](const Rational& x) {
      Point px = pu;
      px.emplace_back(u.name(), x);
      return eval_term(u.body(), px).value;
    };
    ++stats.residual_checks;
    if (body_at(v) != v) fail("value is not a fixed point of " + render(u));
    if (least ? v.is_zero() : v == Rational(1)) continue;
    for (std::size_t k = 0; k < options.witnesses; ++k) {
      Rational lambda = open_unit_rational(rng, 16);
      Rational w = least ? v * lambda : v + (Rational(1) - v) * lambda;
      ++stats.witness_checks;
      Rational image = body_at(w);
      if (least ? !(image > w) : !(image < w)) fail("a point past the extreme fixed point is fixed in " + render(u));
    }
  }

  std::vector<Rational> up;
  for (const auto& q : r) up.push_back(q + (Rational(1) - q) * unit_rational(rng));
  ++stats.monotone_checks;
  if (eval_term(t, with_values(point, up)).value < res.value) fail("value decreases when the point increases");

  KleeneOptions ko;
  ko.budget = options.kleene_budget;
  KleeneBounds kb = kleene_bounds(t, point, ko);
  ++stats.kleene_checks;
  if (kb.lower > res.value || kb.upper < res.value) fail("value outside the Kleene bounds");
  for (const auto& x : kb.trace) {
    if (t.kind() == TermKind::Mu && x > res.value) fail("a Kleene iterate exceeds the least fixed point");
  }
  if (kb.exact) {
    ++stats.kleene_exact;
    if (kb.lower != res.value) fail("stabilized Kleene iteration disagrees with the value");
  }
  return failures;
}

}  // namespace lmu::testing
