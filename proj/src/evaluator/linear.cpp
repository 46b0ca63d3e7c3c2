#include <algorithm>

#include "lmu/error.hpp"
#include "lmu/evaluator.hpp"

namespace lmu {

LinExpr LinExpr::variable(Level v) {
  LinExpr e;
  e.terms_.push_back({v, Rational::one()});
  return e;
}

Rational LinExpr::coefficient(Level v) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), v, [](const Term& t, Level l) { return t.first < l; });
  return it != terms_.end() && it->first == v ? it->second : Rational::zero();
}

std::optional<Level> LinExpr::top_level() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.back().first;
}

namespace {

// Merges b·sign into a.
void accumulate(std::vector<LinExpr::Term>& a, const std::vector<LinExpr::Term>& b, bool subtract) {
  std::vector<LinExpr::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == a.end() || j->first < i->first) {
      out.push_back({j->first, subtract ? -j->second : j->second});
      ++j;
    } else {
      Rational c = subtract ? i->second - j->second : i->second + j->second;
      if (!c.is_zero()) out.push_back({i->first, std::move(c)});
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

}  // namespace

LinExpr& LinExpr::operator+=(const LinExpr& rhs) {
  accumulate(terms_, rhs.terms_, false);
  constant_ += rhs.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& rhs) {
  accumulate(terms_, rhs.terms_, true);
  constant_ -= rhs.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(const Rational& q) {
  if (q.is_zero()) {
    terms_.clear();
    constant_ = Rational::zero();
    return *this;
  }
  for (auto& t : terms_) t.second *= q;
  constant_ *= q;
  return *this;
}

LinExpr LinExpr::operator-() const { return Rational(-1) * *this; }

Rational LinExpr::evaluate(std::span<const Rational> point) const {
  Rational sum = constant_;
  for (const auto& [v, c] : terms_) {
    if (v >= point.size()) throw Error("point does not cover variable level " + std::to_string(v));
    sum += c * point[v];
  }
  return sum;
}

LinExpr LinExpr::without(Level v) const {
  LinExpr out = *this;
  std::erase_if(out.terms_, [v](const Term& t) { return t.first == v; });
  return out;
}

LinExpr LinExpr::substitute(Level v, const LinExpr& f) const {
  Rational c = coefficient(v);
  if (c.is_zero()) return *this;
  return without(v) + c * f;
}

std::string LinExpr::str(std::span<const std::string> names) const {
  std::string out;
  auto piece = [&](const Rational& c, const std::string* name) {
    Rational magnitude = c.sign() < 0 ? -c : c;
    if (out.empty()) {
      if (c.sign() < 0) out += '-';
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (!name) {
      out += magnitude.str();
    } else {
      if (magnitude != Rational::one()) out += magnitude.str() + "*";
      out += *name;
    }
  };
  for (const auto& [v, c] : terms_) {
    std::string fallback = "$" + std::to_string(v);
    piece(c, v < names.size() ? &names[v] : &fallback);
  }
  if (!constant_.is_zero() || out.empty()) {
    if (out.empty() && constant_.is_zero()) return "0";
    piece(constant_, nullptr);
  }
  return out;
}

std::strong_ordering operator<=>(const LinExpr& a, const LinExpr& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (auto c = a.terms_[k].first <=> b.terms_[k].first; c != 0) return c;
    if (auto c = a.terms_[k].second <=> b.terms_[k].second; c != 0) return c;
  }
  if (auto c = a.terms_.size() <=> b.terms_.size(); c != 0) return c;
  return a.constant_ <=> b.constant_;
}

// ---------------------------------------------------------------------------

Inequality::Inequality(LinExpr expr, Relation relation) : expr_(std::move(expr)), relation_(relation) {
  mpz_class lcm = 1;
  auto add_den = [&](const Rational& q) { mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.denominator().get_mpz_t()); };
  for (const auto& t : expr_.terms()) add_den(t.second);
  add_den(expr_.constant());
  mpz_class gcd = 0;
  auto add_num = [&](const Rational& q) {
    mpz_class n = q.numerator() * (lcm / q.denominator());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), n.get_mpz_t());
  };
  for (const auto& t : expr_.terms()) add_num(t.second);
  add_num(expr_.constant());
  if (gcd == 0) return;
  Rational scale{mpq_class(lcm, gcd)};
  if (scale != Rational::one()) expr_ *= scale;
}

bool Inequality::holds(std::span<const Rational> point) const {
  int s = expr_.evaluate(point).sign();
  return relation_ == Relation::Strict ? s > 0 : s >= 0;
}

Inequality Inequality::negated() const {
  return {-expr_, relation_ == Relation::Strict ? Relation::NonStrict : Relation::Strict};
}

std::string Inequality::str(std::span<const std::string> names) const {
  return expr_.str(names) + (relation_ == Relation::Strict ? " > 0" : " >= 0");
}

std::strong_ordering operator<=>(const Inequality& a, const Inequality& b) {
  if (auto c = a.expr_ <=> b.expr_; c != 0) return c;
  return a.relation_ <=> b.relation_;
}

// ---------------------------------------------------------------------------

namespace {

bool ground_true(const Inequality& c) {
  int s = c.expr().constant().sign();
  return c.relation() == Relation::Strict ? s > 0 : s >= 0;
}

void insert_sorted(std::vector<Inequality>& items, const Inequality& c) {
  auto it = std::lower_bound(items.begin(), items.end(), c);
  if (it == items.end() || *it != c) items.insert(it, c);
}

}  // namespace

void ConditionSet::insert(const Inequality& c) {
  if (c.is_ground()) {
    if (ground_true(c)) return;
    throw InternalError("condition set received false ground inequality " + c.str({}));
  }
  insert_sorted(items_, c);
}

void ConditionSet::insert(const ConditionSet& other) {
  if (items_.empty()) {
    for (const auto& c : other.items_) {
      if (c.is_ground() && !ground_true(c)) throw InternalError("condition set received false ground inequality");
    }
    items_ = other.items_;
    return;
  }
  std::vector<Inequality> merged;
  merged.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(), std::back_inserter(merged));
  for (const auto& c : merged) {
    if (c.is_ground() && !ground_true(c)) throw InternalError("condition set received false ground inequality");
  }
  items_ = std::move(merged);
}

ConditionSet ConditionSet::substitute(Level v, const LinExpr& f) const {
  // False ground instances are kept so the caller can detect them.
  ConditionSet out;
  for (const auto& c : items_) {
    if (c.expr().coefficient(v).is_zero()) {
      out.items_.push_back(c);
      continue;
    }
    Inequality s = c.substitute(v, f);
    if (s.is_ground() && ground_true(s)) continue;
    out.items_.push_back(std::move(s));
  }
  std::sort(out.items_.begin(), out.items_.end());
  out.items_.erase(std::unique(out.items_.begin(), out.items_.end()), out.items_.end());
  return out;
}

bool ConditionSet::holds(std::span<const Rational> point) const { return !first_violated(point); }

std::optional<Inequality> ConditionSet::first_violated(std::span<const Rational> point) const {
  for (const auto& c : items_) {
    if (!c.holds(point)) return c;
  }
  return std::nullopt;
}

std::string ConditionedLinExpr::str(std::span<const std::string> names) const {
  std::string out = "{";
  for (std::size_t k = 0; k < conditions.size(); ++k) {
    out += k ? ", " : " ";
    out += conditions.items()[k].str(names);
  }
  out += conditions.empty() ? "} |- " : " } |- ";
  return out + expr.str(names);
}

VariableBounds normalize_on(const ConditionSet& conditions, Level v) {
  VariableBounds b;
  for (const auto& c : conditions.items()) {
    Rational k = c.expr().coefficient(v);
    if (k.is_zero()) {
      b.rest.insert(c);
      continue;
    }
    // k·x + rest ▷ 0  ⇔  x ▷ -rest/k (k > 0)  or  x ◁ rest/|k| (k < 0)
    LinExpr rest = c.expr().without(v);
    const bool strict = c.relation() == Relation::Strict;
    if (k.sign() > 0) {
      LinExpr a = (Rational(-1) / k) * rest;
      (strict ? b.lower_strict : b.lower_nonstrict).push_back(std::move(a));
    } else {
      LinExpr u = (Rational(-1) / k) * rest;
      (strict ? b.upper_strict : b.upper_nonstrict).push_back(std::move(u));
    }
  }
  return b;
}

}  // namespace lmu
