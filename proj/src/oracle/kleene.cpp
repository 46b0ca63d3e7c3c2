#include <map>

#include "lmu/error.hpp"
#include "lmu/oracle.hpp"

namespace lmu {

namespace {

// Which side of the true value an evaluation must stay on.
enum class Side { Lower, Upper };

template <class V>
struct Approx {
  V value;
  bool exact;
};

struct Work {
  std::size_t left;
};

// Kleene iteration from the bottom (μ) or top (ν) element. A run that
// moves away from its start keeps every iterate sound (μ/Lower, ν/Upper).
// The other combination only yields a sound bound when it stabilizes,
// since then the limit is a pre- or post-fixed point.
template <class V, class Body>
Approx<V> iterate(bool least, Side side, V bottom, V top, Body&& body, std::size_t budget, Work& work,
                  std::vector<V>* trace) {
  const bool monotone_side = least == (side == Side::Lower);
  V x = least ? bottom : top;
  bool all_exact = true;
  if (trace) trace->push_back(x);
  for (std::size_t k = 1; k <= budget && work.left > 0; ++k) {
    --work.left;
    Approx<V> y = body(x);
    if (y.value == x) {
      if (trace) trace->push_back(x);
      // On the far side an inexact step may have overshot the extreme fixed point.
      return {std::move(x), y.exact && (monotone_side || all_exact)};
    }
    all_exact = all_exact && y.exact;
    if (k == budget) break;
    x = std::move(y.value);
    if (trace) trace->push_back(x);
  }
  if (monotone_side) return {std::move(x), false};
  return {side == Side::Lower ? std::move(bottom) : std::move(top), false};
}

class TermKleene {
 public:
  TermKleene(const KleeneOptions& options, Side side) : options_(options), side_(side), work_{options.work_cap} {}

  void bind(const std::string& name, const Rational& value) { env_[name].push_back(value); }

  Approx<Rational> run(const MuTerm& t, std::vector<Rational>* trace = nullptr) {
    switch (t.kind()) {
      case TermKind::Var: {
        auto it = env_.find(t.name());
        if (it == env_.end() || it->second.empty()) throw Error("point does not assign free variable '" + t.name() + "'");
        return {it->second.back(), true};
      }
      case TermKind::Scalar: {
        auto a = run(t.body());
        return {t.coefficient() * a.value, a.exact};
      }
      case TermKind::Join:
      case TermKind::Meet:
      case TermKind::OPlus:
      case TermKind::OTimes: {
        auto a = run(t.left());
        auto b = run(t.right());
        return {combine(t.kind(), a.value, b.value), a.exact && b.exact};
      }
      case TermKind::Mu:
      case TermKind::Nu: {
        auto body = [&](const Rational& x) {
          env_[t.name()].push_back(x);
          auto y = run(t.body());
          env_[t.name()].pop_back();
          return y;
        };
        return iterate<Rational>(t.kind() == TermKind::Mu, side_, Rational::zero(), Rational::one(), body,
                                 options_.budget, work_, trace);
      }
    }
    throw InternalError("kleene: unknown term kind");
  }

  static Rational combine(TermKind kind, const Rational& a, const Rational& b) {
    switch (kind) {
      case TermKind::Join:
        return max(a, b);
      case TermKind::Meet:
        return min(a, b);
      case TermKind::OPlus:
        return min(Rational::one(), a + b);
      default:
        return max(Rational::zero(), a + b - Rational::one());
    }
  }

 private:
  const KleeneOptions& options_;
  Side side_;
  Work work_;
  std::map<std::string, std::vector<Rational>> env_;
};

using Vec = std::vector<Rational>;

class FormulaKleene {
 public:
  FormulaKleene(const Model& model, const KleeneOptions& options, Side side)
      : model_(model), options_(options), side_(side), work_{options.work_cap} {}

  Approx<Vec> run(const Formula& f) {
    const auto& system = model_.system;
    const std::size_t n = system.size();
    switch (f.kind()) {
      case FormulaKind::Var: {
        auto it = env_.find(f.name());
        if (it == env_.end() || it->second.empty()) throw Error("free variable '" + f.name() + "'");
        return {it->second.back(), true};
      }
      case FormulaKind::Prop:
      case FormulaKind::CoProp: {
        Vec out(n);
        for (StateIndex s = 0; s < n; ++s) {
          out[s] = f.kind() == FormulaKind::Prop ? model_.interpretation.value(f.name(), s)
                                                 : model_.interpretation.complement(f.name(), s);
        }
        return {std::move(out), true};
      }
      case FormulaKind::Scalar: {
        auto a = run(f.body());
        for (auto& v : a.value) v *= f.coefficient();
        return a;
      }
      case FormulaKind::Join:
      case FormulaKind::Meet:
      case FormulaKind::OPlus:
      case FormulaKind::OTimes: {
        static constexpr TermKind kinds[] = {TermKind::Join, TermKind::Meet, TermKind::OPlus, TermKind::OTimes};
        const TermKind kind = kinds[static_cast<int>(f.kind()) - static_cast<int>(FormulaKind::Join)];
        auto a = run(f.left());
        auto b = run(f.right());
        for (StateIndex s = 0; s < n; ++s) a.value[s] = TermKleene::combine(kind, a.value[s], b.value[s]);
        return {std::move(a.value), a.exact && b.exact};
      }
      case FormulaKind::Diamond:
      case FormulaKind::Box: {
        const bool diamond = f.kind() == FormulaKind::Diamond;
        auto a = run(f.body());
        Vec out(n, diamond ? Rational::zero() : Rational::one());
        for (StateIndex s = 0; s < n; ++s) {
          bool first = true;
          for (const auto& d : system.distributions(s)) {
            Rational e;
            for (const auto& [t, w] : d.weights()) e += w * a.value[t];
            if (first || (diamond ? e > out[s] : e < out[s])) out[s] = e;
            first = false;
          }
        }
        return {std::move(out), a.exact};
      }
      case FormulaKind::Mu:
      case FormulaKind::Nu: {
        auto body = [&](const Vec& x) {
          env_[f.name()].push_back(x);
          auto y = run(f.body());
          env_[f.name()].pop_back();
          return y;
        };
        return iterate<Vec>(f.kind() == FormulaKind::Mu, side_, Vec(n, Rational::zero()), Vec(n, Rational::one()),
                            body, options_.budget, work_, nullptr);
      }
    }
    throw InternalError("kleene: unknown formula kind");
  }

 private:
  const Model& model_;
  const KleeneOptions& options_;
  Side side_;
  Work work_;
  std::map<std::string, std::vector<Vec>> env_;
};

}  // namespace

KleeneBounds kleene_bounds(const MuTerm& t, const std::vector<std::pair<std::string, Rational>>& point,
                           const KleeneOptions& options) {
  if (options.budget == 0) throw Error("Kleene budget must be at least 1");
  TermKleene low(options, Side::Lower), high(options, Side::Upper);
  for (const auto& [name, value] : point) {
    low.bind(name, value);
    high.bind(name, value);
  }
  KleeneBounds out;
  auto a = low.run(t, t.is_binder() ? &out.trace : nullptr);
  auto b = high.run(t);
  out.lower = a.value;
  out.upper = b.value;
  if (a.exact) out.upper = a.value;
  if (b.exact) out.lower = b.value;
  out.exact = a.exact || b.exact;
  return out;
}

StateBounds kleene_bounds(const Formula& f, const Model& model, const KleeneOptions& options) {
  if (options.budget == 0) throw Error("Kleene budget must be at least 1");
  auto a = FormulaKleene(model, options, Side::Lower).run(f);
  auto b = FormulaKleene(model, options, Side::Upper).run(f);
  StateBounds out{a.value, b.value, a.exact || b.exact};
  if (a.exact) out.upper = a.value;
  if (b.exact) out.lower = b.value;
  return out;
}

std::vector<Rational> direct_eval(const Formula& f, const Model& model) {
  if (has_fixed_points(f)) throw Error("direct evaluation needs a fixed-point-free formula");
  return FormulaKleene(model, {}, Side::Lower).run(f).value;
}

}  // namespace lmu
