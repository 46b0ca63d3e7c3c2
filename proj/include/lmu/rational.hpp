#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

namespace lmu {

enum class Ordering { Less, Equal, Greater };

/// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
///
/// Thin value wrapper over GMP's mpq_class; every arithmetic result is
/// canonicalized before it is returned.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Accepts `int`, `int/int` and terminating decimals `int.digits`,
  /// each with an optional leading sign.
  static Rational parse(std::string_view text);

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  bool in_unit_interval() const { return sign() >= 0 && value_ <= 1; }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  /// Canonical text: `num/den`, or `num` when den = 1.
  std::string str() const;
  /// Decimal approximation rounded half away from zero to `digits` places.
  std::string decimal(int digits = 10) const;

  std::size_t hash() const;

 private:
  mpq_class value_;
};

Ordering compare(const Rational& a, const Rational& b);

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace lmu

template <>
struct std::hash<lmu::Rational> {
  std::size_t operator()(const lmu::Rational& q) const noexcept { return q.hash(); }
};
