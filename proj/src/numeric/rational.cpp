#include "lmu/rational.hpp"

#include <cctype>

#include "lmu/error.hpp"

namespace lmu {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void malformed(std::string_view text) {
  throw Error("malformed rational '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpq_class value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) malformed(text);
    mpz_class d{std::string(den)};
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) malformed(text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = mpq_class(mpz_class(std::string(whole)) * scale + mpz_class(std::string(frac)), scale);
  } else {
    if (!all_digits(body)) malformed(text);
    value = mpq_class(mpz_class(std::string(body)));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(std::move(value));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Ordering compare(const Rational& a, const Rational& b) {
  auto c = a <=> b;
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class num = abs(value_.get_num()) * scale * 2 + value_.get_den();
  mpz_class den = value_.get_den() * 2;
  mpz_class scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string digits_text = scaled.get_str();
  if (digits_text.size() <= static_cast<std::size_t>(digits)) {
    digits_text.insert(0, static_cast<std::size_t>(digits) + 1 - digits_text.size(), '0');
  }
  std::string out;
  if (sign() < 0 && scaled != 0) out += '-';
  out += digits_text.substr(0, digits_text.size() - static_cast<std::size_t>(digits));
  if (digits > 0) {
    out += '.';
    out += digits_text.substr(digits_text.size() - static_cast<std::size_t>(digits));
  }
  return out;
}

std::size_t Rational::hash() const {
  auto limbs = [](const mpz_class& z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    for (std::size_t i = 0; i < mpz_size(z.get_mpz_t()); ++i) {
      auto limb = static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
      h ^= limb + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  };
  std::size_t h = limbs(value_.get_num());
  return h ^ (limbs(value_.get_den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace lmu
