#pragma once

// Exact scalar arithmetic: arbitrary-precision integers and reduced fractions,
// plus the small combinatorial functions every other module leans on.

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mzv {

/// Raised for contract violations inside the algebra (precision, shape, domain).
class AlgebraError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Integer = mpz_class;

/// Reduced fraction p/q with q > 0. Every constructor and operation leaves the
/// value canonical, so equality is structural.
class Rational {
public:
  Rational() = default;

  template <std::signed_integral T>
  Rational(T n) : value_(static_cast<long>(n)) {}

  template <std::unsigned_integral T>
  Rational(T n) : value_(static_cast<unsigned long>(n)) {}

  Rational(const Integer& n) : value_(n) {}

  Rational(const Integer& num, const Integer& den) {
    if (den == 0) {
      throw AlgebraError("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }

  /// Parses "p/q" or "p" (optional leading '-').
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return Rational(Integer(std::string(text)));
      }
      return Rational(Integer(std::string(text.substr(0, slash))),
                      Integer(std::string(text.substr(slash + 1))));
    } catch (const std::invalid_argument&) {
      throw AlgebraError("malformed rational '" + std::string(text) + "'");
    }
  }

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// "p/q", or "p" when q = 1.
  std::string str() const {
    if (is_integer()) {
      return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  Rational inverse() const {
    if (is_zero()) {
      throw AlgebraError("inverse of zero");
    }
    Rational r;
    r.value_ = 1 / value_;
    return r;
  }

  Rational operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) {
      throw AlgebraError("division by zero");
    }
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  const mpq_class& raw() const { return value_; }

private:
  mpq_class value_;
};

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// C(n, k); zero outside 0 <= k <= n.
inline Integer binomial(long n, long k) {
  if (n < 0) {
    throw AlgebraError("binomial: negative n");
  }
  if (k < 0 || k > n) {
    return 0;
  }
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Rising factorial (s)_k = s(s+1)...(s+k-1), with (s)_0 = 1.
inline Rational pochhammer(const Rational& s, long k) {
  if (k < 0) {
    throw AlgebraError("pochhammer: negative k");
  }
  Rational r = 1;
  for (long i = 0; i < k; ++i) {
    r *= s + Rational(i);
  }
  return r;
}

/// (sum parts)! / prod(part!).
inline Integer multinomial(std::span<const int> parts) {
  Integer r = 1;
  long total = 0;
  for (int p : parts) {
    if (p < 0) {
      throw AlgebraError("multinomial: negative part");
    }
    total += p;
    r *= binomial(total, p);
  }
  return r;
}

inline Rational sign_power(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

} // namespace mzv
