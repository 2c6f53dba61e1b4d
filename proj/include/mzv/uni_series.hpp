#pragma once

// Univariate truncated power series and finite-pole Laurent series over Q.

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "mzv/rational.hpp"

namespace mzv {

/// Power series sum c_n u^n known exactly for 0 <= n <= order(). Coefficients
/// above the order are unrepresented, not zero.
class UniSeries {
public:
  explicit UniSeries(int order = 0) : order_(order) { check_order(); }

  UniSeries(std::map<int, Rational> terms, int order) : order_(order) {
    check_order();
    for (auto& [deg, c] : terms) {
      if (deg < 0) {
        throw AlgebraError("UniSeries: negative degree");
      }
      if (deg <= order_ && !c.is_zero()) {
        terms_.emplace(deg, std::move(c));
      }
    }
  }

  static UniSeries constant(const Rational& c, int order) { return UniSeries({{0, c}}, order); }
  static UniSeries monomial(int degree, const Rational& c, int order) { return UniSeries({{degree, c}}, order); }

  int order() const { return order_; }
  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Lowest degree with a nonzero coefficient; order() + 1 for the zero series.
  int valuation() const { return terms_.empty() ? order_ + 1 : terms_.begin()->first; }

  Rational coefficient(int n) const {
    if (n < 0) {
      return 0;
    }
    if (n > order_) {
      throw AlgebraError("UniSeries: coefficient " + std::to_string(n) + " beyond order " +
                         std::to_string(order_));
    }
    auto it = terms_.find(n);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  UniSeries truncated(int order) const {
    if (order > order_) {
      throw AlgebraError("UniSeries: cannot raise truncation order");
    }
    return UniSeries(std::map<int, Rational>(terms_.begin(), terms_.upper_bound(order)), order);
  }

  /// Divides by u^v; every stored degree must be >= v.
  UniSeries shifted_down(int v) const {
    if (valuation() < v) {
      throw AlgebraError("UniSeries: shift below valuation");
    }
    std::map<int, Rational> out;
    for (const auto& [deg, c] : terms_) {
      out.emplace(deg - v, c);
    }
    return UniSeries(std::move(out), order_ - v);
  }

  UniSeries operator-() const {
    UniSeries r(order_);
    for (const auto& [deg, c] : terms_) {
      r.terms_.emplace(deg, -c);
    }
    return r;
  }

  friend UniSeries operator+(const UniSeries& a, const UniSeries& b) { return combine(a, b, 1); }
  friend UniSeries operator-(const UniSeries& a, const UniSeries& b) { return combine(a, b, -1); }

  friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
    const int order = std::min(a.order_, b.order_);
    std::map<int, Rational> out;
    for (const auto& [da, ca] : a.terms_) {
      if (da > order) {
        break;
      }
      for (const auto& [db, cb] : b.terms_) {
        if (da + db > order) {
          break;
        }
        out[da + db] += ca * cb;
      }
    }
    return UniSeries(std::move(out), order);
  }

  friend UniSeries operator*(const Rational& s, const UniSeries& a) {
    std::map<int, Rational> out;
    for (const auto& [deg, c] : a.terms_) {
      out.emplace(deg, s * c);
    }
    return UniSeries(std::move(out), a.order_);
  }

  friend bool operator==(const UniSeries&, const UniSeries&) = default;

private:
  void check_order() const {
    if (order_ < 0) {
      throw AlgebraError("UniSeries: negative truncation order");
    }
  }

  static UniSeries combine(const UniSeries& a, const UniSeries& b, int sign) {
    const int order = std::min(a.order_, b.order_);
    std::map<int, Rational> out(a.terms_.begin(), a.terms_.upper_bound(order));
    for (auto it = b.terms_.begin(); it != b.terms_.upper_bound(order); ++it) {
      if (sign > 0) {
        out[it->first] += it->second;
      } else {
        out[it->first] -= it->second;
      }
    }
    return UniSeries(std::move(out), order);
  }

  std::map<int, Rational> terms_;
  int order_;
};

/// e^{c u} through degree N.
inline UniSeries exp_series(const Rational& c, int order) {
  std::map<int, Rational> out;
  Rational term = 1;
  for (int m = 0; m <= order; ++m) {
    out.emplace(m, term);
    term = term * c / Rational(m + 1);
  }
  return UniSeries(std::move(out), order);
}

/// sum_{m=1}^{N} u^m / m!.
inline UniSeries uni_exp_minus_one(int order) {
  if (order < 1) {
    throw AlgebraError("uni_exp_minus_one: order must be >= 1");
  }
  return exp_series(1, order) - UniSeries::constant(1, order);
}

/// Exact quotient num/den when den may vanish at the origin. Both are first
/// divided by u^{valuation(den)}; the quotient is known through
/// min(order(num), order(den)) - valuation(den).
inline UniSeries divide_with_valuation(const UniSeries& num, const UniSeries& den) {
  if (den.is_zero()) {
    throw AlgebraError("divide_with_valuation: zero denominator");
  }
  const int vd = den.valuation();
  if (num.valuation() < vd) {
    throw AlgebraError("valuation mismatch");
  }
  const int order = std::min(num.order(), den.order()) - vd;
  if (order < 0) {
    throw AlgebraError("divide_with_valuation: insufficient order");
  }
  const UniSeries a = num.truncated(order + vd).shifted_down(vd);
  const UniSeries b = den.truncated(order + vd).shifted_down(vd);
  const Rational lead_inv = b.coefficient(0).inverse();

  std::map<int, Rational> q;
  for (int n = 0; n <= order; ++n) {
    Rational acc = a.coefficient(n);
    for (const auto& [deg, c] : b.terms()) {
      if (deg == 0) {
        continue;
      }
      if (deg > n) {
        break;
      }
      auto it = q.find(n - deg);
      if (it != q.end()) {
        acc -= c * it->second;
      }
    }
    if (!acc.is_zero()) {
      q.emplace(n, acc * lead_inv);
    }
  }
  return UniSeries(std::move(q), order);
}

/// Laurent series sum_{n >= v} c_n z^n known exactly through degree precision().
class LaurentUniSeries {
public:
  explicit LaurentUniSeries(int precision = 0) : precision_(precision) {}

  LaurentUniSeries(std::map<int, Rational> terms, int precision) : precision_(precision) {
    for (auto& [deg, c] : terms) {
      if (deg <= precision_ && !c.is_zero()) {
        terms_.emplace(deg, std::move(c));
      }
    }
  }

  /// z^shift * s.
  static LaurentUniSeries from_series(const UniSeries& s, int shift = 0) {
    std::map<int, Rational> out;
    for (const auto& [deg, c] : s.terms()) {
      out.emplace(deg + shift, c);
    }
    return LaurentUniSeries(std::move(out), s.order() + shift);
  }

  static LaurentUniSeries constant(const Rational& c, int precision) {
    return LaurentUniSeries({{0, c}}, precision);
  }

  int precision() const { return precision_; }
  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int valuation() const { return terms_.empty() ? precision_ + 1 : terms_.begin()->first; }

  Rational coefficient(int n) const {
    if (n > precision_) {
      throw AlgebraError("LaurentUniSeries: coefficient " + std::to_string(n) + " beyond precision " +
                         std::to_string(precision_));
    }
    auto it = terms_.find(n);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LaurentUniSeries truncated(int precision) const {
    if (precision > precision_) {
      throw AlgebraError("LaurentUniSeries: cannot raise precision");
    }
    return LaurentUniSeries(std::map<int, Rational>(terms_.begin(), terms_.upper_bound(precision)), precision);
  }

  /// Termwise d/dz; the top known degree drops by one.
  LaurentUniSeries derivative() const {
    std::map<int, Rational> out;
    for (const auto& [deg, c] : terms_) {
      if (deg != 0) {
        out.emplace(deg - 1, Rational(deg) * c);
      }
    }
    return LaurentUniSeries(std::move(out), precision_ - 1);
  }

  LaurentUniSeries operator-() const { return Rational(-1) * *this; }

  friend LaurentUniSeries operator+(const LaurentUniSeries& a, const LaurentUniSeries& b) {
    return combine(a, b, 1);
  }
  friend LaurentUniSeries operator-(const LaurentUniSeries& a, const LaurentUniSeries& b) {
    return combine(a, b, -1);
  }

  friend LaurentUniSeries operator*(const LaurentUniSeries& a, const LaurentUniSeries& b) {
    const int precision = std::min(a.precision_ + b.valuation(), b.precision_ + a.valuation());
    std::map<int, Rational> out;
    for (const auto& [da, ca] : a.terms_) {
      for (const auto& [db, cb] : b.terms_) {
        if (da + db > precision) {
          break;
        }
        out[da + db] += ca * cb;
      }
    }
    return LaurentUniSeries(std::move(out), precision);
  }

  friend LaurentUniSeries operator*(const Rational& s, const LaurentUniSeries& a) {
    std::map<int, Rational> out;
    for (const auto& [deg, c] : a.terms_) {
      out.emplace(deg, s * c);
    }
    return LaurentUniSeries(std::move(out), a.precision_);
  }

  friend bool operator==(const LaurentUniSeries&, const LaurentUniSeries&) = default;

  std::string str() const {
    if (terms_.empty()) {
      return "O(z^" + std::to_string(precision_ + 1) + ")";
    }
    std::string out;
    for (const auto& [deg, c] : terms_) {
      if (!out.empty()) {
        out += " + ";
      }
      out += "(" + c.str() + ")";
      if (deg != 0) {
        out += "*z^" + std::to_string(deg);
      }
    }
    return out + " + O(z^" + std::to_string(precision_ + 1) + ")";
  }

private:
  static LaurentUniSeries combine(const LaurentUniSeries& a, const LaurentUniSeries& b, int sign) {
    const int precision = std::min(a.precision_, b.precision_);
    std::map<int, Rational> out(a.terms_.begin(), a.terms_.upper_bound(precision));
    for (auto it = b.terms_.begin(); it != b.terms_.upper_bound(precision); ++it) {
      if (sign > 0) {
        out[it->first] += it->second;
      } else {
        out[it->first] -= it->second;
      }
    }
    return LaurentUniSeries(std::move(out), precision);
  }

  std::map<int, Rational> terms_;
  int precision_;
};

/// True iff a and b agree in every degree <= n; both must be known there.
inline bool equal_through(const LaurentUniSeries& a, const LaurentUniSeries& b, int n) {
  if (a.precision() < n || b.precision() < n) {
    throw AlgebraError("equal_through: operand not known through requested degree");
  }
  return a.truncated(n) == b.truncated(n);
}

/// x(z) = e^z / (1 - e^z), valuation -1, exact through degree N.
inline LaurentUniSeries x_of_z(int precision) {
  if (precision < 0) {
    throw AlgebraError("x_of_z: negative order");
  }
  const int order = precision + 2;
  const UniSeries z = UniSeries::monomial(1, 1, order);
  const UniSeries num = z * exp_series(1, order);
  const UniSeries den = UniSeries::constant(1, order) - exp_series(1, order);
  const UniSeries zx = divide_with_valuation(num, den);
  return LaurentUniSeries::from_series(zx, -1).truncated(precision);
}

} // namespace mzv
