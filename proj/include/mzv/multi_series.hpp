#pragma once

// r-variable power series truncated per variable: a coefficient of
// t_1^{e_1}...t_r^{e_r} is represented iff every e_j <= K.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mzv/rational.hpp"
#include "mzv/uni_series.hpp"

namespace mzv {

using Exponents = std::vector<int>;

class TruncatedMultiSeries {
public:
  TruncatedMultiSeries(int variables, int cap) : variables_(variables), cap_(cap) {
    if (variables < 1 || cap < 0) {
      throw AlgebraError("TruncatedMultiSeries: need r >= 1 and K >= 0");
    }
  }

  static TruncatedMultiSeries constant(int variables, int cap, const Rational& c) {
    TruncatedMultiSeries s(variables, cap);
    s.add_term(Exponents(variables, 0), c);
    return s;
  }

  /// t_j (0-based j).
  static TruncatedMultiSeries variable(int variables, int cap, int j) {
    TruncatedMultiSeries s(variables, cap);
    Exponents e(variables, 0);
    e.at(j) = 1;
    s.add_term(e, 1);
    return s;
  }

  int variables() const { return variables_; }
  int cap() const { return cap_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  bool in_cap(const Exponents& e) const {
    if (static_cast<int>(e.size()) != variables_) {
      return false;
    }
    for (int x : e) {
      if (x < 0 || x > cap_) {
        return false;
      }
    }
    return true;
  }

  Rational coefficient(const Exponents& e) const {
    if (!in_cap(e)) {
      throw AlgebraError("TruncatedMultiSeries: exponent outside the truncation cap");
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c * t^e; silently drops e outside the cap (that is the truncation).
  void add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero() || !in_cap(e)) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) {
        terms_.erase(it);
      }
    }
  }

  friend TruncatedMultiSeries operator+(const TruncatedMultiSeries& a, const TruncatedMultiSeries& b) {
    check_shape(a, b);
    TruncatedMultiSeries r = a;
    for (const auto& [e, c] : b.terms_) {
      r.add_term(e, c);
    }
    return r;
  }

  friend TruncatedMultiSeries operator-(const TruncatedMultiSeries& a, const TruncatedMultiSeries& b) {
    check_shape(a, b);
    TruncatedMultiSeries r = a;
    for (const auto& [e, c] : b.terms_) {
      r.add_term(e, -c);
    }
    return r;
  }

  friend TruncatedMultiSeries operator*(const TruncatedMultiSeries& a, const TruncatedMultiSeries& b) {
    check_shape(a, b);
    TruncatedMultiSeries r(a.variables_, a.cap_);
    Exponents e(a.variables_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        bool inside = true;
        for (int j = 0; j < a.variables_; ++j) {
          e[j] = ea[j] + eb[j];
          if (e[j] > a.cap_) {
            inside = false;
            break;
          }
        }
        if (inside) {
          r.add_term(e, ca * cb);
        }
      }
    }
    return r;
  }

  friend TruncatedMultiSeries operator*(const Rational& s, const TruncatedMultiSeries& a) {
    TruncatedMultiSeries r(a.variables_, a.cap_);
    for (const auto& [e, c] : a.terms_) {
      r.add_term(e, s * c);
    }
    return r;
  }

  friend bool operator==(const TruncatedMultiSeries&, const TruncatedMultiSeries&) = default;

  /// Same series with a smaller per-variable cap.
  TruncatedMultiSeries truncated(int cap) const {
    if (cap > cap_) {
      throw AlgebraError("TruncatedMultiSeries: cannot raise cap");
    }
    TruncatedMultiSeries r(variables_, cap);
    for (const auto& [e, c] : terms_) {
      r.add_term(e, c);
    }
    return r;
  }

private:
  static void check_shape(const TruncatedMultiSeries& a, const TruncatedMultiSeries& b) {
    if (a.variables_ != b.variables_ || a.cap_ != b.cap_) {
      throw AlgebraError("shape mismatch");
    }
  }

  int variables_;
  int cap_;
  std::map<Exponents, Rational> terms_;
};

/// X(-t_1, ..., -t_r): coefficient at e picks up (-1)^{|e|}.
inline TruncatedMultiSeries negate_variables(const TruncatedMultiSeries& x) {
  TruncatedMultiSeries r(x.variables(), x.cap());
  for (const auto& [e, c] : x.terms()) {
    long total = 0;
    for (int v : e) {
      total += v;
    }
    r.add_term(e, sign_power(total) * c);
  }
  return r;
}

/// s(w_1 t_1 + ... + w_r t_r) truncated per variable at K. Every monomial in
/// the cap has total degree <= rK, so s must be known through rK.
inline TruncatedMultiSeries substitute_linear_form(const UniSeries& s, std::span<const int> weights, int cap) {
  const int r = static_cast<int>(weights.size());
  if (s.order() < r * cap) {
    throw AlgebraError("insufficient univariate order");
  }
  TruncatedMultiSeries form(r, cap);
  for (int j = 0; j < r; ++j) {
    Exponents e(r, 0);
    e[j] = 1;
    form.add_term(e, weights[j]);
  }
  TruncatedMultiSeries power = TruncatedMultiSeries::constant(r, cap, 1);
  TruncatedMultiSeries result(r, cap);
  const int top = r * cap;
  for (int n = 0; n <= top; ++n) {
    if (n > 0) {
      power = power * form;
      if (power.terms().empty()) {
        break;
      }
    }
    const Rational c = s.coefficient(n);
    if (!c.is_zero()) {
      result = result + c * power;
    }
  }
  return result;
}

/// X(t) with t_a = sum_j map[a][j] u_j, truncated per u-variable at K. Needs X
/// to hold every t-monomial of total degree <= (number of u's) * K.
inline TruncatedMultiSeries substitute_linear_map(const TruncatedMultiSeries& x,
                                                  const std::vector<std::vector<int>>& map, int cap) {
  if (static_cast<int>(map.size()) != x.variables() || map.empty()) {
    throw AlgebraError("shape mismatch");
  }
  const int r_out = static_cast<int>(map.front().size());
  if (x.cap() < r_out * cap) {
    throw AlgebraError("insufficient univariate order");
  }
  const int top = r_out * cap;
  // powers[a][n] = (sum_j map[a][j] u_j)^n
  std::vector<std::vector<TruncatedMultiSeries>> powers;
  for (const auto& row : map) {
    if (static_cast<int>(row.size()) != r_out) {
      throw AlgebraError("shape mismatch");
    }
    TruncatedMultiSeries form(r_out, cap);
    for (int j = 0; j < r_out; ++j) {
      Exponents e(r_out, 0);
      e[j] = 1;
      form.add_term(e, row[j]);
    }
    std::vector<TruncatedMultiSeries> p{TruncatedMultiSeries::constant(r_out, cap, 1)};
    for (int n = 1; n <= std::min(top, x.cap()); ++n) {
      p.push_back(p.back() * form);
    }
    powers.push_back(std::move(p));
  }
  TruncatedMultiSeries result(r_out, cap);
  for (const auto& [e, c] : x.terms()) {
    long total = 0;
    for (int v : e) {
      total += v;
    }
    if (total > top) {
      continue;
    }
    TruncatedMultiSeries term = TruncatedMultiSeries::constant(r_out, cap, c);
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (e[a] > 0) {
        term = term * powers[a][e[a]];
      }
    }
    result = result + term;
  }
  return result;
}

} // namespace mzv
