#pragma once

// Multivariate Laurent polynomials over Q with named variables. Exponents may
// be negative on any variable.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mzv/rational.hpp"

namespace mzv {

class LaurentMultiPoly {
public:
  using Monomial = std::vector<int>;

  LaurentMultiPoly() = default;
  explicit LaurentMultiPoly(std::vector<std::string> names) : names_(std::move(names)) {}

  static LaurentMultiPoly constant(std::vector<std::string> names, const Rational& c) {
    LaurentMultiPoly p(std::move(names));
    p.add_term(Monomial(p.names_.size(), 0), c);
    return p;
  }

  /// name^power
  static LaurentMultiPoly variable(std::vector<std::string> names, const std::string& name, int power = 1) {
    LaurentMultiPoly p(std::move(names));
    Monomial m(p.names_.size(), 0);
    m[p.index_of(name)] = power;
    p.add_term(m, 1);
    return p;
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      throw AlgebraError("LaurentMultiPoly: unknown variable '" + name + "'");
    }
    return static_cast<int>(it - names_.begin());
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.size() != names_.size()) {
      throw AlgebraError("LaurentMultiPoly: monomial arity mismatch");
    }
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) {
        terms_.erase(it);
      }
    }
  }

  Rational coefficient_of(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Re-expresses the polynomial over a variable list containing every
  /// variable that actually occurs.
  LaurentMultiPoly with_variables(const std::vector<std::string>& names) const {
    LaurentMultiPoly out(names);
    std::vector<int> target(names_.size(), -1);
    for (std::size_t i = 0; i < names_.size(); ++i) {
      auto it = std::find(names.begin(), names.end(), names_[i]);
      if (it != names.end()) {
        target[i] = static_cast<int>(it - names.begin());
      }
    }
    for (const auto& [m, c] : terms_) {
      Monomial nm(names.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) {
          continue;
        }
        if (target[i] < 0) {
          throw AlgebraError("LaurentMultiPoly: variable '" + names_[i] + "' missing from target list");
        }
        nm[target[i]] = m[i];
      }
      out.add_term(nm, c);
    }
    return out;
  }

  LaurentMultiPoly& operator+=(const LaurentMultiPoly& o) {
    check_names(o);
    for (const auto& [m, c] : o.terms_) {
      add_term(m, c);
    }
    return *this;
  }
  LaurentMultiPoly& operator-=(const LaurentMultiPoly& o) {
    check_names(o);
    for (const auto& [m, c] : o.terms_) {
      add_term(m, -c);
    }
    return *this;
  }

  friend LaurentMultiPoly operator+(LaurentMultiPoly a, const LaurentMultiPoly& b) { return a += b; }
  friend LaurentMultiPoly operator-(LaurentMultiPoly a, const LaurentMultiPoly& b) { return a -= b; }

  friend LaurentMultiPoly operator*(const LaurentMultiPoly& a, const LaurentMultiPoly& b) {
    a.check_names(b);
    LaurentMultiPoly r(a.names_);
    Monomial m(a.names_.size());
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) {
          m[i] = ma[i] + mb[i];
        }
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  friend LaurentMultiPoly operator*(const Rational& s, const LaurentMultiPoly& a) {
    LaurentMultiPoly r(a.names_);
    for (const auto& [m, c] : a.terms_) {
      r.add_term(m, s * c);
    }
    return r;
  }

  friend bool operator==(const LaurentMultiPoly&, const LaurentMultiPoly&) = default;

  LaurentMultiPoly pow(int n) const {
    if (n < 0) {
      if (terms_.size() != 1) {
        throw AlgebraError("LaurentMultiPoly: negative power of a non-monomial");
      }
      const auto& [m, c] = *terms_.begin();
      Monomial inv(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        inv[i] = -m[i];
      }
      LaurentMultiPoly base(names_);
      base.add_term(inv, c.inverse());
      return base.pow(-n);
    }
    LaurentMultiPoly result = constant(names_, 1);
    LaurentMultiPoly base = *this;
    while (n > 0) {
      if (n & 1) {
        result = result * base;
      }
      n >>= 1;
      if (n > 0) {
        base = base * base;
      }
    }
    return result;
  }

  /// Replaces `name` by `replacement` (over the same variable list). Negative
  /// exponents of `name` require a monomial replacement.
  LaurentMultiPoly substitute_variable(const std::string& name, const LaurentMultiPoly& replacement) const {
    check_names(replacement);
    const int idx = index_of(name);
    std::map<int, LaurentMultiPoly> power_cache;
    LaurentMultiPoly out(names_);
    for (const auto& [m, c] : terms_) {
      const int e = m[idx];
      auto it = power_cache.find(e);
      if (it == power_cache.end()) {
        it = power_cache.emplace(e, replacement.pow(e)).first;
      }
      Monomial rest = m;
      rest[idx] = 0;
      LaurentMultiPoly mono(names_);
      mono.add_term(rest, c);
      out += mono * it->second;
    }
    return out;
  }

  /// Evaluates at a rational point given in variable order.
  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != names_.size()) {
      throw AlgebraError("LaurentMultiPoly: evaluation point arity mismatch");
    }
    Rational total;
    for (const auto& [m, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) {
          continue;
        }
        const Rational base = m[i] > 0 ? point[i] : point[i].inverse();
        for (int k = 0; k < std::abs(m[i]); ++k) {
          term *= base;
        }
      }
      total += term;
    }
    return total;
  }

  /// Lowest exponent of `name` across all terms (0 for the zero polynomial).
  int min_exponent(const std::string& name) const {
    const int idx = index_of(name);
    int lo = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      lo = first ? m[idx] : std::min(lo, m[idx]);
      first = false;
    }
    return lo;
  }

  std::string str() const {
    if (terms_.empty()) {
      return "0";
    }
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) {
        out += " + ";
      }
      out += "(" + c.str() + ")";
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] != 0) {
          out += "*" + names_[i];
          if (m[i] != 1) {
            out += "^" + std::to_string(m[i]);
          }
        }
      }
    }
    return out;
  }

private:
  void check_names(const LaurentMultiPoly& o) const {
    if (names_ != o.names_) {
      throw AlgebraError("LaurentMultiPoly: variable lists differ");
    }
  }

  std::vector<std::string> names_;
  std::map<Monomial, Rational> terms_;
};

} // namespace mzv
