#pragma once

// Generating functions of desingularized values (FKMT) and renormalized
// values (EMS) at non-positive integers, and the value extraction from them.
//
// Both generating functions use the exponential convention
//   Z(t_1..t_r) = sum_k prod_i (-t_i)^{k_i}/k_i! * value(-k_1, ..., -k_r)
// and both factor as prod_{i=1}^{r} F(t_i + ... + t_r) for a univariate F.

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mzv/bernoulli.hpp"
#include "mzv/indices.hpp"
#include "mzv/multi_series.hpp"
#include "mzv/rational.hpp"
#include "mzv/uni_series.hpp"

namespace mzv {

enum class Family { FKMT, EMS };

inline std::string family_name(Family f) { return f == Family::FKMT ? "FKMT" : "EMS"; }

inline Family parse_family(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::toupper(c); });
  if (text == "FKMT" || text == "DES") {
    return Family::FKMT;
  }
  if (text == "EMS") {
    return Family::EMS;
  }
  throw AlgebraError("unknown family '" + text + "'");
}

/// ((1-u)e^u - 1) / (e^u - 1)^2 = d/du [u/(e^u - 1)], through degree `order`.
inline UniSeries fkmt_factor(int order) {
  const int n = order + 2;
  const UniSeries one = UniSeries::constant(1, n);
  const UniSeries u = UniSeries::monomial(1, 1, n);
  const UniSeries em1 = uni_exp_minus_one(n);
  return divide_with_valuation((one - u) * exp_series(1, n) - one, em1 * em1);
}

/// (u - (e^u - 1)) / (u (e^u - 1)) = 1/(e^u - 1) - 1/u, through degree `order`.
inline UniSeries ems_factor(int order) {
  const int n = order + 2;
  const UniSeries u = UniSeries::monomial(1, 1, n);
  const UniSeries em1 = uni_exp_minus_one(n);
  return divide_with_valuation(u - em1, u * em1);
}

/// (1 - e^{-u}) / u, through degree `order`.
inline UniSeries conversion_prefactor(int order) {
  const int n = order + 1;
  const UniSeries one = UniSeries::constant(1, n);
  return divide_with_valuation(one - exp_series(-1, n), UniSeries::monomial(1, 1, n));
}

/// prod_{i=1}^{r} factor(t_i + ... + t_r), truncated per variable at K. The
/// factor must be known through degree rK.
inline TruncatedMultiSeries product_of_tail_sums(const UniSeries& factor, int r, int cap) {
  TruncatedMultiSeries z = TruncatedMultiSeries::constant(r, cap, 1);
  for (int i = 0; i < r; ++i) {
    std::vector<int> weights(r, 0);
    std::fill(weights.begin() + i, weights.end(), 1);
    z = z * substitute_linear_form(factor, weights, cap);
  }
  return z;
}

inline TruncatedMultiSeries z_fkmt(int r, int cap) {
  if (r < 1 || cap < 0) {
    throw AlgebraError("z_fkmt: need r >= 1 and K >= 0");
  }
  return product_of_tail_sums(fkmt_factor(r * cap), r, cap);
}

inline TruncatedMultiSeries z_ems(int r, int cap) {
  if (r < 1 || cap < 0) {
    throw AlgebraError("z_ems: need r >= 1 and K >= 0");
  }
  return product_of_tail_sums(ems_factor(r * cap), r, cap);
}

/// Inverts the exponential convention: (-1)^{|k|} (prod k_i!) [t^k] Z.
inline Rational value_from_series(const TruncatedMultiSeries& z, const MultiIndex& k) {
  Rational scale = sign_power(index_weight(k));
  for (int x : k) {
    scale *= Rational(factorial(static_cast<unsigned long>(x)));
  }
  return scale * z.coefficient(k);
}


/// zeta_r^des(-k_1, ..., -k_r) by coefficient extraction from Z_FKMT.
inline Rational zeta_des(const MultiIndex& k) {
  return value_from_series(z_fkmt(static_cast<int>(k.size()), max_entry(k)), k);
}

/// zeta_EMS(-k_1, ..., -k_r) by coefficient extraction from Z_EMS.
inline Rational zeta_ems(const MultiIndex& k) {
  return value_from_series(z_ems(static_cast<int>(k.size()), max_entry(k)), k);
}

namespace detail {

// Sum over upper-triangular (nu_ij)_{i<=j} whose column j sums to k_j of
//   prod_{i,j} 1/nu_ij!  *  prod_i b(nu_ii + ... + nu_ir),
// columns enumerated left to right, each column's entries lexicographically.
template <typename Coefficient>
Rational triangular_sum(const MultiIndex& k, Coefficient&& b) {
  const int r = static_cast<int>(k.size());
  std::vector<Rational> inv_fact;
  Rational f = 1;
  for (int n = 0; n <= index_weight(k); ++n) {
    inv_fact.push_back(f.inverse());
    f *= Rational(n + 1);
  }
  std::map<int, Rational> b_cache;
  auto coeff = [&](int n) -> const Rational& {
    auto it = b_cache.find(n);
    if (it == b_cache.end()) {
      it = b_cache.emplace(n, b(n)).first;
    }
    return it->second;
  };

  std::vector<int> row_sum(r, 0);
  Rational total;

  // column j, filling row i of that column with `remaining` still to place
  auto recurse = [&](auto&& self, int j, int i, int remaining, const Rational& weight) -> void {
    if (j == r) {
      Rational term = weight;
      for (int row = 0; row < r; ++row) {
        term *= coeff(row_sum[row]);
        if (term.is_zero()) {
          return;
        }
      }
      total += term;
      return;
    }
    if (i == j) {
      row_sum[i] += remaining;
      const int next = j + 1;
      self(self, next, 0, next < r ? k[next] : 0, weight * inv_fact[remaining]);
      row_sum[i] -= remaining;
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      row_sum[i] += v;
      self(self, j, i + 1, remaining - v, weight * inv_fact[v]);
      row_sum[i] -= v;
    }
  };
  if (r > 0) {
    recurse(recurse, 0, 0, k[0], Rational(1));
  }

  Rational scale = sign_power(index_weight(k));
  for (int x : k) {
    scale *= Rational(factorial(static_cast<unsigned long>(x)));
  }
  return scale * total;
}

} // namespace detail

/// zeta_r^des(-k) as a finite sum of Bernoulli products over upper-triangular
/// matrices; independent of any series truncation.
inline Rational zeta_des_bernoulli_sum(const MultiIndex& k, const BernoulliCache& bern = default_bernoulli()) {
  return detail::triangular_sum(k, [&](int n) { return bern(static_cast<std::size_t>(n + 1)); });
}

/// Same triangular sum with the EMS depth-1 coefficients B_{n+1}/(n+1).
inline Rational zeta_ems_bernoulli_sum(const MultiIndex& k, const BernoulliCache& bern = default_bernoulli()) {
  return detail::triangular_sum(
      k, [&](int n) { return bern(static_cast<std::size_t>(n + 1)) / Rational(n + 1); });
}

/// prod_i (1 - e^{-(t_i+...+t_r)})/(t_i+...+t_r) * Z_FKMT(-t_1, ..., -t_r).
inline TruncatedMultiSeries convert_fkmt_to_ems(int r, int cap) {
  if (r < 1 || cap < 0) {
    throw AlgebraError("convert_fkmt_to_ems: need r >= 1 and K >= 0");
  }
  return product_of_tail_sums(conversion_prefactor(r * cap), r, cap) * negate_variables(z_fkmt(r, cap));
}

/// Residuals (lhs - rhs) of the two depth-1 value conversions
///   EMS(-k)  = sum_{i+j=k} C(k,i) (-1)^j/(i+1) FKMT(-j)
///   FKMT(-k) = (-1)^k sum_{i+j=k} C(k,i) B_i EMS(-j)
/// with both value families taken from their series.
inline std::pair<Rational, Rational> ems_fkmt_depth1_relations(int k,
                                                               const BernoulliCache& bern = default_bernoulli()) {
  const TruncatedMultiSeries zf = z_fkmt(1, k);
  const TruncatedMultiSeries ze = z_ems(1, k);
  auto fkmt = [&](int j) { return value_from_series(zf, {j}); };
  auto ems = [&](int j) { return value_from_series(ze, {j}); };
  Rational ems_rhs;
  Rational fkmt_rhs;
  for (int i = 0; i <= k; ++i) {
    const int j = k - i;
    const Rational c(binomial(k, i));
    ems_rhs += c * sign_power(j) / Rational(i + 1) * fkmt(j);
    fkmt_rhs += c * bern(static_cast<std::size_t>(i)) * ems(j);
  }
  fkmt_rhs *= sign_power(k);
  return {ems(k) - ems_rhs, fkmt(k) - fkmt_rhs};
}

/// Values of one family at every multi-index of a fixed depth.
struct ValueTable {
  Family family = Family::FKMT;
  int depth = 1;
  std::map<MultiIndex, Rational> entries;

  void set(const MultiIndex& k, const Rational& v) {
    if (static_cast<int>(k.size()) != depth) {
      throw AlgebraError("ValueTable: index length differs from depth");
    }
    entries[k] = v;
  }

  friend bool operator==(const ValueTable&, const ValueTable&) = default;

  nlohmann::json to_json() const {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& [k, v] : entries) {
      values.push_back({{"args", k}, {"value", v.str()}});
    }
    return {{"family", family_name(family)}, {"depth", depth}, {"values", values}};
  }

  static ValueTable from_json(const nlohmann::json& j) {
    ValueTable t;
    t.family = parse_family(j.at("family").get<std::string>());
    t.depth = j.at("depth").get<int>();
    for (const auto& row : j.at("values")) {
      t.set(row.at("args").get<MultiIndex>(), Rational::parse(row.at("value").get<std::string>()));
    }
    return t;
  }

  std::string to_csv() const {
    std::ostringstream os;
    for (int a = 1; a <= depth; ++a) {
      os << 'k' << a << ',';
    }
    os << "value\n";
    for (const auto& [k, v] : entries) {
      for (int x : k) {
        os << x << ',';
      }
      os << v.str() << '\n';
    }
    return os.str();
  }

  std::string to_text() const {
    std::ostringstream os;
    const std::string name = family == Family::FKMT ? "zeta_des" : "zeta_EMS";
    for (const auto& [k, v] : entries) {
      os << name << '(';
      for (std::size_t a = 0; a < k.size(); ++a) {
        os << (a ? "," : "") << '-' << k[a];
      }
      os << ") = " << v.str() << '\n';
    }
    return os.str();
  }
};

/// All values with entries <= max_weight, extracted from one series.
inline ValueTable make_value_table(Family family, int depth, int max_weight) {
  const TruncatedMultiSeries z = family == Family::FKMT ? z_fkmt(depth, max_weight) : z_ems(depth, max_weight);
  ValueTable table;
  table.family = family;
  table.depth = depth;
  for_each_index(depth, max_weight, [&](const MultiIndex& k) { table.set(k, value_from_series(z, k)); });
  return table;
}

} // namespace mzv
