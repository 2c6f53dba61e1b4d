#pragma once

// Exhaustive exact checks of the identities among desingularized values,
// renormalized values, the G_r coefficients and the word algebra.

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mzv/bernoulli.hpp"
#include "mzv/genfun.hpp"
#include "mzv/gr_coeff.hpp"
#include "mzv/report.hpp"
#include "mzv/word_algebra.hpp"

namespace mzv {

/// Memoized values shared by the suites of one run. Desingularized values
/// come from the Bernoulli triangular sum over the run's Bernoulli table;
/// renormalized values from the series.
class ValueMemo {
public:
  explicit ValueMemo(const BernoulliCache& bern) : bern_(bern) {}

  const BernoulliCache& bernoulli() const { return bern_; }

  Rational des(const MultiIndex& k) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = des_.find(k); it != des_.end()) {
        return it->second;
      }
    }
    const Rational v = zeta_des_bernoulli_sum(k, bern_);
    std::lock_guard lock(mutex_);
    des_.emplace(k, v);
    return v;
  }

  Rational ems(const MultiIndex& k) {
    const int r = static_cast<int>(k.size());
    const int need = max_entry(k);
    std::shared_ptr<const TruncatedMultiSeries> z;
    {
      std::lock_guard lock(mutex_);
      auto it = ems_series_.find(r);
      if (it != ems_series_.end() && it->second->cap() >= need) {
        z = it->second;
      }
    }
    if (!z) {
      z = reserve_ems(r, need);
    }
    return value_from_series(*z, k);
  }

  /// Makes every depth-r EMS value with entries <= cap available.
  std::shared_ptr<const TruncatedMultiSeries> reserve_ems(int r, int cap) {
    {
      std::lock_guard lock(mutex_);
      auto it = ems_series_.find(r);
      if (it != ems_series_.end() && it->second->cap() >= cap) {
        return it->second;
      }
    }
    auto z = std::make_shared<const TruncatedMultiSeries>(z_ems(r, cap));
    std::lock_guard lock(mutex_);
    auto& slot = ems_series_[r];
    if (!slot || slot->cap() < cap) {
      slot = z;
    }
    return slot;
  }

private:
  const BernoulliCache& bern_;
  std::mutex mutex_;
  std::map<MultiIndex, Rational> des_;
  std::map<int, std::shared_ptr<const TruncatedMultiSeries>> ems_series_;
};

/// One summand c * value(idx) of an expansion.
struct ValueTerm {
  Rational coef;
  MultiIndex index;
  friend auto operator<=>(const ValueTerm& a, const ValueTerm& b) {
    if (auto c = a.index <=> b.index; c != 0) {
      return c;
    }
    return a.coef <=> b.coef;
  }
  friend bool operator==(const ValueTerm&, const ValueTerm&) = default;
};

namespace detail {

inline nlohmann::json terms_json(const std::vector<ValueTerm>& terms) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : terms) {
    out.push_back({{"coef", t.coef.str()}, {"index", t.index}});
  }
  return out;
}

template <typename Value>
Rational evaluate_terms(const std::vector<ValueTerm>& terms, Value&& value) {
  Rational total;
  for (const auto& t : terms) {
    total += t.coef * value(t.index);
  }
  return total;
}

} // namespace detail

/// Right side of the product formula for depth-p times depth-q values:
/// sum over i_a + j_a = l_a of prod (-1)^{i_a} C(l_a, i_a) times the value at
/// (k_1, ..., k_{p-1}, k_p + i_1 + ... + i_q, j_1, ..., j_q).
inline std::vector<ValueTerm> shuffle_product_terms(const MultiIndex& k, const MultiIndex& l) {
  std::vector<ValueTerm> out;
  for_each_split(l, [&](const MultiIndex& i, const MultiIndex& j) {
    Rational c = sign_power(index_weight(i));
    for (std::size_t a = 0; a < l.size(); ++a) {
      c *= Rational(binomial(l[a], i[a]));
    }
    MultiIndex idx = k;
    idx.back() += index_weight(i);
    idx.insert(idx.end(), j.begin(), j.end());
    out.push_back({c, std::move(idx)});
  });
  return out;
}

/// Right side of the depth-(r-1) times depth-1 inversion: sum over i + j = l
/// of (-1)^i C(l, i) times the value at (k_1, ..., k_{r-1} + i, j).
inline std::vector<ValueTerm> q1_inversion_terms(const MultiIndex& kminus, int l) {
  std::vector<ValueTerm> out;
  for (int i = 0; i <= l; ++i) {
    MultiIndex idx = kminus;
    idx.back() += i;
    idx.push_back(l - i);
    out.push_back({sign_power(i) * Rational(binomial(l, i)), std::move(idx)});
  }
  return out;
}

// ---------------------------------------------------------------- suites

inline IdentityReport verify_bernoulli(const BernoulliCache& bern, int through = 40) {
  IdentityReport rep;
  rep.suite = "bernoulli";
  const auto top = std::max<std::size_t>(static_cast<std::size_t>(through), bern.size() - 1);
  bern.reserve(top + 1);
  rep.parameters = {{"through", top}};
  {
    CheckTally t("B_0 = 1, B_1 = -1/2, B_2 = 1/6");
    const std::vector<Rational> expected{Rational(1), Rational(Integer(-1), Integer(2)), Rational(Integer(1), Integer(6))};
    for (std::size_t m = 0; m < expected.size(); ++m) {
      t.expect(bern(m) == expected[m], [&] {
        return nlohmann::json{{"m", m}, {"value", bern(m).str()}, {"expected", expected[m].str()}};
      });
    }
    rep.checks.push_back(t.finish());
  }
  {
    CheckTally t("sum_{j<=m} C(m+1,j) B_j = 0");
    for (std::size_t m = 1; m <= top; ++m) {
      Rational acc;
      for (std::size_t j = 0; j <= m; ++j) {
        acc += Rational(binomial(static_cast<long>(m + 1), static_cast<long>(j))) * bern(j);
      }
      t.expect(acc.is_zero(), [&] { return nlohmann::json{{"m", m}, {"sum", acc.str()}}; });
    }
    rep.checks.push_back(t.finish());
  }
  {
    CheckTally t("B_m = 0 for odd m >= 3");
    for (std::size_t m = 3; m <= top + 1; m += 2) {
      t.expect(bern(m).is_zero(), [&] { return nlohmann::json{{"m", m}, {"value", bern(m).str()}}; });
    }
    rep.checks.push_back(t.finish());
  }
  {
    const int n = 20;
    CheckTally t("sum B_m x^m/m! * (e^x - 1)/x = 1 through degree 20");
    std::map<int, Rational> egf;
    Rational inv_fact = 1;
    for (int m = 0; m <= n; ++m) {
      egf.emplace(m, bern(static_cast<std::size_t>(m)) * inv_fact);
      inv_fact /= Rational(m + 1);
    }
    const UniSeries product = UniSeries(egf, n) * uni_exp_minus_one(n + 1).shifted_down(1);
    for (int m = 0; m <= n; ++m) {
      const Rational c = product.coefficient(m);
      t.expect(c == Rational(m == 0 ? 1 : 0), [&] { return nlohmann::json{{"degree", m}, {"coefficient", c.str()}}; });
    }
    rep.checks.push_back(t.finish());
  }
  return rep;
}

inline IdentityReport verify_depth1(ValueMemo& memo, int kmax) {
  IdentityReport rep;
  rep.suite = "depth1";
  rep.parameters = {{"max_weight", kmax}};
  const auto& bern = memo.bernoulli();
  const auto zf = z_fkmt(1, kmax);
  const auto ze = z_ems(1, kmax);
  CheckTally series("zeta_1^des(-k) = (-1)^k B_{k+1} from the generating function");
  CheckTally sums("zeta_1^des(-k) = (-1)^k B_{k+1} from the Bernoulli sum");
  CheckTally ems("zeta_EMS(-k) = (-1)^k B_{k+1}/(k+1) from the generating function");
  for (int k = 0; k <= kmax; ++k) {
    const Rational closed = sign_power(k) * bern(static_cast<std::size_t>(k + 1));
    const Rational a = value_from_series(zf, {k});
    const Rational b = memo.des({k});
    const Rational c = value_from_series(ze, {k});
    auto witness = [&](const Rational& got, const Rational& want) {
      return [&, got, want] { return nlohmann::json{{"index", {k}}, {"lhs", got.str()}, {"rhs", want.str()}}; };
    };
    series.expect(a == closed, witness(a, closed));
    sums.expect(b == closed, witness(b, closed));
    const Rational closed_ems = closed / Rational(k + 1);
    ems.expect(c == closed_ems, witness(c, closed_ems));
  }
  rep.checks = {series.finish(), sums.finish(), ems.finish()};
  return rep;
}

inline IdentityReport verify_routes(ValueMemo& memo, int max_depth, int kmax) {
  IdentityReport rep;
  rep.suite = "routes";
  rep.parameters = {{"max_depth", max_depth}, {"max_weight", kmax}};
  for (int r = 1; r <= max_depth; ++r) {
    CheckTally t("depth " + std::to_string(r) + ": coefficient extraction = Bernoulli triangular sum");
    const auto z = z_fkmt(r, kmax);
    for_each_index(r, kmax, [&](const MultiIndex& k) {
      const Rational a = value_from_series(z, k);
      const Rational b = memo.des(k);
      t.expect(a == b, [&] { return nlohmann::json{{"index", k}, {"series", a.str()}, {"bernoulli_sum", b.str()}}; });
    });
    rep.checks.push_back(t.finish());
  }
  return rep;
}

/// zeta_r(-k) = sum over i_a + j_a = k_a (a >= 2) of prod C(k_a, i_a)
///   zeta_{r-1}(-i_2, ..., -i_r) zeta_1(-k_1 - j_2 - ... - j_r)
inline IdentityReport verify_recurrence(ValueMemo& memo, const std::vector<std::pair<int, int>>& plan) {
  IdentityReport rep;
  rep.suite = "recurrence";
  rep.parameters = {{"depth_and_weight", plan}};
  for (const auto& [r, kmax] : plan) {
    CheckTally t("depth " + std::to_string(r) + ", entries <= " + std::to_string(kmax) +
                 ": peel-off recurrence in the first argument");
    for_each_index(r, kmax, [&](const MultiIndex& k) {
      const MultiIndex tail(k.begin() + 1, k.end());
      Rational rhs;
      for_each_split(tail, [&](const MultiIndex& i, const MultiIndex& j) {
        Rational c = 1;
        for (std::size_t a = 0; a < tail.size(); ++a) {
          c *= Rational(binomial(tail[a], i[a]));
        }
        rhs += c * memo.des(i) * memo.des({k[0] + index_weight(j)});
      });
      const Rational lhs = memo.des(k);
      t.expect(lhs == rhs, [&] { return nlohmann::json{{"index", k}, {"lhs", lhs.str()}, {"rhs", rhs.str()}}; });
    });
    rep.checks.push_back(t.finish());
  }
  return rep;
}

/// Z(u_1) ... Z(u_r) = Z(u_1 - u_2, ..., u_{r-1} - u_r, u_r) for the
/// desingularized generating function.
inline IdentityReport verify_lemma11(const std::vector<std::pair<int, int>>& plan) {
  IdentityReport rep;
  rep.suite = "lemma11";
  rep.parameters = {{"depth_and_weight", plan}};
  for (const auto& [r, kmax] : plan) {
    TruncatedMultiSeries lhs = TruncatedMultiSeries::constant(r, kmax, 1);
    const UniSeries f = fkmt_factor(r * kmax);
    for (int i = 0; i < r; ++i) {
      std::vector<int> e(r, 0);
      e[i] = 1;
      lhs = lhs * substitute_linear_form(f, e, kmax);
    }
    std::vector<std::vector<int>> map(r, std::vector<int>(r, 0));
    for (int a = 0; a < r; ++a) {
      map[a][a] = 1;
      if (a + 1 < r) {
        map[a][a + 1] = -1;
      }
    }
    const TruncatedMultiSeries rhs = substitute_linear_map(z_fkmt(r, r * kmax), map, kmax);

    CheckTally t("depth " + std::to_string(r) + ", cap " + std::to_string(kmax) +
                 ": product of depth-1 series = series at telescoped arguments");
    for_each_index(r, kmax, [&](const MultiIndex& e) {
      const Rational a = lhs.coefficient(e);
      const Rational b = rhs.coefficient(e);
      t.expect(a == b, [&] { return nlohmann::json{{"exponent", e}, {"lhs", a.str()}, {"rhs", b.str()}}; });
    });
    rep.checks.push_back(t.finish());

    CheckTally c("depth " + std::to_string(r) + ": constant terms equal (-1/2)^r");
    Rational half_power = 1;
    for (int i = 0; i < r; ++i) {
      half_power *= Rational(Integer(-1), Integer(2));
    }
    const MultiIndex zero(r, 0);
    for (const TruncatedMultiSeries* side : std::vector<const TruncatedMultiSeries*>{&lhs, &rhs}) {
      const Rational v = side->coefficient(zero);
      c.expect(v == half_power, [&] { return nlohmann::json{{"constant", v.str()}, {"expected", half_power.str()}}; });
    }
    rep.checks.push_back(c.finish());
  }
  return rep;
}

inline IdentityReport verify_shuffle_product(ValueMemo& memo, const std::vector<std::pair<int, int>>& shapes,
                                             int kmax) {
  IdentityReport rep;
  rep.suite = "shuffle";
  rep.parameters = {{"shapes", shapes}, {"max_weight", kmax}};
  for (const auto& [p, q] : shapes) {
    CheckTally t("(p,q) = (" + std::to_string(p) + "," + std::to_string(q) +
                 "): product of desingularized values as a combination of depth p+q values");
    for_each_index(p, kmax, [&](const MultiIndex& k) {
      for_each_index(q, kmax, [&](const MultiIndex& l) {
        const Rational lhs = memo.des(k) * memo.des(l);
        const Rational rhs = detail::evaluate_terms(shuffle_product_terms(k, l), [&](const MultiIndex& i) { return memo.des(i); });
        t.expect(lhs == rhs, [&] {
          return nlohmann::json{{"k", k}, {"l", l}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
        });
      });
    });
    rep.checks.push_back(t.finish());
  }
  return rep;
}

/// zeta_r(-k) = sum_{i+j=k_r} C(k_r, i) zeta_{r-1}(-k_1, ..., -k_{r-1} - i) zeta_1(-j)
inline IdentityReport verify_intro_recurrence(ValueMemo& memo, int max_depth, int kmax) {
  IdentityReport rep;
  rep.suite = "intro-recurrence";
  rep.parameters = {{"max_depth", max_depth}, {"max_weight", kmax}};
  for (int r = 2; r <= max_depth; ++r) {
    CheckTally t("depth " + std::to_string(r) + ": peel-off recurrence in the last argument");
    for_each_index(r, kmax, [&](const MultiIndex& k) {
      Rational rhs;
      for (int i = 0; i <= k.back(); ++i) {
        MultiIndex head(k.begin(), k.end() - 1);
        head.back() += i;
        rhs += Rational(binomial(k.back(), i)) * memo.des(head) * memo.des({k.back() - i});
      }
      const Rational lhs = memo.des(k);
      t.expect(lhs == rhs, [&] { return nlohmann::json{{"index", k}, {"lhs", lhs.str()}, {"rhs", rhs.str()}}; });
    });
    rep.checks.push_back(t.finish());
  }
  return rep;
}

/// zeta_{r-1}(-k) zeta_1(-l) = sum_{i+j=l} (-1)^i C(l,i) zeta_r(-k_1, ..., -k_{r-1} - i, -j),
/// and its expansion coincides term by term with the (r-1, 1) product formula.
inline IdentityReport verify_q1_inversion(ValueMemo& memo, int max_depth, int kmax) {
  IdentityReport rep;
  rep.suite = "q1-inversion";
  rep.parameters = {{"max_depth", max_depth}, {"max_weight", kmax}};
  for (int r = 2; r <= max_depth; ++r) {
    CheckTally values("depth " + std::to_string(r) + ": product with a depth-1 value inverted");
    CheckTally terms("depth " + std::to_string(r) + ": expansion equals the (r-1,1) product formula term by term");
    for_each_index(r - 1, kmax, [&](const MultiIndex& k) {
      for (int l = 0; l <= kmax; ++l) {
        auto mine = q1_inversion_terms(k, l);
        const Rational lhs = memo.des(k) * memo.des({l});
        const Rational rhs = detail::evaluate_terms(mine, [&](const MultiIndex& i) { return memo.des(i); });
        values.expect(lhs == rhs, [&] {
          return nlohmann::json{{"k", k}, {"l", l}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
        });
        auto theirs = shuffle_product_terms(k, {l});
        std::sort(mine.begin(), mine.end());
        std::sort(theirs.begin(), theirs.end());
        terms.expect(mine == theirs, [&] {
          return nlohmann::json{{"k", k}, {"l", l}, {"inversion", detail::terms_json(mine)},
                                {"product", detail::terms_json(theirs)}};
        });
      }
    });
    rep.checks.push_back(values.finish());
    rep.checks.push_back(terms.finish());
  }
  return rep;
}

///   E(-a) E(-b)     = sum_k (-1)^k C(a,k) E(-b-k, -a+k)
///   E(-a) E(-b, -c) = sum (-1)^{i_1+i_2} C(b,i_1) C(c,i_2) E(-a-i_1-i_2, -j_1, -j_2)
inline IdentityReport verify_ems_shuffle_examples(ValueMemo& memo, int kmax) {
  IdentityReport rep;
  rep.suite = "ems-shuffle";
  rep.parameters = {{"max_weight", kmax}};
  memo.reserve_ems(1, kmax);
  memo.reserve_ems(2, 2 * kmax);
  memo.reserve_ems(3, 3 * kmax);
  {
    CheckTally t("renormalized depth 1 times depth 1");
    for (int a = 0; a <= kmax; ++a) {
      for (int b = 0; b <= kmax; ++b) {
        Rational rhs;
        for (int k = 0; k <= a; ++k) {
          rhs += sign_power(k) * Rational(binomial(a, k)) * memo.ems({b + k, a - k});
        }
        const Rational lhs = memo.ems({a}) * memo.ems({b});
        t.expect(lhs == rhs, [&] {
          return nlohmann::json{{"a", a}, {"b", b}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
        });
      }
    }
    rep.checks.push_back(t.finish());
  }
  {
    CheckTally t("renormalized depth 1 times depth 2");
    for_each_index(3, kmax, [&](const MultiIndex& abc) {
      const int a = abc[0];
      const MultiIndex bc{abc[1], abc[2]};
      const auto terms = shuffle_product_terms({a}, bc);
      const Rational rhs = detail::evaluate_terms(terms, [&](const MultiIndex& i) { return memo.ems(i); });
      const Rational lhs = memo.ems({a}) * memo.ems(bc);
      t.expect(lhs == rhs, [&] { return nlohmann::json{{"index", abc}, {"lhs", lhs.str()}, {"rhs", rhs.str()}}; });
    });
    rep.checks.push_back(t.finish());
  }
  return rep;
}

inline IdentityReport verify_conversion(const BernoulliCache& bern, int max_depth, int kmax, int kvalues) {
  IdentityReport rep;
  rep.suite = "conversion";
  rep.parameters = {{"max_depth", max_depth}, {"max_weight", kmax}, {"depth1_values_through", kvalues}};
  for (int r = 1; r <= max_depth; ++r) {
    CheckTally t("depth " + std::to_string(r) + ", cap " + std::to_string(kmax) +
                 ": prod (1 - e^{-T_i})/T_i * Z_des(-t) = Z_EMS(t)");
    const auto lhs = convert_fkmt_to_ems(r, kmax);
    const auto rhs = z_ems(r, kmax);
    for_each_index(r, kmax, [&](const MultiIndex& e) {
      const Rational a = lhs.coefficient(e);
      const Rational b = rhs.coefficient(e);
      t.expect(a == b, [&] { return nlohmann::json{{"exponent", e}, {"lhs", a.str()}, {"rhs", b.str()}}; });
    });
    rep.checks.push_back(t.finish());
  }
  CheckTally first("zeta_EMS(-k) = sum_{i+j=k} C(k,i) (-1)^j/(i+1) zeta_1^des(-j)");
  CheckTally second("zeta_1^des(-k) = (-1)^k sum_{i+j=k} C(k,i) B_i zeta_EMS(-j)");
  for (int k = 0; k <= kvalues; ++k) {
    const auto [a, b] = ems_fkmt_depth1_relations(k, bern);
    first.expect(a.is_zero(), [&, a = a] { return nlohmann::json{{"k", k}, {"residual", a.str()}}; });
    second.expect(b.is_zero(), [&, b = b] { return nlohmann::json{{"k", k}, {"residual", b.str()}}; });
  }
  rep.checks.push_back(first.finish());
  rep.checks.push_back(second.finish());
  return rep;
}

inline IdentityReport verify_gr(int max_depth) {
  IdentityReport rep;
  rep.suite = "gr";
  rep.parameters = {{"max_depth", max_depth}};
  std::vector<GrCoefficients> a(static_cast<std::size_t>(max_depth) + 1);
  nlohmann::json support = nlohmann::json::object();
  for (int r = 1; r <= max_depth; ++r) {
    rep.checks.push_back(check_m_sum(r));
    a[r] = a_coeffs(r);
    support[std::to_string(r)] = a[r].entries.size();
    rep.checks.push_back(check_lemma31(a[r]));
  }
  rep.parameters["support_size"] = support;
  for (int r = 2; r <= std::min(max_depth, 3); ++r) {
    for (auto& c : check_cor31(a[r], a[r - 1])) {
      rep.checks.push_back(std::move(c));
    }
    for (auto& c : check_reindexing(a[r])) {
      rep.checks.push_back(std::move(c));
    }
  }
  for (int r = 2; r <= max_depth; ++r) {
    rep.checks.push_back(check_gr_substitution_identity(r));
  }
  return rep;
}

inline IdentityReport verify_words(int max_len, int order, int commutator_len) {
  IdentityReport rep;
  rep.suite = "words";
  auto words = words_ending_in_y(max_len);
  words.insert(words.begin(), "");
  std::vector<std::pair<Word, Word>> pairs;
  std::vector<std::pair<Word, Word>> nonempty_pairs;
  for (const auto& u : words) {
    for (const auto& v : words) {
      pairs.emplace_back(u, v);
      if (!u.empty() && !v.empty()) {
        nonempty_pairs.emplace_back(u, v);
      }
    }
  }
  rep.checks.push_back(check_phi_multiplicative(pairs, order));
  rep.checks.push_back(check_leibniz(nonempty_pairs, order));
  rep.checks.push_back(check_phi_commutative(all_words(commutator_len), order));

  const auto short_words = words_ending_in_y(std::min(max_len, 2));
  const auto assoc = survey_associativity(short_words);
  CheckTally t("phi((u sh v) sh w) = phi(u sh (v sh w)) through degree " + std::to_string(order));
  for (const auto& u : short_words) {
    for (const auto& v : short_words) {
      for (const auto& w : short_words) {
        const LaurentUniSeries left = phi(shuffle0(shuffle0(u, v), WordSum(w)), order);
        const LaurentUniSeries right = phi(shuffle0(WordSum(u), shuffle0(v, w)), order);
        t.expect(left == right, [&] { return nlohmann::json{{"u", u}, {"v", v}, {"w", w}}; });
      }
    }
  }
  rep.checks.push_back(t.finish());
  rep.parameters = {{"max_length", max_len},
                    {"order", order},
                    {"commutator_length", commutator_len},
                    {"associativity_on_words", {{"triples", assoc.triples},
                                                {"associative", assoc.associative},
                                                {"first_counterexample", assoc.first_counterexample}}}};
  return rep;
}

inline IdentityReport verify_pochhammer(int pairs, int nmax, unsigned seed = 20240611) {
  IdentityReport rep;
  rep.suite = "pochhammer";
  rep.parameters = {{"pairs", pairs}, {"max_n", nmax}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 24);
  CheckTally t("(a+b)_n = sum_{i+j=n} C(n,i) (a)_i (b)_j");
  for (int trial = 0; trial < pairs; ++trial) {
    const Rational a(Integer(num(rng)), Integer(den(rng)));
    const Rational b(Integer(num(rng)), Integer(den(rng)));
    for (int n = 0; n <= nmax; ++n) {
      Rational rhs;
      for (int i = 0; i <= n; ++i) {
        rhs += Rational(binomial(n, i)) * pochhammer(a, i) * pochhammer(b, n - i);
      }
      const Rational lhs = pochhammer(a + b, n);
      t.expect(lhs == rhs, [&] {
        return nlohmann::json{{"a", a.str()}, {"b", b.str()}, {"n", n}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
      });
    }
  }
  rep.checks.push_back(t.finish());
  return rep;
}

// ---------------------------------------------------------------- driver

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bernoulli", "depth1",       "routes",       "recurrence", "lemma11",
                                              "shuffle",   "intro-recurrence", "q1-inversion", "ems-shuffle",
                                              "conversion", "gr",          "words",        "pochhammer"};
  return names;
}

inline bool is_suite_name(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

struct VerifyConfig {
  std::vector<std::string> suites;
  // Overrides for every suite; unset means the per-suite defaults.
  std::optional<int> depth;
  std::optional<int> max_weight;
  std::optional<int> truncation;
  std::map<std::size_t, Rational> bernoulli_faults;
  bool parallel = true;

  static VerifyConfig all() {
    VerifyConfig c;
    c.suites = suite_names();
    return c;
  }
};

inline IdentityReport run_suite(const std::string& name, const VerifyConfig& cfg, ValueMemo& memo) {
  auto K = [&](int fallback) { return cfg.max_weight.value_or(fallback); };
  auto R = [&](int fallback) { return cfg.depth.value_or(fallback); };
  auto depth_plan = [&](std::vector<std::pair<int, int>> fallback) {
    if (!cfg.depth && !cfg.max_weight) {
      return fallback;
    }
    std::vector<std::pair<int, int>> plan;
    const int top = cfg.depth ? *cfg.depth : std::max_element(fallback.begin(), fallback.end())->first;
    for (int r = 2; r <= top; ++r) {
      int k = 0;
      for (const auto& [fr, fk] : fallback) {
        if (fr == r) {
          k = fk;
        }
      }
      plan.emplace_back(r, cfg.max_weight ? *cfg.max_weight : (k ? k : fallback.back().second));
    }
    return plan;
  };

  if (name == "bernoulli") {
    return verify_bernoulli(memo.bernoulli());
  }
  if (name == "depth1") {
    return verify_depth1(memo, K(20));
  }
  if (name == "routes") {
    return verify_routes(memo, R(3), K(4));
  }
  if (name == "recurrence") {
    return verify_recurrence(memo, depth_plan({{2, 4}, {3, 4}, {4, 2}}));
  }
  if (name == "lemma11") {
    return verify_lemma11(depth_plan({{2, 3}, {3, 3}}));
  }
  if (name == "shuffle") {
    std::vector<std::pair<int, int>> shapes{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    if (cfg.depth) {
      shapes.clear();
      for (int p = 1; p < std::max(*cfg.depth, 2); ++p) {
        for (int q = 1; p + q <= std::max(*cfg.depth, 2); ++q) {
          shapes.emplace_back(p, q);
        }
      }
    }
    return verify_shuffle_product(memo, shapes, K(3));
  }
  if (name == "intro-recurrence") {
    return verify_intro_recurrence(memo, R(3), K(4));
  }
  if (name == "q1-inversion") {
    return verify_q1_inversion(memo, R(3), K(4));
  }
  if (name == "ems-shuffle") {
    return verify_ems_shuffle_examples(memo, K(3));
  }
  if (name == "conversion") {
    return verify_conversion(memo.bernoulli(), R(3), K(5), cfg.max_weight ? *cfg.max_weight : 10);
  }
  if (name == "gr") {
    return verify_gr(R(4));
  }
  if (name == "words") {
    return verify_words(3, cfg.truncation.value_or(10), 4);
  }
  if (name == "pochhammer") {
    return verify_pochhammer(50, 10);
  }
  throw AlgebraError("unknown suite '" + name + "'");
}

/// Runs the configured suites, in the order given, and returns their reports
/// in that order. Suites may run concurrently; results are identical either way.
inline std::vector<IdentityReport> run_all(const VerifyConfig& cfg) {
  for (const auto& s : cfg.suites) {
    if (!is_suite_name(s)) {
      throw AlgebraError("unknown suite '" + s + "'");
    }
  }
  if (cfg.depth && *cfg.depth < 1) {
    throw AlgebraError("depth must be at least 1");
  }
  if (cfg.max_weight && *cfg.max_weight < 0) {
    throw AlgebraError("max weight must be non-negative");
  }
  if (cfg.truncation && *cfg.truncation < 0) {
    throw AlgebraError("truncation must be non-negative");
  }
  BernoulliCache bern;
  for (const auto& [m, v] : cfg.bernoulli_faults) {
    bern.inject_fault(m, v);
  }
  ValueMemo memo(bern);
  auto timed = [&](const std::string& name) {
    const auto start = std::chrono::steady_clock::now();
    IdentityReport rep = run_suite(name, cfg, memo);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!cfg.bernoulli_faults.empty()) {
      nlohmann::json faults = nlohmann::json::object();
      for (const auto& [m, v] : cfg.bernoulli_faults) {
        faults[std::to_string(m)] = v.str();
      }
      rep.parameters["bernoulli_faults"] = faults;
    }
    return rep;
  };
  std::vector<IdentityReport> out;
  if (cfg.parallel) {
    std::vector<std::future<IdentityReport>> jobs;
    for (const auto& s : cfg.suites) {
      jobs.push_back(std::async(std::launch::async, timed, s));
    }
    for (auto& j : jobs) {
      out.push_back(j.get());
    }
  } else {
    for (const auto& s : cfg.suites) {
      out.push_back(timed(s));
    }
  }
  return out;
}

inline bool all_passed(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const IdentityReport& r) { return r.passed(); });
}

inline nlohmann::json reports_json(const std::vector<IdentityReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back(r.to_json());
  }
  return {{"status", all_passed(reports) ? "pass" : "fail"}, {"reports", arr}};
}

} // namespace mzv
