#pragma once

// The polynomial
//   G_r = prod_{j=1..r} { 1 - (u_j v_j + ... + u_r v_r)(1/v_j - 1/v_{j-1}) },  1/v_0 := 0,
// its integer coefficients a^r_{l,m} (l from u-exponents, m from v-exponents)
// and the structural identities they satisfy.

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mzv/indices.hpp"
#include "mzv/laurent_poly.hpp"
#include "mzv/report.hpp"

namespace mzv {

inline std::vector<std::string> gr_variable_names(int r) {
  std::vector<std::string> names;
  for (int j = 1; j <= r; ++j) {
    names.push_back("u" + std::to_string(j));
  }
  for (int j = 1; j <= r; ++j) {
    names.push_back("v" + std::to_string(j));
  }
  return names;
}

inline LaurentMultiPoly expand_gr(int r) {
  if (r < 1) {
    throw AlgebraError("expand_gr: depth must be at least 1");
  }
  const auto names = gr_variable_names(r);
  auto u = [&](int j) { return LaurentMultiPoly::variable(names, "u" + std::to_string(j)); };
  auto v = [&](int j, int p = 1) { return LaurentMultiPoly::variable(names, "v" + std::to_string(j), p); };
  const auto one = LaurentMultiPoly::constant(names, 1);

  LaurentMultiPoly g = one;
  for (int j = 1; j <= r; ++j) {
    LaurentMultiPoly tail(names);
    for (int a = j; a <= r; ++a) {
      tail += u(a) * v(a);
    }
    LaurentMultiPoly diff = v(j, -1);
    if (j > 1) {
      diff -= v(j - 1, -1);
    }
    g = g * (one - tail * diff);
  }
  return g;
}

struct GrKey {
  MultiIndex l;
  MultiIndex m;
  friend auto operator<=>(const GrKey&, const GrKey&) = default;
};

/// a^r_{l,m}; entries not stored are zero.
struct GrCoefficients {
  int depth = 0;
  std::map<GrKey, Integer> entries;

  Integer at(const MultiIndex& l, const MultiIndex& m) const {
    auto it = entries.find(GrKey{l, m});
    return it == entries.end() ? Integer(0) : it->second;
  }
};

inline GrCoefficients coefficients_of(const LaurentMultiPoly& g, int r) {
  GrCoefficients out;
  out.depth = r;
  for (const auto& [mono, c] : g.terms()) {
    GrKey key{MultiIndex(mono.begin(), mono.begin() + r), MultiIndex(mono.begin() + r, mono.end())};
    for (int e : key.l) {
      if (e < 0) {
        throw AlgebraError("a_coeffs: negative u-exponent in " + g.str());
      }
    }
    int msum = 0;
    for (int e : key.m) {
      msum += e;
    }
    if (msum != 0) {
      throw AlgebraError("a_coeffs: nonzero m-sum at l=" + index_str(key.l) + " m=" + index_str(key.m));
    }
    if (!c.is_integer()) {
      throw AlgebraError("a_coeffs: non-integer coefficient " + c.str());
    }
    out.entries.emplace(std::move(key), c.numerator());
  }
  return out;
}

inline GrCoefficients a_coeffs(int r) { return coefficients_of(expand_gr(r), r); }

namespace detail {

inline nlohmann::json lm_json(const MultiIndex& l, const MultiIndex& m) { return {{"l", l}, {"m", m}}; }

// Component-wise bounds of a set of integer vectors of a common length.
struct Box {
  MultiIndex lo;
  MultiIndex hi;

  void include(const MultiIndex& x) {
    if (lo.empty()) {
      lo = hi = x;
      return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      lo[i] = std::min(lo[i], x[i]);
      hi[i] = std::max(hi[i], x[i]);
    }
  }

  void widen(int margin) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] -= margin;
      hi[i] += margin;
    }
  }
};

template <typename F>
void for_each_in_box(const Box& box, F&& visit) {
  const std::size_t n = box.lo.size();
  MultiIndex x = box.lo;
  if (n == 0) {
    visit(x);
    return;
  }
  while (true) {
    visit(x);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < box.hi[i]) {
        ++x[i];
        break;
      }
      x[i] = box.lo[i];
      if (i == 0) {
        return;
      }
    }
  }
}

// (m_1..m_{r-2}, p, q) from m in Z^{r-1}
inline MultiIndex split_last(const MultiIndex& m, int p, int q) {
  MultiIndex out(m.begin(), m.end() - 1);
  out.push_back(p);
  out.push_back(q);
  return out;
}

// (l_1..l_{r-2}, l_{r-1}+l_r)
inline MultiIndex merge_last(const MultiIndex& l) {
  MultiIndex out(l.begin(), l.end() - 1);
  out.back() += l.back();
  return out;
}

} // namespace detail

/// |m| = 0 on every term of the raw expansion.
inline Check check_m_sum(int r) {
  CheckTally tally("depth " + std::to_string(r) + ": every term of G_r has |m| = 0");
  const auto g = expand_gr(r);
  for (const auto& [mono, c] : g.terms()) {
    const MultiIndex l(mono.begin(), mono.begin() + r);
    const MultiIndex m(mono.begin() + r, mono.end());
    tally.expect(index_weight(m) == 0, [&] {
      auto w = detail::lm_json(l, m);
      w["coef"] = c.str();
      return w;
    });
  }
  return tally.finish();
}

/// Nonzero a^r_{l,m} only when m_r is l_r - 1 or l_r, and m_r >= 0.
inline Check check_lemma31(const GrCoefficients& a) {
  CheckTally tally("depth " + std::to_string(a.depth) + ": a_{l,m} = 0 unless m_r in {l_r - 1, l_r} and m_r >= 0");
  for (const auto& [key, c] : a.entries) {
    const int lr = key.l.back();
    const int mr = key.m.back();
    tally.expect((mr == lr || mr == lr - 1) && mr >= 0, [&] {
      auto w = detail::lm_json(key.l, key.m);
      w["coef"] = c.get_str();
      return w;
    });
  }
  return tally.finish();
}

inline Check check_lemma31(int r) { return check_lemma31(a_coeffs(r)); }

struct Cor31Scan {
  detail::Box l_box;
  detail::Box m_box;
};

/// Scan region for the corollary: l over the support of a^r and a^{r-1} plus
/// one, m in Z^{r-1} over the joint support plus one.
inline Cor31Scan cor31_scan_region(const GrCoefficients& ar, const GrCoefficients& ar1) {
  const int r = ar.depth;
  Cor31Scan scan;
  scan.l_box.include(MultiIndex(r, 0));
  int lmax = 0;
  for (const auto& [key, c] : ar.entries) {
    lmax = std::max(lmax, max_entry(key.l));
    MultiIndex m(key.m.begin(), key.m.end() - 1);
    m.back() += key.m.back();
    scan.m_box.include(m);
  }
  for (const auto& [key, c] : ar1.entries) {
    lmax = std::max(lmax, max_entry(key.l));
    scan.m_box.include(key.m);
  }
  scan.l_box.include(MultiIndex(r, lmax));
  scan.l_box.hi = MultiIndex(r, lmax + 1);
  scan.m_box.widen(1);
  return scan;
}

/// Both equalities of
///   a^r_{l,(m-,m_{r-1}-l_r,l_r)} + a^r_{l,(m-,m_{r-1}-l_r+1,l_r-1)}
///     = C(l_{r-1}+l_r, l_{r-1}) a^{r-1}_{l',m}
///     = -a^r_{(l-,l_r+1),(m-,m_{r-1}-l_r,l_r)}
/// over the scan region. The second check records how many instances are nonzero.
inline std::vector<Check> check_cor31(const GrCoefficients& ar, const GrCoefficients& ar1) {
  const int r = ar.depth;
  if (r < 2 || ar1.depth != r - 1) {
    throw AlgebraError("check_cor31: need depths r >= 2 and r - 1");
  }
  const std::string tag = "depth " + std::to_string(r) + ": ";
  CheckTally first(tag + "a_{l,(m-,m'-l_r,l_r)} + a_{l,(m-,m'-l_r+1,l_r-1)} = C(l_{r-1}+l_r,l_{r-1}) a^{r-1}_{l',m}");
  CheckTally second(tag + "C(l_{r-1}+l_r,l_{r-1}) a^{r-1}_{l',m} = -a_{(l-,l_r+1),(m-,m'-l_r,l_r)}");
  std::size_t nonzero = 0;
  const auto scan = cor31_scan_region(ar, ar1);
  detail::for_each_in_box(scan.m_box, [&](const MultiIndex& m) {
    if (index_weight(m) != 0) {
      return;
    }
    detail::for_each_in_box(scan.l_box, [&](const MultiIndex& l) {
      const int lr = l.back();
      const int mlast = m.back();
      const Integer lhs = ar.at(l, detail::split_last(m, mlast - lr, lr)) +
                          ar.at(l, detail::split_last(m, mlast - lr + 1, lr - 1));
      const Integer mid = Integer(binomial(l[r - 2] + lr, l[r - 2])) * ar1.at(detail::merge_last(l), m);
      MultiIndex lplus = l;
      ++lplus.back();
      const Integer rhs = -ar.at(lplus, detail::split_last(m, mlast - lr, lr));
      auto witness = [&] {
        auto w = detail::lm_json(l, m);
        w["lhs"] = lhs.get_str();
        w["middle"] = mid.get_str();
        w["rhs"] = rhs.get_str();
        return w;
      };
      first.expect(lhs == mid, witness);
      second.expect(mid == rhs, witness);
      if (lhs != 0 || mid != 0 || rhs != 0) {
        ++nonzero;
      }
    });
  });
  std::vector<Check> out{first.finish(), second.finish()};
  out[1].description += " (" + std::to_string(nonzero) + " nonzero instances)";
  return out;
}

inline std::vector<Check> check_cor31(int r) { return check_cor31(a_coeffs(r), a_coeffs(r - 1)); }

struct SubstitutionSides {
  LaurentMultiPoly lhs;
  LaurentMultiPoly rhs;
  int clearing_power = 0;
};

/// Both sides of
///   G_r(u; v_1..v_{r-1}, ((u_r+z)/u_r) v_{r-1}) = (z+1) G_{r-1}(u_1..u_{r-2}, u_{r-1}+u_r+z; v_1..v_{r-1})
/// multiplied by u_r^D, D the largest power of 1/u_r the substitution creates.
inline SubstitutionSides gr_substitution_sides(int r) {
  if (r < 2) {
    throw AlgebraError("gr_substitution_sides: depth must be at least 2");
  }
  auto names = gr_variable_names(r);
  names.push_back("z");
  const std::string ur = "u" + std::to_string(r);
  const std::string ur1 = "u" + std::to_string(r - 1);
  const std::string vr = "v" + std::to_string(r);
  const std::string vr1 = "v" + std::to_string(r - 1);
  auto var = [&](const std::string& n, int p = 1) { return LaurentMultiPoly::variable(names, n, p); };
  const auto z = var("z");

  const LaurentMultiPoly new_vr = var(vr1) + z * var(ur, -1) * var(vr1);
  LaurentMultiPoly lhs = expand_gr(r).with_variables(names).substitute_variable(vr, new_vr);

  const LaurentMultiPoly new_ur1 = var(ur1) + var(ur) + z;
  LaurentMultiPoly rhs = (z + LaurentMultiPoly::constant(names, 1)) *
                         expand_gr(r - 1).with_variables(names).substitute_variable(ur1, new_ur1);

  SubstitutionSides out;
  out.clearing_power = std::max({0, -lhs.min_exponent(ur), -rhs.min_exponent(ur)});
  const auto clear = var(ur, out.clearing_power);
  out.lhs = clear * lhs;
  out.rhs = clear * rhs;
  return out;
}

inline Check check_gr_substitution_identity(int r) {
  const auto sides = gr_substitution_sides(r);
  CheckTally tally("depth " + std::to_string(r) + ": G_r substitution identity after clearing u_r^" +
                   std::to_string(sides.clearing_power));
  const auto diff = sides.lhs - sides.rhs;
  std::set<LaurentMultiPoly::Monomial> monomials;
  for (const auto& [mono, c] : sides.lhs.terms()) {
    monomials.insert(mono);
  }
  for (const auto& [mono, c] : sides.rhs.terms()) {
    monomials.insert(mono);
  }
  for (const auto& mono : monomials) {
    const Rational d = diff.coefficient_of(mono);
    tally.expect(d.is_zero(), [&] {
      return nlohmann::json{{"variables", sides.lhs.names()},
                            {"monomial", mono},
                            {"lhs", sides.lhs.coefficient_of(mono).str()},
                            {"rhs", sides.rhs.coefficient_of(mono).str()}};
    });
  }
  return tally.finish();
}

/// The scanning enumeration used by the corollary covers the support exactly
/// once in both re-indexings:
///   sum over (l, n), |n| = 0        <->  sum over (l, m in Z^{r-1}, p + q = m_{r-1}) of n = (m-, p, q)
///   sum over l in N^r               <->  sum over (k in N^{r-1}, p + q = k_{r-1}) of l = (k-, p, q)
/// Each is checked as: every nonzero entry visited exactly once, no other key
/// visited, and the weighted sums agree.
inline std::vector<Check> check_reindexing(const GrCoefficients& a) {
  const int r = a.depth;
  if (r < 2) {
    throw AlgebraError("check_reindexing: depth must be at least 2");
  }
  const std::string tag = "depth " + std::to_string(r) + ": ";
  auto weight = [](const MultiIndex& l, const MultiIndex& n) {
    Integer w = 1;
    for (std::size_t i = 0; i < l.size(); ++i) {
      w += Integer(static_cast<long>((i + 1) * (i + 2))) * (l[i] + 3 * n[i]);
    }
    return w;
  };
  Integer direct = 0;
  detail::Box l_box;
  detail::Box m_box;
  detail::Box k_box;
  int pmin = 0;
  int pmax = 0;
  for (const auto& [key, c] : a.entries) {
    direct += c * weight(key.l, key.m);
    l_box.include(key.l);
    MultiIndex m(key.m.begin(), key.m.end() - 1);
    m.back() += key.m.back();
    m_box.include(m);
    k_box.include(detail::merge_last(key.l));
    pmin = std::min(pmin, key.m[r - 2]);
    pmax = std::max(pmax, key.m[r - 2]);
  }

  std::vector<Check> out;
  {
    CheckTally tally(tag + "re-indexing n = (m-, p, q) with p + q = m_{r-1} enumerates the support once");
    std::map<GrKey, int> visits;
    Integer reindexed = 0;
    detail::for_each_in_box(m_box, [&](const MultiIndex& m) {
      if (index_weight(m) != 0) {
        return;
      }
      for (int p = pmin; p <= pmax; ++p) {
        const MultiIndex n = detail::split_last(m, p, m.back() - p);
        detail::for_each_in_box(l_box, [&](const MultiIndex& l) {
          const Integer c = a.at(l, n);
          if (c != 0) {
            ++visits[GrKey{l, n}];
            reindexed += c * weight(l, n);
          }
        });
      }
    });
    for (const auto& [key, c] : a.entries) {
      const auto it = visits.find(key);
      const int count = it == visits.end() ? 0 : it->second;
      tally.expect(count == 1, [&] {
        auto w = detail::lm_json(key.l, key.m);
        w["visits"] = count;
        return w;
      });
    }
    tally.expect(visits.size() == a.entries.size() && reindexed == direct, [&] {
      return nlohmann::json{{"direct", direct.get_str()}, {"reindexed", reindexed.get_str()}};
    });
    out.push_back(tally.finish());
  }
  {
    CheckTally tally(tag + "re-indexing l = (k-, p, q) with p + q = k_{r-1} enumerates the support once");
    std::map<GrKey, int> visits;
    Integer reindexed = 0;
    k_box.lo = MultiIndex(r - 1, 0);
    detail::for_each_in_box(k_box, [&](const MultiIndex& k) {
      for (int p = 0; p <= k.back(); ++p) {
        const MultiIndex l = detail::split_last(k, p, k.back() - p);
        for (const auto& [key, c] : a.entries) {
          if (key.l == l) {
            ++visits[key];
            reindexed += c * weight(key.l, key.m);
          }
        }
      }
    });
    for (const auto& [key, c] : a.entries) {
      const auto it = visits.find(key);
      const int count = it == visits.end() ? 0 : it->second;
      tally.expect(count == 1, [&] {
        auto w = detail::lm_json(key.l, key.m);
        w["visits"] = count;
        return w;
      });
    }
    tally.expect(reindexed == direct, [&] {
      return nlohmann::json{{"direct", direct.get_str()}, {"reindexed", reindexed.get_str()}};
    });
    out.push_back(tally.finish());
  }
  return out;
}

/// zeta_r^des(s) = sum a^r_{l,m} (prod_j (s_j)_{l_j}) zeta(s + m), kept symbolic.
struct DesingExpression {
  struct Term {
    Integer coef;
    MultiIndex l;
    MultiIndex m;
    friend bool operator==(const Term&, const Term&) = default;
  };

  int depth = 0;
  std::vector<Term> terms;

  friend bool operator==(const DesingExpression&, const DesingExpression&) = default;

  nlohmann::json to_json() const {
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : terms) {
      nlohmann::json coef;
      if (t.coef.fits_slong_p()) {
        coef = t.coef.get_si();
      } else {
        coef = t.coef.get_str();
      }
      ts.push_back({{"coef", coef}, {"l", t.l}, {"m", t.m}});
    }
    return {{"depth", depth}, {"terms", ts}};
  }

  static DesingExpression from_json(const nlohmann::json& j) {
    DesingExpression e;
    e.depth = j.at("depth").get<int>();
    for (const auto& t : j.at("terms")) {
      Term term;
      const auto& c = t.at("coef");
      term.coef = c.is_string() ? Integer(c.get<std::string>()) : Integer(c.get<long>());
      term.l = t.at("l").get<MultiIndex>();
      term.m = t.at("m").get<MultiIndex>();
      if (static_cast<int>(term.l.size()) != e.depth || static_cast<int>(term.m.size()) != e.depth) {
        throw AlgebraError("DesingExpression: term arity does not match depth");
      }
      e.terms.push_back(std::move(term));
    }
    return e;
  }

  std::string to_text() const {
    std::string out = "zeta_" + std::to_string(depth) + "^des(s) =";
    if (terms.empty()) {
      return out + " 0\n";
    }
    for (const auto& t : terms) {
      out += t.coef < 0 ? " - " : " + ";
      const Integer mag = abs(t.coef);
      std::string factors;
      for (int j = 0; j < depth; ++j) {
        if (t.l[j] != 0) {
          factors += "(s" + std::to_string(j + 1) + ")_" + std::to_string(t.l[j]) + "*";
        }
      }
      if (mag != 1) {
        out += mag.get_str() + "*";
      }
      out += factors + "zeta(";
      for (int j = 0; j < depth; ++j) {
        out += (j ? ", s" : "s") + std::to_string(j + 1);
        if (t.m[j] > 0) {
          out += "+" + std::to_string(t.m[j]);
        } else if (t.m[j] < 0) {
          out += std::to_string(t.m[j]);
        }
      }
      out += ")";
    }
    return out + "\n";
  }
};

inline DesingExpression desing_expression(const GrCoefficients& a) {
  DesingExpression e;
  e.depth = a.depth;
  for (const auto& [key, c] : a.entries) {
    e.terms.push_back({c, key.l, key.m});
  }
  return e;
}

inline DesingExpression desing_expression(int r) { return desing_expression(a_coeffs(r)); }

} // namespace mzv
