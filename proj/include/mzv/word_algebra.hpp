#pragma once

// Words over {d, y}, the product
//   1 sh w = w sh 1 = w,  yu sh v = u sh yv = y(u sh v),  du sh dv = d(u sh dv) - u sh d^2 v,
// and the character phi into Laurent series built from x(z) = e^z/(1 - e^z).

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mzv/report.hpp"
#include "mzv/uni_series.hpp"

namespace mzv {

using Word = std::string;

inline Word parse_word(std::string_view text) {
  for (char c : text) {
    if (c != 'd' && c != 'y') {
      throw AlgebraError("word: letter '" + std::string(1, c) + "' is not in {d, y}");
    }
  }
  return Word(text);
}

class WordSum {
public:
  WordSum() = default;
  explicit WordSum(const Word& w, const Rational& c = 1) { add(w, c); }

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Word& w, const Rational& c) {
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) {
        terms_.erase(it);
      }
    }
  }

  WordSum& operator+=(const WordSum& o) {
    for (const auto& [w, c] : o.terms_) {
      add(w, c);
    }
    return *this;
  }
  WordSum& operator-=(const WordSum& o) {
    for (const auto& [w, c] : o.terms_) {
      add(w, -c);
    }
    return *this;
  }
  friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }
  friend WordSum operator-(WordSum a, const WordSum& b) { return a -= b; }
  friend WordSum operator*(const Rational& s, const WordSum& a) {
    WordSum out;
    for (const auto& [w, c] : a.terms_) {
      out.add(w, s * c);
    }
    return out;
  }
  friend bool operator==(const WordSum&, const WordSum&) = default;

  /// letter . w for every word w
  WordSum prepend(char letter) const {
    WordSum out;
    for (const auto& [w, c] : terms_) {
      out.terms_.emplace(letter + w, c);
    }
    return out;
  }

  /// e.g. "dydy - yddy", "1" for the empty word, "0" for the empty sum
  std::string str() const {
    if (terms_.empty()) {
      return "0";
    }
    std::string out;
    for (const auto& [w, c] : terms_) {
      const bool negative = c.sign() < 0;
      if (out.empty()) {
        out += negative ? "-" : "";
      } else {
        out += negative ? " - " : " + ";
      }
      const Rational mag = negative ? -c : c;
      const std::string word = w.empty() ? "1" : w;
      if (mag == Rational(1)) {
        out += word;
      } else {
        out += mag.str() + "*" + word;
      }
    }
    return out;
  }

private:
  std::map<Word, Rational> terms_;
};

namespace detail {

using ShuffleMemo = std::map<std::pair<Word, Word>, WordSum>;

inline WordSum shuffle0(const Word& u, const Word& v, ShuffleMemo& memo) {
  if (u.empty()) {
    return WordSum(v);
  }
  if (v.empty()) {
    return WordSum(u);
  }
  auto key = std::make_pair(u, v);
  if (auto it = memo.find(key); it != memo.end()) {
    return it->second;
  }
  WordSum out;
  if (u[0] == 'y') {
    out = shuffle0(u.substr(1), v, memo).prepend('y');
  } else if (v[0] == 'y') {
    out = shuffle0(u, v.substr(1), memo).prepend('y');
  } else {
    const Word rest = u.substr(1);
    out = shuffle0(rest, v, memo).prepend('d') - shuffle0(rest, 'd' + v, memo);
  }
  memo.emplace(std::move(key), out);
  return out;
}

} // namespace detail

inline WordSum shuffle0(const Word& u, const Word& v) {
  detail::ShuffleMemo memo;
  return detail::shuffle0(parse_word(u), parse_word(v), memo);
}

inline WordSum shuffle0(const WordSum& a, const WordSum& b) {
  detail::ShuffleMemo memo;
  WordSum out;
  for (const auto& [u, cu] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      out += (cu * cv) * detail::shuffle0(u, v, memo);
    }
  }
  return out;
}

namespace detail {

// phi(d^{k_1} y ... d^{k_r} y) with x(z) known through `pad` degrees beyond N.
inline LaurentUniSeries phi_with_padding(const Word& w, int n, int pad) {
  std::vector<int> ks;
  int run = 0;
  for (char c : w) {
    if (c == 'd') {
      ++run;
    } else {
      ks.push_back(run);
      run = 0;
    }
  }
  auto diff = [](LaurentUniSeries f, int k) {
    for (int i = 0; i < k; ++i) {
      f = f.derivative();
    }
    return f;
  };
  const LaurentUniSeries x = x_of_z(n + pad);
  LaurentUniSeries f = x;
  for (std::size_t i = ks.size(); i-- > 1;) {
    f = x * diff(f, ks[i]);
  }
  return diff(f, ks[0]);
}

} // namespace detail

/// phi(w) exact through degree n. Zero on nonempty words ending in d, 1 on the
/// empty word.
inline LaurentUniSeries phi(const Word& word, int n) {
  const Word w = parse_word(word);
  if (w.empty()) {
    return LaurentUniSeries::constant(1, n);
  }
  if (w.back() == 'd') {
    return LaurentUniSeries(n);
  }
  int pad = static_cast<int>(w.size()) + 1;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const LaurentUniSeries f = detail::phi_with_padding(w, n, pad);
    if (f.precision() >= n) {
      return f.truncated(n);
    }
    pad += n - f.precision();
  }
  throw AlgebraError("phi: insufficient order for " + w + " through degree " + std::to_string(n));
}

inline LaurentUniSeries phi(const WordSum& s, int n) {
  LaurentUniSeries out(std::map<int, Rational>{}, n);
  for (const auto& [w, c] : s.terms()) {
    out = out + c * phi(w, n);
  }
  return out;
}

/// Number of letters in a word, an upper bound on the pole order of phi(word).
inline int pole_bound(const Word& w) { return static_cast<int>(w.size()); }

inline nlohmann::json laurent_json(const LaurentUniSeries& s) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [deg, c] : s.terms()) {
    j[std::to_string(deg)] = c.str();
  }
  return j;
}

/// phi(u sh v) - phi(u) phi(v) through degree n.
inline LaurentUniSeries phi_residual(const Word& u, const Word& v, int n) {
  const LaurentUniSeries lhs = phi(shuffle0(u, v), n);
  const LaurentUniSeries rhs = phi(u, n + pole_bound(v)) * phi(v, n + pole_bound(u));
  return (lhs - rhs).truncated(n);
}

inline Check check_phi_multiplicative(const std::vector<std::pair<Word, Word>>& pairs, int n) {
  CheckTally tally("phi(u sh v) = phi(u) phi(v) through degree " + std::to_string(n));
  for (const auto& [u, v] : pairs) {
    const LaurentUniSeries residual = phi_residual(u, v, n);
    tally.expect(residual.is_zero(), [&] {
      return nlohmann::json{{"u", u}, {"v", v}, {"residual", laurent_json(residual)}};
    });
  }
  return tally.finish();
}

inline Check check_phi_multiplicative(const Word& u, const Word& v, int n) {
  return check_phi_multiplicative({{u, v}}, n);
}

/// phi(u sh v - v sh u) = 0. The product itself is not commutative on words;
/// the commutators lie in the kernel of phi.
inline Check check_phi_commutative(const std::vector<Word>& words, int n) {
  CheckTally tally("phi(u sh v - v sh u) = 0 through degree " + std::to_string(n));
  for (const auto& u : words) {
    for (const auto& v : words) {
      const WordSum commutator = shuffle0(u, v) - shuffle0(v, u);
      const LaurentUniSeries image = commutator.is_zero() ? LaurentUniSeries(n) : phi(commutator, n);
      tally.expect(image.is_zero(), [&] {
        return nlohmann::json{{"u", u}, {"v", v}, {"commutator", commutator.str()}, {"image", laurent_json(image)}};
      });
    }
  }
  return tally.finish();
}

/// phi(d(u sh v)) = phi(du sh v) + phi(u sh dv): the images of the ideal
/// generators vanish.
inline Check check_leibniz(const std::vector<std::pair<Word, Word>>& pairs, int n) {
  CheckTally tally("phi(d(u sh v) - du sh v - u sh dv) = 0 through degree " + std::to_string(n));
  for (const auto& [u, v] : pairs) {
    const WordSum gen = shuffle0(u, v).prepend('d') - shuffle0('d' + u, v) - shuffle0(u, 'd' + v);
    const LaurentUniSeries image = phi(gen, n);
    tally.expect(image.is_zero(), [&] {
      return nlohmann::json{{"u", u}, {"v", v}, {"generator", gen.str()}, {"image", laurent_json(image)}};
    });
  }
  return tally.finish();
}

/// All words of length 1..max_len ending in y, shortest first.
inline std::vector<Word> words_ending_in_y(int max_len) {
  std::vector<Word> out;
  std::vector<Word> layer{""};
  for (int len = 1; len <= max_len; ++len) {
    for (const auto& w : layer) {
      out.push_back(w + 'y');
    }
    std::vector<Word> next;
    for (const auto& w : layer) {
      next.push_back(w + 'd');
      next.push_back(w + 'y');
    }
    layer = std::move(next);
  }
  return out;
}

/// All words over {d, y} of length 0..max_len.
inline std::vector<Word> all_words(int max_len) {
  std::vector<Word> out{""};
  std::vector<Word> layer{""};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      next.push_back(w + 'd');
      next.push_back(w + 'y');
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

struct AssociativityTally {
  std::size_t triples = 0;
  std::size_t associative = 0;
  nlohmann::json first_counterexample;
};

/// (u sh v) sh w against u sh (v sh w) on word representatives.
inline AssociativityTally survey_associativity(const std::vector<Word>& words) {
  AssociativityTally t;
  for (const auto& u : words) {
    for (const auto& v : words) {
      for (const auto& w : words) {
        ++t.triples;
        const WordSum left = shuffle0(shuffle0(u, v), WordSum(w));
        const WordSum right = shuffle0(WordSum(u), shuffle0(v, w));
        if (left == right) {
          ++t.associative;
        } else if (t.first_counterexample.is_null()) {
          t.first_counterexample = {{"u", u}, {"v", v}, {"w", w}, {"left", left.str()}, {"right", right.str()}};
        }
      }
    }
  }
  return t;
}

} // namespace mzv
