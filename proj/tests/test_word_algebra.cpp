#include <map>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "mzv/bernoulli.hpp"
#include "mzv/word_algebra.hpp"

using mzv::Integer;
using mzv::LaurentUniSeries;
using mzv::Rational;
using mzv::WordSum;

namespace {

Rational frac(long p, long q) { return Rational(Integer(p), Integer(q)); }

// x(z) = -sum_n (-1)^n B_n z^{n-1} / n!
LaurentUniSeries x_oracle(int n) {
  std::map<int, Rational> terms;
  for (int k = 0; k <= n + 1; ++k) {
    terms[k - 1] = -mzv::sign_power(k) * mzv::bernoulli(static_cast<std::size_t>(k)) /
                   Rational(mzv::factorial(static_cast<unsigned long>(k)));
  }
  return LaurentUniSeries(terms, n);
}

std::vector<std::pair<mzv::Word, mzv::Word>> pairs_of(const std::vector<mzv::Word>& words) {
  std::vector<std::pair<mzv::Word, mzv::Word>> out;
  for (const auto& u : words) {
    for (const auto& v : words) {
      out.emplace_back(u, v);
    }
  }
  return out;
}

} // namespace

TEST(Word, ParseRejectsForeignLetters) {
  EXPECT_EQ(mzv::parse_word("dyy"), "dyy");
  EXPECT_EQ(mzv::parse_word(""), "");
  EXPECT_THROW(mzv::parse_word("a"), mzv::AlgebraError);
  EXPECT_THROW(mzv::shuffle0("dx", "y"), mzv::AlgebraError);
}

TEST(WordSum, Printing) {
  EXPECT_EQ(WordSum().str(), "0");
  EXPECT_EQ(WordSum("").str(), "1");
  EXPECT_EQ((WordSum("dy") - WordSum("y", frac(3, 2))).str(), "dy - 3/2*y");
  EXPECT_EQ((WordSum("yd", -1)).str(), "-yd");
}

TEST(Shuffle0, Examples) {
  EXPECT_EQ(mzv::shuffle0("y", "y"), WordSum("yy"));
  EXPECT_EQ(mzv::shuffle0("dy", "y"), WordSum("ydy"));
  const auto dd = mzv::shuffle0("dy", "dy");
  EXPECT_EQ(dd, WordSum("dydy") - WordSum("yddy"));
  EXPECT_EQ(dd.str(), "dydy - yddy");
  EXPECT_EQ(mzv::shuffle0("", "dyd"), WordSum("dyd"));
  EXPECT_EQ(mzv::shuffle0("yd", ""), WordSum("yd"));
}

TEST(Shuffle0, NotCommutativeOnRepresentatives) {
  const auto a = mzv::shuffle0("dy", "ddy");
  const auto b = mzv::shuffle0("ddy", "dy");
  EXPECT_EQ(a, WordSum("dyddy") - WordSum("ydddy"));
  EXPECT_EQ(b, WordSum("ddydy") - WordSum("dyddy", 2) + WordSum("ydddy"));
  EXPECT_NE(a, b);
  EXPECT_TRUE(mzv::shuffle0("d", "dy").is_zero());
  EXPECT_EQ(mzv::shuffle0("dy", "d"), WordSum("dyd") - WordSum("ydd"));
}

TEST(Shuffle0, CommutativeUnderPhiUpToLengthFour) {
  const auto words = mzv::all_words(4);
  EXPECT_EQ(words.size(), 31u);
  const auto c = mzv::check_phi_commutative(words, 8);
  EXPECT_TRUE(c.passed()) << c.to_json().dump();
  EXPECT_EQ(c.instances, 31u * 31u);
}

TEST(Shuffle0, BilinearExtension) {
  const WordSum a = WordSum("y") + WordSum("dy", 2);
  const WordSum b = WordSum("dy", -1);
  const WordSum expected = Rational(-1) * mzv::shuffle0("y", "dy") + Rational(-2) * mzv::shuffle0("dy", "dy");
  EXPECT_EQ(mzv::shuffle0(a, b), expected);
}

TEST(Phi, SingleLetterMatchesBernoulliOracle) {
  const auto p = mzv::phi("y", 12);
  EXPECT_EQ(p, x_oracle(12));
  EXPECT_EQ(p.coefficient(-1), Rational(-1));
  EXPECT_EQ(p.coefficient(0), frac(-1, 2));
  EXPECT_EQ(p.coefficient(1), frac(-1, 12));
}

TEST(Phi, DerivativeWord) {
  const auto p = mzv::phi("dy", 10);
  EXPECT_EQ(p.coefficient(-2), Rational(1));
  EXPECT_EQ(p.coefficient(-1), Rational(0));
  EXPECT_EQ(p.coefficient(0), frac(-1, 12));
  EXPECT_EQ(p, x_oracle(11).derivative());
}

TEST(Phi, SquareOfX) {
  const auto x = x_oracle(12);
  EXPECT_EQ(mzv::phi("yy", 10), (x * x).truncated(10));
}

TEST(Phi, EmptyAndTrailingD) {
  EXPECT_EQ(mzv::phi("", 5), LaurentUniSeries::constant(1, 5));
  EXPECT_TRUE(mzv::phi("yd", 5).is_zero());
  EXPECT_EQ(mzv::phi("yd", 5).precision(), 5);
}

TEST(Phi, DeepWordsReachRequestedOrder) {
  for (const char* w : {"dddddy", "ydddy", "dydydydy", "yyyyyy"}) {
    const auto p = mzv::phi(w, 10);
    EXPECT_EQ(p.precision(), 10) << w;
  }
  // d^3 y = x''' by the oracle
  EXPECT_EQ(mzv::phi("dddy", 8), x_oracle(11).derivative().derivative().derivative());
}

TEST(Phi, OperatorCompositionOrder) {
  // phi(y dy) = x * x', phi(dy y) = (x*x)'
  const auto x = x_oracle(14);
  EXPECT_EQ(mzv::phi("ydy", 10), (x * x.derivative()).truncated(10));
  EXPECT_EQ(mzv::phi("dyy", 10), (x * x).derivative().truncated(10));
}

TEST(Phi, MultiplicativeOnShortWords) {
  auto words = mzv::words_ending_in_y(3);
  EXPECT_EQ(words.size(), 7u);
  words.insert(words.begin(), "");
  const auto c = mzv::check_phi_multiplicative(pairs_of(words), 10);
  EXPECT_TRUE(c.passed()) << c.to_json().dump();
  EXPECT_EQ(c.instances, 64u);
}

TEST(Phi, MultiplicativityDetectsWrongProduct) {
  // The classical shuffle y sh y = 2yy is not compatible with phi.
  const auto x = mzv::phi("y", 12);
  const auto wrong = mzv::phi(WordSum("yy", 2), 10);
  EXPECT_NE(wrong, (x * x).truncated(10));
}

TEST(Phi, LeibnizGeneratorsVanish) {
  const auto c = mzv::check_leibniz(pairs_of(mzv::words_ending_in_y(3)), 10);
  EXPECT_TRUE(c.passed()) << c.to_json().dump();
  EXPECT_EQ(c.instances, 49u);
}

TEST(Shuffle0, AssociativitySurvey) {
  // Reported rather than required; phi images of both bracketings must agree.
  const auto words = mzv::words_ending_in_y(2);
  const auto t = mzv::survey_associativity(words);
  EXPECT_EQ(t.triples, 27u);
  for (const auto& u : words) {
    for (const auto& v : words) {
      for (const auto& w : words) {
        const auto left = mzv::shuffle0(mzv::shuffle0(u, v), WordSum(w));
        const auto right = mzv::shuffle0(WordSum(u), mzv::shuffle0(v, w));
        EXPECT_EQ(mzv::phi(left, 8), mzv::phi(right, 8));
      }
    }
  }
}
