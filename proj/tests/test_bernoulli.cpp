#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "mzv/bernoulli.hpp"
#include "mzv/uni_series.hpp"

using mzv::Integer;
using mzv::Rational;

TEST(Bernoulli, LeadingValues) {
  EXPECT_EQ(mzv::bernoulli(0), Rational(1));
  EXPECT_EQ(mzv::bernoulli(1), Rational(Integer(-1), Integer(2)));
  EXPECT_EQ(mzv::bernoulli(2), Rational(Integer(1), Integer(6)));
  EXPECT_EQ(mzv::bernoulli(4), Rational(Integer(-1), Integer(30)));
  EXPECT_EQ(mzv::bernoulli(12), Rational(Integer(-691), Integer(2730)));
}

TEST(Bernoulli, OddValuesVanish) {
  for (std::size_t m = 3; m <= 41; m += 2) {
    EXPECT_TRUE(mzv::bernoulli(m).is_zero()) << m;
  }
}

TEST(Bernoulli, ConvolutionRecurrence) {
  for (long m = 1; m <= 40; ++m) {
    Rational acc;
    for (long j = 0; j <= m; ++j) {
      acc += Rational(mzv::binomial(m + 1, j)) * mzv::bernoulli(static_cast<std::size_t>(j));
    }
    EXPECT_TRUE(acc.is_zero()) << m;
  }
}

TEST(Bernoulli, ExponentialGeneratingFunction) {
  constexpr int n = 20;
  std::map<int, Rational> egf;
  Rational inv_fact = 1;
  for (int m = 0; m <= n; ++m) {
    egf.emplace(m, mzv::bernoulli(static_cast<std::size_t>(m)) * inv_fact);
    inv_fact /= Rational(m + 1);
  }
  // (e^x - 1)/x through degree n
  const mzv::UniSeries shifted = mzv::uni_exp_minus_one(n + 1).shifted_down(1);
  const mzv::UniSeries product = mzv::UniSeries(egf, n) * shifted;
  EXPECT_EQ(product, mzv::UniSeries::constant(1, n));
}

TEST(Bernoulli, IdempotentAndOrderIndependent) {
  mzv::BernoulliCache a;
  mzv::BernoulliCache b;
  const Rational high = a(30);
  for (std::size_t m = 0; m <= 30; ++m) {
    EXPECT_EQ(a(m), b(m));
  }
  EXPECT_EQ(a(30), high);
}

TEST(Bernoulli, ConcurrentReadersSeeConsistentValues) {
  mzv::BernoulliCache shared;
  mzv::BernoulliCache reference;
  std::vector<std::vector<Rational>> seen(4);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t m = 0; m <= 24; ++m) {
        seen[w].push_back(shared((m * (w + 3)) % 25));
      }
    });
  }
  for (auto& t : workers) {
    t.join();
  }
  for (int w = 0; w < 4; ++w) {
    for (std::size_t m = 0; m <= 24; ++m) {
      EXPECT_EQ(seen[w][m], reference((m * (w + 3)) % 25));
    }
  }
}

TEST(Bernoulli, InjectedFaultOnlyChangesOneEntry) {
  mzv::BernoulliCache cache;
  mzv::BernoulliCache clean;
  cache.inject_fault(6, Rational(5));
  EXPECT_EQ(cache(6), Rational(5));
  EXPECT_EQ(cache(8), clean(8));
  EXPECT_EQ(cache(4), clean(4));
}
