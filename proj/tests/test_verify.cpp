#include <algorithm>

#include <gtest/gtest.h>

#include "mzv/verify.hpp"

using mzv::Integer;
using mzv::MultiIndex;
using mzv::Rational;
using mzv::VerifyConfig;

namespace {

Rational frac(long p, long q) { return Rational(Integer(p), Integer(q)); }

VerifyConfig only(std::vector<std::string> suites) {
  VerifyConfig c;
  c.suites = std::move(suites);
  return c;
}

nlohmann::json without_timing(std::vector<mzv::IdentityReport> reports) {
  for (auto& r : reports) {
    r.elapsed_ms = 0;
  }
  return mzv::reports_json(reports);
}

} // namespace

TEST(Terms, ShuffleProductSmallCases) {
  const auto t = mzv::shuffle_product_terms({0}, {0});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].index, (MultiIndex{0, 0}));
  EXPECT_EQ(t[0].coef, Rational(1));

  // k = (a), l = (b, c) with b = 1, c = 0: terms (a, 1, 0) and -(a+1, 0, 0)
  const auto u = mzv::shuffle_product_terms({2}, {1, 0});
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(u[0].index, (MultiIndex{2, 1, 0}));
  EXPECT_EQ(u[0].coef, Rational(1));
  EXPECT_EQ(u[1].index, (MultiIndex{3, 0, 0}));
  EXPECT_EQ(u[1].coef, Rational(-1));
}

TEST(Terms, InversionMatchesProductWithDepthOne) {
  for (int l = 0; l <= 4; ++l) {
    auto a = mzv::q1_inversion_terms({1, 2}, l);
    auto b = mzv::shuffle_product_terms({1, 2}, {l});
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b) << l;
  }
}

TEST(ValueMemo, AgreesWithDirectRoutes) {
  mzv::ValueMemo memo(mzv::default_bernoulli());
  EXPECT_EQ(memo.des({0, 0}), frac(1, 4));
  EXPECT_EQ(memo.des({1, 2}), mzv::zeta_des({1, 2}));
  EXPECT_EQ(memo.ems({1}), frac(-1, 12));
  EXPECT_EQ(memo.ems({0, 0}), frac(1, 4));
  EXPECT_EQ(memo.ems({2, 1}), mzv::zeta_ems({2, 1}));
}

TEST(Suites, RecurrenceExamples) {
  mzv::ValueMemo memo(mzv::default_bernoulli());
  // zeta_2(0,0) = zeta_1(0)^2
  EXPECT_EQ(memo.des({0, 0}), memo.des({0}) * memo.des({0}));
  const auto r = mzv::verify_recurrence(memo, {{2, 4}, {4, 2}});
  EXPECT_TRUE(r.passed()) << r.summary();
  EXPECT_EQ(r.checks[0].instances, 25u);
  EXPECT_EQ(r.checks[1].instances, 81u);
}

TEST(Suites, ShuffleBothOrders) {
  mzv::ValueMemo memo(mzv::default_bernoulli());
  const auto r = mzv::verify_shuffle_product(memo, {{1, 2}, {2, 1}, {2, 2}}, 2);
  EXPECT_TRUE(r.passed()) << r.summary();
}

TEST(Suites, IntroRecurrenceAndInversion) {
  mzv::ValueMemo memo(mzv::default_bernoulli());
  EXPECT_TRUE(mzv::verify_intro_recurrence(memo, 3, 3).passed());
  const auto q = mzv::verify_q1_inversion(memo, 3, 2);
  EXPECT_TRUE(q.passed()) << q.summary();
  EXPECT_EQ(q.checks.size(), 4u);
}

TEST(Suites, Lemma11AndConversion) {
  const auto l = mzv::verify_lemma11({{2, 3}, {3, 3}});
  EXPECT_TRUE(l.passed()) << l.summary();
  const auto c = mzv::verify_conversion(mzv::default_bernoulli(), 3, 3, 10);
  EXPECT_TRUE(c.passed()) << c.summary();
}

TEST(Suites, EmsShuffleExamples) {
  mzv::ValueMemo memo(mzv::default_bernoulli());
  EXPECT_EQ(memo.ems({0}) * memo.ems({0}), memo.ems({0, 0}));
  const auto r = mzv::verify_ems_shuffle_examples(memo, 2);
  EXPECT_TRUE(r.passed()) << r.summary();
  EXPECT_EQ(r.checks[0].instances, 9u);
  EXPECT_EQ(r.checks[1].instances, 27u);
}

TEST(Suites, RoutesWitnessCarriesIndexAndBothSides) {
  mzv::BernoulliCache bern;
  bern.inject_fault(3, frac(1, 5));
  mzv::ValueMemo memo(bern);
  const auto r = mzv::verify_routes(memo, 2, 2);
  ASSERT_FALSE(r.passed());
  const auto& w = *r.checks[0].witness;
  EXPECT_EQ(w.at("index"), nlohmann::json::array({2}));
  EXPECT_EQ(w.at("series"), "0");
  EXPECT_EQ(w.at("bernoulli_sum"), "1/5");
}

TEST(RunAll, EmptyConfigGivesNoReports) { EXPECT_TRUE(mzv::run_all(VerifyConfig{}).empty()); }

TEST(RunAll, RejectsUnknownSuite) { EXPECT_THROW(mzv::run_all(only({"nope"})), mzv::AlgebraError); }

TEST(RunAll, DefaultConfigPasses) {
  const auto reports = mzv::run_all(VerifyConfig::all());
  EXPECT_EQ(reports.size(), mzv::suite_names().size());
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}

TEST(RunAll, DeterministicAndOrderIndependentOfThreads) {
  auto par = VerifyConfig::all();
  auto seq = VerifyConfig::all();
  seq.parallel = false;
  const auto a = without_timing(mzv::run_all(par));
  const auto b = without_timing(mzv::run_all(seq));
  const auto c = without_timing(mzv::run_all(par));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a.dump(), c.dump());
}

TEST(RunAll, BernoulliFaultFailsWithWitness) {
  for (std::size_t m : {0u, 1u, 2u, 4u, 7u, 12u, 33u, 41u, 64u, 90u}) {
    auto cfg = VerifyConfig::all();
    cfg.bernoulli_faults[m] = mzv::bernoulli(m) + Rational(1);
    const auto reports = mzv::run_all(cfg);
    EXPECT_FALSE(mzv::all_passed(reports)) << m;
    bool witnessed = false;
    for (const auto& r : reports) {
      for (const auto& c : r.checks) {
        witnessed = witnessed || c.witness.has_value();
      }
    }
    EXPECT_TRUE(witnessed) << m;
  }
}

TEST(RunAll, FaultInLowIndexReachesValueSuites) {
  auto cfg = only({"depth1", "routes", "conversion"});
  cfg.bernoulli_faults[4] = frac(1, 7);
  const auto reports = mzv::run_all(cfg);
  for (const auto& r : reports) {
    EXPECT_FALSE(r.passed()) << r.suite;
  }
}

TEST(RunAll, OverridesShrinkWork) {
  auto cfg = only({"recurrence", "shuffle", "words", "gr"});
  cfg.depth = 2;
  cfg.max_weight = 1;
  cfg.truncation = 4;
  const auto reports = mzv::run_all(cfg);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_TRUE(mzv::all_passed(reports));
  EXPECT_EQ(reports[0].checks.size(), 1u);
  EXPECT_EQ(reports[0].checks[0].instances, 4u);
  EXPECT_EQ(reports[1].checks.size(), 1u);
  EXPECT_EQ(reports[3].parameters.at("max_depth"), 2);
  auto bad = cfg;
  bad.depth = 0;
  EXPECT_THROW(mzv::run_all(bad), mzv::AlgebraError);
}

TEST(IdentityReport, JsonRoundTrip) {
  const auto reports = mzv::run_all(only({"pochhammer", "gr"}));
  for (const auto& r : reports) {
    const auto j = r.to_json();
    EXPECT_EQ(j.at("status"), "pass");
    const auto back = mzv::IdentityReport::from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.to_json().dump(), j.dump());
  }
}
