// One PASS/FAIL line per acceptance criterion; exit status 0 only if all pass.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mzv/verify.hpp"

namespace {

using mzv::IdentityReport;
using mzv::Rational;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }

  // Every check passes and the expected number of instances was exercised.
  void require_report(const IdentityReport& r, std::size_t min_instances) {
    std::size_t n = 0;
    for (const auto& c : r.checks) {
      n += c.instances;
      require(c.passed(), r.suite + ": " + c.description + " " + c.to_json().dump());
    }
    require(n >= min_instances,
            r.suite + ": only " + std::to_string(n) + " instances, expected " + std::to_string(min_instances));
  }
};

struct Criterion {
  int id;
  double limit_s;
  std::function<Outcome()> body;
};

Rational q(long p, long d) { return Rational(mzv::Integer(p), mzv::Integer(d)); }

// Reference Bernoulli numbers B_0..B_21, B_1 = -1/2.
std::vector<Rational> reference_bernoulli() {
  std::vector<Rational> b(22);
  b[0] = q(1, 1);
  b[1] = q(-1, 2);
  const std::vector<std::pair<long, long>> even{{1, 6},        {-1, 30},     {1, 42},        {-1, 30}, {5, 66},
                                                {-691, 2730},  {7, 6},       {-3617, 510},   {43867, 798},
                                                {-174611, 330}};
  for (std::size_t i = 0; i < even.size(); ++i) {
    b[2 * (i + 1)] = q(even[i].first, even[i].second);
  }
  return b;
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "mzv");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = mzv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) {
    *out_text = out.str();
  }
  return code;
}

Outcome ac1() {
  Outcome o;
  const auto ref = reference_bernoulli();
  const auto z = mzv::z_fkmt(1, 20);
  for (int k = 0; k <= 20; ++k) {
    const Rational want = mzv::sign_power(k) * ref[static_cast<std::size_t>(k + 1)];
    o.require(mzv::value_from_series(z, {k}) == want, "series route at k=" + std::to_string(k));
    o.require(mzv::zeta_des_bernoulli_sum({k}) == want, "Bernoulli-sum route at k=" + std::to_string(k));
  }
  mzv::ValueMemo memo(mzv::default_bernoulli());
  o.require_report(mzv::verify_depth1(memo, 20), 63);
  return o;
}

Outcome ac2() {
  Outcome o;
  mzv::ValueMemo memo(mzv::default_bernoulli());
  o.require_report(mzv::verify_routes(memo, 3, 4), 5 + 25 + 125);
  return o;
}

Outcome ac3() {
  Outcome o;
  mzv::ValueMemo memo(mzv::default_bernoulli());
  o.require_report(mzv::verify_recurrence(memo, {{2, 4}, {3, 4}, {4, 2}}), 25 + 125 + 81);
  return o;
}

Outcome ac4() {
  Outcome o;
  mzv::ValueMemo memo(mzv::default_bernoulli());
  o.require_report(mzv::verify_shuffle_product(memo, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}, 3), 16 + 64 + 64 + 256);
  return o;
}

Outcome ac5() {
  Outcome o;
  mzv::ValueMemo memo(mzv::default_bernoulli());
  o.require_report(mzv::verify_intro_recurrence(memo, 3, 4), 25 + 125);
  // value check and termwise check, each over (k, l) with depth(k) = 1, 2
  o.require_report(mzv::verify_q1_inversion(memo, 3, 4), 2 * (25 + 125));
  return o;
}

Outcome ac6() {
  Outcome o;
  o.require_report(mzv::verify_conversion(mzv::default_bernoulli(), 3, 5, 10), 6 + 36 + 216 + 22);
  return o;
}

Outcome ac7() {
  Outcome o;
  const auto ref = reference_bernoulli();
  const auto z = mzv::z_ems(1, 20);
  for (int k = 0; k <= 20; ++k) {
    const Rational want = mzv::sign_power(k) * ref[static_cast<std::size_t>(k + 1)] / Rational(k + 1);
    o.require(mzv::value_from_series(z, {k}) == want, "EMS depth 1 at k=" + std::to_string(k));
  }
  mzv::ValueMemo memo(mzv::default_bernoulli());
  o.require_report(mzv::verify_ems_shuffle_examples(memo, 3), 16 + 64);
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto r = mzv::verify_gr(4);
  o.require_report(r, 1);
  o.require(r.parameters.at("support_size").at("4") == 236, "unexpected support size for depth 4");
  std::size_t substitution = 0;
  for (const auto& c : r.checks) {
    substitution += c.description.find("substitution") != std::string::npos;
  }
  o.require(substitution == 3, "substitution identity not run for depths 2..4");
  o.require(r.checks.size() == 4 * 2 + 2 * 4 + 3, "unexpected number of checks: " + std::to_string(r.checks.size()));
  return o;
}

Outcome ac9() {
  Outcome o;
  const auto r = mzv::verify_words(3, 10, 4);
  o.require_report(r, 0);
  o.require(r.checks.at(0).instances == 64, "multiplicativity over all pairs of length <= 3");
  o.require(r.checks.at(1).instances == 49, "Leibniz generators over all pairs of length <= 3");
  return o;
}

Outcome ac10() {
  Outcome o;
  o.require_report(mzv::verify_pochhammer(50, 10), 50 * 11);
  return o;
}

Outcome ac11() {
  Outcome o;
  std::string text;
  o.require(cli({"verify", "--suite", "all"}, &text) == 0, "verify all did not exit 0:\n" + text);
  o.require(text.find("all suites passed") != std::string::npos, "missing summary line");
  // The fixture's cache is filled through B_64.
  for (int m = 0; m <= 64; ++m) {
    std::string json;
    const int code = cli({"verify", "--suite", "all", "--inject-bernoulli-fault", std::to_string(m), "--format", "json"},
                         &json);
    o.require(code == 1, "fault at B_" + std::to_string(m) + " exited " + std::to_string(code));
    bool witnessed = false;
    const auto parsed = nlohmann::json::parse(json);
    for (const auto& rep : parsed.at("reports")) {
      for (const auto& c : rep.at("checks")) {
        witnessed = witnessed || c.contains("witness");
      }
    }
    o.require(witnessed, "fault at B_" + std::to_string(m) + " produced no witness");
  }
  return o;
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, 1, ac1},   {2, 30, ac2},  {3, 60, ac3},  {4, 60, ac4},  {5, 30, ac5},   {6, 60, ac6},
      {7, 10, ac7},  {8, 120, ac8}, {9, 60, ac9},  {10, 5, ac10}, {11, 300, ac11},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.limit_s) {
      o.ok = false;
      o.detail = "over time limit";
    }
    failures += !o.ok;
    std::cout << "AC" << c.id << (c.id < 10 ? "  " : " ") << (o.ok ? "PASS" : "FAIL") << "  " << secs << " s (limit "
              << c.limit_s << " s)";
    if (!o.ok) {
      std::cout << "  " << o.detail;
    }
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
