#pragma once

// Pass/fail records produced by every identity check.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mzv {

/// One named identity checked over some number of instances. Failed iff a
/// witness is present; the witness reproduces the first failing instance.
struct Check {
  std::string description;
  std::size_t instances = 0;
  std::optional<nlohmann::json> witness;

  bool passed() const { return !witness.has_value(); }

  nlohmann::json to_json() const {
    nlohmann::json j{{"description", description},
                     {"instances", instances},
                     {"status", passed() ? "pass" : "fail"}};
    if (witness) {
      j["witness"] = *witness;
    }
    return j;
  }

  static Check from_json(const nlohmann::json& j) {
    Check c;
    c.description = j.at("description").get<std::string>();
    c.instances = j.at("instances").get<std::size_t>();
    if (j.contains("witness")) {
      c.witness = j.at("witness");
    }
    return c;
  }
};

/// Accumulates instances of one identity into a Check.
class CheckTally {
public:
  explicit CheckTally(std::string description) { check_.description = std::move(description); }

  void pass() { ++check_.instances; }

  void fail(nlohmann::json witness) {
    ++check_.instances;
    ++failures_;
    if (!check_.witness) {
      check_.witness = std::move(witness);
    }
  }

  template <typename WitnessFn>
  void expect(bool ok, WitnessFn&& make_witness) {
    if (ok) {
      pass();
    } else {
      fail(make_witness());
    }
  }

  Check finish() const {
    Check out = check_;
    if (out.witness) {
      (*out.witness)["failures"] = failures_;
    }
    return out;
  }

private:
  Check check_;
  std::size_t failures_ = 0;
};

struct IdentityReport {
  std::string suite;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Check> checks;
  double elapsed_ms = 0.0;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed()) {
        return false;
      }
    }
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) {
      cs.push_back(c.to_json());
    }
    return {{"suite", suite},
            {"parameters", parameters},
            {"status", passed() ? "pass" : "fail"},
            {"elapsed_ms", elapsed_ms},
            {"checks", cs}};
  }

  static IdentityReport from_json(const nlohmann::json& j) {
    IdentityReport r;
    r.suite = j.at("suite").get<std::string>();
    r.parameters = j.at("parameters");
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    for (const auto& c : j.at("checks")) {
      r.checks.push_back(Check::from_json(c));
    }
    return r;
  }

  std::string summary() const {
    std::ostringstream os;
    std::size_t instances = 0;
    for (const auto& c : checks) {
      instances += c.instances;
    }
    os << (passed() ? "PASS " : "FAIL ") << suite << "  (" << checks.size() << " checks, " << instances
       << " instances, " << static_cast<long>(elapsed_ms) << " ms)\n";
    for (const auto& c : checks) {
      if (!c.passed()) {
        os << "  FAIL " << c.description << "\n    witness: " << c.witness->dump() << '\n';
      }
    }
    return os.str();
  }
};

} // namespace mzv
