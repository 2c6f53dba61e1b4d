#pragma once

// The mzv command line: values, verify, gr-coeffs, convert, shuffle.
// Exit codes: 0 success, 1 an identity failed, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mzv/genfun.hpp"
#include "mzv/gr_coeff.hpp"
#include "mzv/verify.hpp"
#include "mzv/word_algebra.hpp"

namespace mzv::cli {

enum class Format { json, csv, text };

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Format parse_format(const std::string& s) {
  if (s == "json") {
    return Format::json;
  }
  if (s == "csv") {
    return Format::csv;
  }
  if (s == "text") {
    return Format::text;
  }
  throw UsageError("unknown format '" + s + "'");
}

/// Writes `body` to `path` through a temporary sibling and a rename, so a
/// failed run never leaves a partial file behind.
inline void write_atomically(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    f << body;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, target);
}

struct Emitter {
  std::ostream& out;
  std::string path;

  void emit(const std::string& body) const {
    if (path.empty()) {
      out << body;
    } else {
      write_atomically(path, body);
    }
  }
};

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- values

inline int cmd_values(const std::string& family, int depth, int max_weight, Format fmt, const Emitter& em) {
  const ValueTable table = make_value_table(parse_family(family), depth, max_weight);
  switch (fmt) {
  case Format::json:
    em.emit(dump(table.to_json()));
    break;
  case Format::csv:
    em.emit(table.to_csv());
    break;
  case Format::text:
    em.emit(table.to_text());
    break;
  }
  return 0;
}

// ---------------------------------------------------------------- gr-coeffs

inline int cmd_gr_coeffs(int depth, Format fmt, const Emitter& em) {
  const DesingExpression e = desing_expression(depth);
  std::ostringstream os;
  switch (fmt) {
  case Format::json:
    os << dump(e.to_json());
    break;
  case Format::csv:
    for (int j = 1; j <= depth; ++j) {
      os << "l" << j << ",";
    }
    for (int j = 1; j <= depth; ++j) {
      os << "m" << j << ",";
    }
    os << "a\n";
    for (const auto& t : e.terms) {
      for (int x : t.l) {
        os << x << ",";
      }
      for (int x : t.m) {
        os << x << ",";
      }
      os << t.coef.get_str() << "\n";
    }
    break;
  case Format::text:
    for (const auto& t : e.terms) {
      os << "l=" << index_str(t.l) << " m=" << index_str(t.m) << " a=" << t.coef.get_str() << "\n";
    }
    os << e.to_text();
    break;
  }
  em.emit(os.str());
  return 0;
}

// ---------------------------------------------------------------- convert

/// Depth-1 values of both families and each recovered from the other:
///   EMS(-k)  = sum_{i+j=k} C(k,i) (-1)^j/(i+1) FKMT(-j)
///   FKMT(-k) = (-1)^k sum_{i+j=k} C(k,i) B_i EMS(-j)
inline int cmd_convert(int max_weight, Format fmt, const Emitter& em) {
  const auto zf = z_fkmt(1, max_weight);
  const auto ze = z_ems(1, max_weight);
  auto fkmt = [&](int j) { return value_from_series(zf, {j}); };
  auto ems = [&](int j) { return value_from_series(ze, {j}); };
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  std::ostringstream text;
  csv << "k,zeta_des,zeta_EMS,zeta_EMS_from_des,zeta_des_from_EMS\n";
  bool ok = true;
  for (int k = 0; k <= max_weight; ++k) {
    Rational from_des;
    Rational from_ems;
    for (int i = 0; i <= k; ++i) {
      const Rational c(binomial(k, i));
      from_des += c * sign_power(k - i) / Rational(i + 1) * fkmt(k - i);
      from_ems += c * bernoulli(static_cast<std::size_t>(i)) * ems(k - i);
    }
    from_ems *= sign_power(k);
    ok = ok && from_des == ems(k) && from_ems == fkmt(k);
    rows.push_back({{"k", k},
                    {"zeta_des", fkmt(k).str()},
                    {"zeta_EMS", ems(k).str()},
                    {"zeta_EMS_from_des", from_des.str()},
                    {"zeta_des_from_EMS", from_ems.str()}});
    csv << k << "," << fkmt(k).str() << "," << ems(k).str() << "," << from_des.str() << "," << from_ems.str()
        << "\n";
    text << "k=" << k << "  zeta_des(-k) = " << fkmt(k).str() << "  zeta_EMS(-k) = " << ems(k).str()
         << "  EMS from des: " << from_des.str() << "  des from EMS: " << from_ems.str() << "\n";
  }
  switch (fmt) {
  case Format::json:
    em.emit(dump({{"max_weight", max_weight}, {"rows", rows}}));
    break;
  case Format::csv:
    em.emit(csv.str());
    break;
  case Format::text:
    em.emit(text.str());
    break;
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- shuffle

inline int cmd_shuffle(const std::string& u_text, const std::string& v_text, int order, Format fmt,
                       const Emitter& em) {
  Word u;
  Word v;
  try {
    u = parse_word(u_text);
    v = parse_word(v_text);
  } catch (const AlgebraError& e) {
    throw UsageError(e.what());
  }
  const WordSum product = shuffle0(u, v);
  const LaurentUniSeries residual = phi_residual(u, v, order);
  switch (fmt) {
  case Format::json: {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [w, c] : product.terms()) {
      terms[w] = c.str();
    }
    em.emit(dump({{"u", u}, {"v", v}, {"order", order}, {"product", terms}, {"residual", laurent_json(residual)}}));
    break;
  }
  case Format::csv: {
    std::string body = "word,coefficient\n";
    for (const auto& [w, c] : product.terms()) {
      body += w + "," + c.str() + "\n";
    }
    em.emit(body);
    break;
  }
  case Format::text:
    em.emit(product.str() + "\nresidual = " + (residual.is_zero() ? std::string("0") : residual.str()) + "\n");
    break;
  }
  return residual.is_zero() ? 0 : 1;
}

// ---------------------------------------------------------------- verify

inline int cmd_verify(const VerifyConfig& cfg, Format fmt, const Emitter& em, std::ostream& out) {
  const auto reports = run_all(cfg);
  std::string summary;
  for (const auto& r : reports) {
    summary += r.summary();
  }
  summary += all_passed(reports) ? "all suites passed\n" : "FAILED\n";
  std::string body;
  switch (fmt) {
  case Format::json:
    body = dump(reports_json(reports));
    break;
  case Format::csv:
    body = "suite,check,instances,status\n";
    for (const auto& r : reports) {
      for (const auto& c : r.checks) {
        std::string d = c.description;
        for (auto& ch : d) {
          if (ch == ',') {
            ch = ';';
          }
        }
        body += r.suite + "," + d + "," + std::to_string(c.instances) + "," + (c.passed() ? "pass" : "fail") + "\n";
      }
    }
    break;
  case Format::text:
    body = summary;
    break;
  }
  em.emit(body);
  if (!em.path.empty() && fmt != Format::text) {
    out << summary;
  }
  return all_passed(reports) ? 0 : 1;
}

// ---------------------------------------------------------------- entry

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact desingularized and renormalized multiple zeta values at non-positive integers"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", out_path, "write to PATH instead of standard output");
  };

  std::string family = "fkmt";
  int depth = 1;
  int max_weight = 4;
  auto* values = app.add_subcommand("values", "table of values zeta(-k_1, ..., -k_r)");
  values->add_option("--family", family, "fkmt (desingularized) or ems (renormalized)")
      ->check(CLI::IsMember({"fkmt", "ems", "des"}, CLI::ignore_case));
  values->add_option("--depth", depth, "r")->check(CLI::Range(1, 12));
  values->add_option("--max-weight", max_weight, "largest k_i")->check(CLI::Range(0, 200));
  add_common(values);

  int gr_depth = 2;
  auto* gr = app.add_subcommand("gr-coeffs", "integer coefficients a^r_{l,m} and the shifted-zeta expansion");
  gr->add_option("--depth", gr_depth, "r")->check(CLI::Range(1, 8));
  add_common(gr);

  int convert_weight = 10;
  auto* convert = app.add_subcommand("convert", "depth-1 desingularized and renormalized values, each from the other");
  convert->add_option("--max-weight", convert_weight, "largest k")->check(CLI::Range(0, 200));
  add_common(convert);

  std::string u_word;
  std::string v_word;
  int order = 8;
  auto* shuffle = app.add_subcommand("shuffle", "the product of two words and its phi residual");
  shuffle->add_option("u", u_word, "word over {d, y}")->required();
  shuffle->add_option("v", v_word, "word over {d, y}")->required();
  shuffle->add_option("--truncation", order, "phi order N")->check(CLI::Range(0, 200));
  add_common(shuffle);

  std::vector<std::string> suites;
  std::vector<int> faults;
  int v_depth = 0;
  int v_weight = -1;
  int v_order = -1;
  auto* verify = app.add_subcommand("verify", "check identities exactly");
  verify->add_option("--suite", suites, "suite name or 'all' (repeatable)")->take_all();
  auto* depth_opt = verify->add_option("--depth", v_depth, "depth cap for every suite")->check(CLI::Range(1, 8));
  auto* weight_opt = verify->add_option("--max-weight", v_weight, "index cap for every suite")->check(CLI::Range(0, 40));
  auto* order_opt = verify->add_option("--truncation", v_order, "phi order")->check(CLI::Range(0, 60));
  verify->add_option("--inject-bernoulli-fault", faults, "replace B_M by B_M + 1 (repeatable)")
      ->check(CLI::Range(0, 500));
  verify->add_flag("--sequential", "run suites one after another");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const Format fmt = parse_format(format);
    const Emitter em{out, out_path};
    if (*values) {
      return cmd_values(family, depth, max_weight, fmt, em);
    }
    if (*gr) {
      return cmd_gr_coeffs(gr_depth, fmt, em);
    }
    if (*convert) {
      return cmd_convert(convert_weight, fmt, em);
    }
    if (*shuffle) {
      return cmd_shuffle(u_word, v_word, order, fmt, em);
    }
    if (*verify) {
      VerifyConfig cfg;
      if (suites.empty()) {
        suites.push_back("all");
      }
      for (const auto& s : suites) {
        if (s == "all") {
          for (const auto& n : suite_names()) {
            if (std::find(cfg.suites.begin(), cfg.suites.end(), n) == cfg.suites.end()) {
              cfg.suites.push_back(n);
            }
          }
        } else if (!is_suite_name(s)) {
          throw UsageError("unknown suite '" + s + "'");
        } else if (std::find(cfg.suites.begin(), cfg.suites.end(), s) == cfg.suites.end()) {
          cfg.suites.push_back(s);
        }
      }
      if (depth_opt->count()) {
        cfg.depth = v_depth;
      }
      if (weight_opt->count()) {
        cfg.max_weight = v_weight;
      }
      if (order_opt->count()) {
        cfg.truncation = v_order;
      }
      for (int m : faults) {
        const auto idx = static_cast<std::size_t>(m);
        cfg.bernoulli_faults[idx] = bernoulli(idx) + Rational(1);
      }
      cfg.parallel = verify->count("--sequential") == 0;
      return cmd_verify(cfg, fmt, em, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace mzv::cli
