#pragma once

// spectra command line: invariants, spectrum, count, phi, dominating, scan.
//
// Exit status: 0 on success, 2 for any rejected input (bad flags, invalid
// curves, out-of-range r, family errors), 1 for internal failures.

#include "spectra/spectra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace spectra::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

/// Digits for decimal columns: SPECTRA_DIGITS if set and valid, else 12.
inline unsigned default_digits() {
  if (const char* env = std::getenv("SPECTRA_DIGITS")) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(env, &used);
      if (used == std::string(env).size() && d >= 0 && d <= 1000) return static_cast<unsigned>(d);
    } catch (const std::exception&) {
    }
  }
  return 12;
}

// Integers are JSON numbers only below 2^53 in magnitude.
inline json to_json(const Integer& v) {
  if (bit_length(v) <= 53) return json(v.get_si());
  return json(v.get_str());
}

inline json to_json(const Rational& v) { return json(v.str()); }

template <class T>
json to_json(const std::vector<T>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json enclosure_json(const IntervalEnclosure& iv) { return json::array({iv.lo.str(), iv.hi.str()}); }

inline const char* sign_word(const Rational& x) {
  return x.sign() > 0 ? "positive" : x.sign() < 0 ? "negative" : "zero";
}

// RFC 4180 only needs quoting for separators, quotes and line breaks; none of
// the emitted fields contain them, but the pair strings may contain ','.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct CurveInput {
  std::string pairs;
  std::string exponents;
  std::string semigroup;

  void attach(CLI::App* cmd) {
    auto* p = cmd->add_option("--pairs", pairs, "Puiseux pairs \"n1,l1;n2,l2;...\"");
    auto* e = cmd->add_option("--exponents", exponents, "characteristic exponents \"b1/m,b2/m,...\"");
    auto* s = cmd->add_option("--semigroup", semigroup, "semigroup generators \"b0,b1,...\"");
    p->excludes(e)->excludes(s);
    e->excludes(s);
  }

  PuiseuxPairs resolve() const {
    if (!exponents.empty()) return pairs_from_characteristic(parse_rational_list(exponents));
    if (!semigroup.empty()) return pairs_from_semigroup(parse_integer_list(semigroup));
    if (pairs.empty()) throw std::invalid_argument("one of --pairs, --exponents, --semigroup is required");
    return parse_pairs(pairs);
  }
};

struct Format {
  bool json_out = false;
  bool csv_out = false;
  unsigned digits = default_digits();

  void attach(CLI::App* cmd) {
    auto* j = cmd->add_flag("--json", json_out, "emit JSON");
    auto* c = cmd->add_flag("--csv", csv_out, "emit CSV");
    j->excludes(c);
    cmd->add_option("--digits", digits, "decimal places in decimal columns")->check(CLI::Range(0u, 1000u));
  }
};

inline json invariants_json(const CurveInvariants& inv) {
  json j;
  j["pairs"] = inv.pairs.str();
  j["g"] = inv.g;
  j["e"] = to_json(inv.e);
  j["w"] = to_json(inv.w);
  j["mu_seq"] = to_json(inv.mu_seq);
  j["mu"] = to_json(inv.mu);
  j["beta"] = to_json(std::vector<Integer>(inv.beta.begin() + 1, inv.beta.end()));
  j["beta_bar"] = to_json(inv.beta_bar);
  j["char_exponents"] = to_json(inv.char_exponents);
  j["lct"] = to_json(inv.lct);
  j["max_exp_lt1"] = to_json(inv.max_exp_lt1);
  j["beta_g"] = to_json(inv.beta_g());
  j["ratio"] = to_json(inv.beta_g_over_mu);
  return j;
}

inline void invariants_csv(const CurveInvariants& inv, std::ostream& out) {
  auto join = [](const auto& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + Rational(v[i]).str();
    return s;
  };
  out << "field,value\n";
  out << "pairs," << csv_field(inv.pairs.str()) << "\n";
  out << "g," << inv.g << "\n";
  out << "e," << join(inv.e) << "\n";
  out << "w," << join(inv.w) << "\n";
  out << "mu_seq," << join(inv.mu_seq) << "\n";
  out << "mu," << inv.mu.get_str() << "\n";
  out << "beta," << join(std::vector<Integer>(inv.beta.begin() + 1, inv.beta.end())) << "\n";
  out << "beta_bar," << join(inv.beta_bar) << "\n";
  out << "char_exponents," << join(inv.char_exponents) << "\n";
  out << "lct," << inv.lct.str() << "\n";
  out << "max_exp_lt1," << inv.max_exp_lt1.str() << "\n";
  out << "beta_g," << inv.beta_g().get_str() << "\n";
  out << "ratio," << inv.beta_g_over_mu.str() << "\n";
}

inline json sample_json(const PhiSample& s, unsigned digits) {
  return {{"r", s.r.str()},           {"r_decimal", to_decimal(s.r, digits)},
          {"count", to_json(s.count)}, {"phi", s.phi.str()},
          {"phi_decimal", to_decimal(s.phi, digits)}, {"sign", sign_word(s.phi)}};
}

/// "a..b" or "a..b..step", inclusive, a <= b, step >= 1.
inline std::vector<Integer> parse_k_range(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find("..", start);
    parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 2;
  }
  if (parts.size() != 2 && parts.size() != 3) throw std::invalid_argument("--k must be 'a..b' or 'a..b..step', got '" + text + "'");
  const Integer a = parse_integer(parts[0]), b = parse_integer(parts[1]);
  const Integer step = parts.size() == 3 ? parse_integer(parts[2]) : Integer(1);
  if (step < 1) throw std::invalid_argument("--k step must be >= 1");
  if (b < a) throw std::invalid_argument("--k range is empty: " + text);
  if ((b - a) / step >= 1000000) throw std::invalid_argument("--k range has more than 10^6 values");
  std::vector<Integer> ks;
  for (Integer k = a; k <= b; k += step) ks.push_back(k);
  return ks;
}

inline LimitTarget parse_target(const std::string& t) {
  if (t == "zero") return LimitTarget::Zero;
  if (t == "counterexample") return LimitTarget::Counterexample;
  throw std::invalid_argument("--target must be 'zero' or 'counterexample', got '" + t + "'");
}

inline json verdict_json(const ConvergenceVerdict& v) {
  return {{"ratio_decreasing", v.ratio_decreasing},
          {"lct_decreasing", v.lct_decreasing},
          {"sup_dev_decreasing", v.sup_dev_decreasing},
          {"target", to_string(v.target)},
          {"trend", to_string(v.trend)}};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hodge spectrum of irreducible plane curve singularities, in exact arithmetic"};
  app.name("spectra");
  app.require_subcommand(1);

  CurveInput curve;
  Format fmt;
  std::optional<std::string> r_arg;
  long samples = 0;
  bool lt1 = false, oracle = false;
  long precision = 64;
  std::string family, k_range, target = "zero";

  auto* c_inv = app.add_subcommand("invariants", "numerical invariants of the curve");
  auto* c_spec = app.add_subcommand("spectrum", "spectral exponents with multiplicities");
  auto* c_count = app.add_subcommand("count", "#{alpha_i <= r}");
  auto* c_phi = app.add_subcommand("phi", "cumulative difference function");
  auto* c_dom = app.add_subcommand("dominating", "certified dominating intervals");
  auto* c_scan = app.add_subcommand("scan", "scan a one-parameter family of curves");

  for (auto* c : {c_inv, c_spec, c_count, c_phi, c_dom}) curve.attach(c);
  for (auto* c : {c_inv, c_spec, c_count, c_phi, c_dom, c_scan}) fmt.attach(c);
  c_spec->add_flag("--lt1", lt1, "only exponents below 1");
  c_count->add_option("--r", r_arg, "point r in [0, 1) as p/q")->required();
  c_count->add_flag("--oracle", oracle, "also count by enumerating the spectrum");
  auto* r_opt = c_phi->add_option("--r", r_arg, "point r in [0, 1) as p/q");
  auto* s_opt = c_phi->add_option("--samples", samples, "uniform grid size, joined with spectral values and midpoints")
                    ->check(CLI::PositiveNumber);
  r_opt->excludes(s_opt);
  c_dom->add_option("--precision", precision, "starting precision in bits (>= 1)");
  c_scan->add_option("--family", family, "pairs as polynomials in k, e.g. \"2*k,1;2,2*k^3+1\"")->required();
  c_scan->add_option("--k", k_range, "a..b or a..b..step")->required();
  c_scan->add_option("--target", target, "zero | counterexample");

  std::vector<const char*> argv{"spectra"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  auto no_csv = [&](const char* cmd) {
    if (fmt.csv_out) throw std::invalid_argument(std::string("--csv is not available for ") + cmd);
  };

  try {
    if (c_inv->parsed()) {
      const CurveInvariants inv = derive_invariants(curve.resolve());
      if (fmt.csv_out)
        invariants_csv(inv, out);
      else
        out << invariants_json(inv).dump(2) << "\n";
    } else if (c_spec->parsed()) {
      const CurveInvariants inv = derive_invariants(curve.resolve());
      const Spectrum spec = enumerate_spectrum_lt1(inv);
      const std::vector<SpectralValue> values = lt1 ? spec.values_lt1() : full_spectrum(spec);
      if (fmt.csv_out) {
        out << "value_exact,value_decimal,multiplicity\n";
        for (const auto& v : values) out << v.value.str() << "," << to_decimal(v.value, fmt.digits) << "," << v.multiplicity << "\n";
      } else {
        json list = json::array();
        std::uint64_t total = 0;
        for (const auto& v : values) {
          list.push_back(json::array({v.value.str(), v.multiplicity}));
          total += v.multiplicity;
        }
        out << json{{"pairs", inv.pairs.str()}, {"mu", to_json(inv.mu)}, {"range", lt1 ? "lt1" : "full"},
                    {"total_multiplicity", total}, {"values", list}}
                   .dump(2)
            << "\n";
      }
    } else if (c_count->parsed()) {
      no_csv("count");
      const CurveInvariants inv = derive_invariants(curve.resolve());
      const Rational r = Rational::parse(*r_arg);
      const Integer count = count_leq_closed(inv, r);
      json j{{"pairs", inv.pairs.str()}, {"r", r.str()}, {"count", to_json(count)}, {"mu", to_json(inv.mu)}};
      if (oracle) {
        const std::uint64_t o = oracle_count(enumerate_spectrum_lt1(inv), r);
        j["oracle_count"] = o;
        j["agree"] = Integer(o) == count;
      }
      out << j.dump(2) << "\n";
    } else if (c_phi->parsed()) {
      const CurveInvariants inv = derive_invariants(curve.resolve());
      if (!r_arg && samples == 0) throw std::invalid_argument("phi needs --r or --samples");
      std::vector<Rational> grid;
      if (r_arg)
        grid.push_back(Rational::parse(*r_arg));
      else
        grid = plot_grid(enumerate_spectrum_lt1(inv), samples);
      const bool csv = fmt.csv_out || (!r_arg && !fmt.json_out);
      if (r_arg && (grid[0].sign() < 0 || grid[0] >= Rational(1)))
        throw std::domain_error("r must lie in [0, 1), got " + grid[0].str());
      const std::vector<PhiSample> rows = sample_phi(inv, grid);
      if (csv) {
        out << "r_exact,r_decimal,count,phi_exact,phi_decimal,sign\n";
        for (const auto& s : rows)
          out << s.r.str() << "," << to_decimal(s.r, fmt.digits) << "," << s.count.get_str() << "," << s.phi.str() << ","
              << to_decimal(s.phi, fmt.digits) << "," << sign_word(s.phi) << "\n";
      } else if (r_arg) {
        json j = sample_json(rows[0], fmt.digits);
        j["pairs"] = inv.pairs.str();
        j["mu"] = to_json(inv.mu);
        out << j.dump(2) << "\n";
      } else {
        json list = json::array();
        for (const auto& s : rows) list.push_back(sample_json(s, fmt.digits));
        out << json{{"pairs", inv.pairs.str()}, {"mu", to_json(inv.mu)}, {"samples", list}}.dump(2) << "\n";
      }
    } else if (c_dom->parsed()) {
      no_csv("dominating");
      if (precision < 1) throw std::invalid_argument("--precision must be >= 1");
      const CurveInvariants inv = derive_invariants(curve.resolve());
      const DominatingReport rep = dominating_intervals(inv, precision);
      auto bound = [](const QuadraticBound& q) {
        return json{{"a2", q.a2.str()}, {"a1", q.a1.str()}, {"a0", q.a0.str()}, {"discriminant", q.discriminant().str()}};
      };
      auto root = [](const RootInterval& iv) {
        return json{{"inner", enclosure_json(iv.inner)}, {"outer", enclosure_json(iv.outer)}};
      };
      const Rational half(Integer(1), Integer(2));
      out << json{{"pairs", inv.pairs.str()},
                  {"mu", to_json(inv.mu)},
                  {"p1", bound(rep.p1)},
                  {"p2", bound(rep.p2)},
                  {"d1", rep.d1.str()},
                  {"d2", rep.d2.str()},
                  {"interval1", root(rep.interval1)},
                  {"interval2", root(rep.interval2)},
                  {"left_interval", "(" + rep.left_interval.lo.str() + ", " + rep.left_interval.hi.str() + ")"},
                  {"right_negative_interval",
                   "[" + rep.right_negative_interval.lo.str() + ", " + rep.right_negative_interval.hi.str() + ")"},
                  {"phi_half", phi_closed(inv, half).str()},
                  {"half_is_dominating", is_dominating(inv, half)},
                  {"precision_bits", rep.precision_bits}}
                 .dump(2)
          << "\n";
    } else if (c_scan->parsed()) {
      const FamilySpec fam = parse_family(family);
      const std::vector<Integer> ks = parse_k_range(k_range);
      const LimitTarget tgt = parse_target(target);
      const std::vector<ScanRow> rows = scan_family(fam, ks, default_scan_grid(), tgt);
      json verdict = nullptr;
      if (rows.size() >= 3) verdict = verdict_json(convergence_verdict(rows));
      if (fmt.json_out) {
        json list = json::array();
        for (const auto& r : rows)
          list.push_back({{"k", to_json(r.k)},
                          {"mu", to_json(r.mu)},
                          {"beta_g", to_json(r.beta_g)},
                          {"ratio", r.ratio.str()},
                          {"lct", r.lct.str()},
                          {"sup_dev", r.sup_dev.str()}});
        out << json{{"family", family}, {"target", to_string(tgt)}, {"rows", list}, {"verdict", verdict}}.dump(2) << "\n";
      } else {
        out << "k,mu,beta_g,ratio_exact,ratio_decimal,lct_exact,sup_dev_exact,sup_dev_decimal\n";
        for (const auto& r : rows)
          out << r.k.get_str() << "," << r.mu.get_str() << "," << r.beta_g.get_str() << "," << r.ratio.str() << ","
              << to_decimal(r.ratio, fmt.digits) << "," << r.lct.str() << "," << r.sup_dev.str() << ","
              << to_decimal(r.sup_dev, fmt.digits) << "\n";
        err << verdict.dump() << "\n";
      }
    }
  } catch (const std::invalid_argument& e) {  // CurveError, FamilyParseError, FamilyInstanceError
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::overflow_error& e) {
    err << "error: input too large: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace spectra::cli
