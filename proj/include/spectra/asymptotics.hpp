#pragma once

// One-parameter families of curves, e.g. "2*k,1;2,2*k^3+1", scanned over k.
//
// For each k the row carries beta_g/mu (which tends to 0 exactly when the
// spectral distribution tends to N_2), the lct, and the largest deviation of
// phi_f from a target on a fixed grid.  A finite scan only shows trends, so
// convergence_verdict() reports trends, never a limit.

#include "spectra/curve.hpp"
#include "spectra/distribution.hpp"
#include "spectra/numerics.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spectra {

/// Integer polynomial in k; coeffs[i] multiplies k^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Integer constant) : coeffs_{std::move(constant)} { trim(); }
  static Polynomial variable() {
    Polynomial p;
    p.coeffs_ = {Integer(0), Integer(1)};
    return p;
  }

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  Integer operator()(const Integer& k) const {
    Integer acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + *it;
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    out.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), Integer(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out.coeffs_[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
    out.trim();
    return out;
  }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    if (a.coeffs_.empty() || b.coeffs_.empty()) return out;
    out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    out.trim();
    return out;
  }
  Polynomial pow(unsigned long e) const {
    Polynomial out(Integer(1)), base = *this;
    while (e) {
      if (e & 1) out = out * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Integer> coeffs_;
};

/// Syntax error in a family description; position() is a 0-based offset.
class FamilyParseError : public std::invalid_argument {
 public:
  FamilyParseError(std::size_t pos, const std::string& msg)
      : std::invalid_argument("family syntax error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// A family member that fails pair validation.
class FamilyInstanceError : public std::invalid_argument {
 public:
  FamilyInstanceError(Integer k, const CurveError& cause)
      : std::invalid_argument("k=" + k.get_str() + ": " + cause.what()), k_(std::move(k)), code_(cause.code()) {}
  const Integer& k() const { return k_; }
  CurveErrc code() const { return code_; }

 private:
  Integer k_;
  CurveErrc code_;
};

struct FamilySpec {
  std::vector<std::pair<Polynomial, Polynomial>> pairs;  // (n(k), l(k))

  std::vector<PuiseuxPair> evaluate(const Integer& k) const {
    std::vector<PuiseuxPair> raw;
    for (const auto& [n, l] : pairs) raw.push_back({n(k), l(k)});
    return raw;
  }

  PuiseuxPairs instantiate(const Integer& k) const {
    try {
      return validate_pairs(evaluate(k));
    } catch (const CurveError& err) {
      throw FamilyInstanceError(k, err);
    }
  }
};

namespace detail {

class FamilyParser {
 public:
  explicit FamilyParser(std::string_view text) : text_(text) {}

  FamilySpec parse() {
    FamilySpec spec;
    for (;;) {
      Polynomial n = expression();
      expect(',', "expected ',' between n and l");
      Polynomial l = expression();
      spec.pairs.emplace_back(std::move(n), std::move(l));
      skip_space();
      if (at_end()) break;
      expect(';', "expected ';' between pairs");
    }
    return spec;
  }

 private:
  Polynomial expression() {
    Polynomial acc = term();
    for (;;) {
      skip_space();
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      skip_space();
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (peek('/')) {
        throw FamilyParseError(pos_, "division is not allowed; expressions must be integer polynomials in k");
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    skip_space();
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    skip_space();
    if (!peek('^')) return base;
    ++pos_;
    skip_space();
    const std::size_t at = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw FamilyParseError(at, "exponent must be a nonnegative integer literal");
    Integer e = literal();
    if (e > 256) throw FamilyParseError(at, "exponent " + e.get_str() + " is too large");
    return base.pow(e.get_ui());
  }

  Polynomial primary() {
    skip_space();
    if (at_end()) throw FamilyParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial(literal());
    if (c == 'k') {
      ++pos_;
      if (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        throw FamilyParseError(pos_ - 1, "unknown symbol; the only variable is k");
      return Polynomial::variable();
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      expect(')', "expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') throw FamilyParseError(pos_, "unknown symbol; the only variable is k");
    throw FamilyParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  Integer literal() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  void expect(char c, const char* msg) {
    skip_space();
    if (!peek(c)) throw FamilyParseError(pos_, msg);
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Grammar: pairs separated by ';', n and l by ','; each is an integer
/// polynomial in k built from literals, k, '+', '-', '*', '^' (literal
/// exponent) and parentheses.  Validity of the pairs is checked per k.
inline FamilySpec parse_family(std::string_view text) { return detail::FamilyParser(text).parse(); }

enum class LimitTarget { Zero, Counterexample };

inline const char* to_string(LimitTarget t) { return t == LimitTarget::Zero ? "zero" : "counterexample"; }

/// Limit of phi_f along (2k, 1), (2, 2k^3 + 1):  r(1-r)/2 - {2r}(1-{2r})/4.
inline Rational phi_limit_counterexample(const Rational& r) {
  if (r.sign() < 0 || r >= Rational(1))
    throw std::domain_error("phi_limit_counterexample needs 0 <= r < 1, got " + r.str());
  const Rational f = fract(Rational(2) * r);
  return r * (Rational(1) - r) / Rational(2) - f * (Rational(1) - f) / Rational(4);
}

inline Rational target_value(LimitTarget t, const Rational& r) {
  return t == LimitTarget::Zero ? Rational(0) : phi_limit_counterexample(r);
}

/// {t/256 : 1 <= t < 256}
inline std::vector<Rational> default_scan_grid() { return uniform_grid(256, 1); }

struct ScanRow {
  Integer k;
  Integer mu;
  Integer beta_g;
  Rational ratio;    // beta_g / mu
  Rational lct;
  Rational sup_dev;  // max over the grid of |phi_f(r) - target(r)|
  LimitTarget target = LimitTarget::Zero;
};

inline ScanRow scan_curve(const Integer& k, const CurveInvariants& inv, const std::vector<Rational>& grid, LimitTarget target) {
  ClosedForm cf(inv);
  Rational sup;
  for (const Rational& r : grid) {
    Rational dev = abs(cf.phi(r) - target_value(target, r));
    if (sup < dev) sup = dev;
  }
  return {k, inv.mu, inv.beta_g(), inv.beta_g_over_mu, inv.lct, sup, target};
}

/// One row per k, in the order given.
inline std::vector<ScanRow> scan_family(const FamilySpec& fam, const std::vector<Integer>& ks, const std::vector<Rational>& grid,
                                        LimitTarget target) {
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i].sign() < 0 || grid[i] >= Rational(1))
      throw std::out_of_range("grid point " + std::to_string(i) + " (" + grid[i].str() + ") is outside [0, 1)");
  std::vector<PuiseuxPairs> curves;
  curves.reserve(ks.size());
  for (const Integer& k : ks) curves.push_back(fam.instantiate(k));  // validate everything before any work

  std::vector<ScanRow> rows;
  rows.reserve(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) rows.push_back(scan_curve(ks[i], derive_invariants(curves[i]), grid, target));
  return rows;
}

enum class Trend {
  Converges,                  // beta_g/mu and sup_dev both trend down
  LctToZeroButNonConvergent,  // lct decreasing while beta_g/mu is not
  NonConvergent,              // neither beta_g/mu nor lct decreasing
  Inconclusive,               // beta_g/mu decreasing but sup_dev is not
};

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::Converges: return "converges";
    case Trend::LctToZeroButNonConvergent: return "lct_to_zero_non_convergent";
    case Trend::NonConvergent: return "non_convergent";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ConvergenceVerdict {
  // Trend flags, see detail::trends_down.
  bool ratio_decreasing = false;
  bool lct_decreasing = false;
  bool sup_dev_decreasing = false;  // distance to the rows' target
  Trend trend = Trend::NonConvergent;
  LimitTarget target = LimitTarget::Zero;
};

namespace detail {

// Mann-Kendall sign statistic: sum over i < j of sign(v_j - v_i).
template <class Get>
long kendall_s(const std::vector<ScanRow>& rows, Get get) {
  long s = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const auto c = get(rows[j]) <=> get(rows[i]);
      s += c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
  return s;
}

// Downward trend: more decreasing pairs than increasing ones, and the last
// row below the first.  Single steps may go up; (n, 1) families do.
template <class Get>
bool trends_down(const std::vector<ScanRow>& rows, Get get) {
  return kendall_s(rows, get) < 0 && get(rows.back()) < get(rows.front());
}

}  // namespace detail

inline ConvergenceVerdict convergence_verdict(const std::vector<ScanRow>& rows) {
  if (rows.size() < 3) throw std::invalid_argument("a convergence verdict needs at least 3 rows");
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i - 1].k < rows[i].k)) throw std::invalid_argument("scan rows must have strictly increasing k");

  ConvergenceVerdict v;
  v.target = rows.front().target;
  v.ratio_decreasing = detail::trends_down(rows, [](const ScanRow& r) -> const Rational& { return r.ratio; });
  v.lct_decreasing = detail::trends_down(rows, [](const ScanRow& r) -> const Rational& { return r.lct; });
  v.sup_dev_decreasing = detail::trends_down(rows, [](const ScanRow& r) -> const Rational& { return r.sup_dev; });
  if (v.ratio_decreasing)
    v.trend = v.sup_dev_decreasing ? Trend::Converges : Trend::Inconclusive;
  else
    v.trend = v.lct_decreasing ? Trend::LctToZeroButNonConvergent : Trend::NonConvergent;
  return v;
}

}  // namespace spectra
