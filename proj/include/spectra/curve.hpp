#pragma once

// Irreducible plane curve singularities described by Puiseux pairs
// (n_1, l_1), ..., (n_g, l_g) and the numerical invariants derived from them.
//
// Convention: the characteristic exponents are
//     beta_i / m = 1 + l_1/n_1 + ... + l_i/(n_1 ... n_i)
// with n_j >= 2, l_j >= 1, gcd(n_j, l_j) = 1.  M. Saito's k_j relate to these
// by k_1 = n_1 + l_1 and k_j = l_j for j >= 2.  Other conventions are not
// detected automatically.

#include "spectra/numerics.hpp"

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spectra {

enum class CurveErrc {
  EmptyList,
  NonCoprime,
  NTooSmall,
  LNonPositive,
  InvalidExponents,
  InvalidSemigroup,
};

inline const char* to_string(CurveErrc c) {
  switch (c) {
    case CurveErrc::EmptyList: return "EmptyList";
    case CurveErrc::NonCoprime: return "NonCoprime";
    case CurveErrc::NTooSmall: return "NTooSmall";
    case CurveErrc::LNonPositive: return "LNonPositive";
    case CurveErrc::InvalidExponents: return "InvalidExponents";
    case CurveErrc::InvalidSemigroup: return "InvalidSemigroup";
  }
  return "?";
}

/// Rejected curve description.  index() is the 1-based pair index the error
/// refers to, or 0 when it concerns the input as a whole.
class CurveError : public std::invalid_argument {
 public:
  CurveError(CurveErrc code, std::size_t index, const std::string& detail)
      : std::invalid_argument(format(code, index, detail)), code_(code), index_(index) {}

  CurveErrc code() const { return code_; }
  std::size_t index() const { return index_; }

 private:
  static std::string format(CurveErrc code, std::size_t index, const std::string& detail) {
    std::string s = to_string(code);
    if (index != 0) s += "(" + std::to_string(index) + ")";
    if (!detail.empty()) s += ": " + detail;
    return s;
  }

  CurveErrc code_;
  std::size_t index_;
};

struct PuiseuxPair {
  Integer n;
  Integer l;

  friend bool operator==(const PuiseuxPair&, const PuiseuxPair&) = default;
};

/// Validated, non-empty list of Puiseux pairs.  Only validate_pairs() builds one.
class PuiseuxPairs {
 public:
  std::size_t g() const { return pairs_.size(); }
  const std::vector<PuiseuxPair>& pairs() const { return pairs_; }
  /// 1-based access, matching the usual indexing of (n_j, l_j).
  const Integer& n(std::size_t j) const { return pairs_.at(j - 1).n; }
  const Integer& l(std::size_t j) const { return pairs_.at(j - 1).l; }

  std::string str() const {
    std::string s;
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
      if (j) s += ";";
      s += pairs_[j].n.get_str() + "," + pairs_[j].l.get_str();
    }
    return s;
  }

  friend bool operator==(const PuiseuxPairs&, const PuiseuxPairs&) = default;

 private:
  friend PuiseuxPairs validate_pairs(std::vector<PuiseuxPair> raw);
  explicit PuiseuxPairs(std::vector<PuiseuxPair> p) : pairs_(std::move(p)) {}
  std::vector<PuiseuxPair> pairs_;
};

/// Checks each pair in order for n_j >= 2, l_j >= 1, gcd(n_j, l_j) = 1 and
/// throws CurveError for the first violation.
inline PuiseuxPairs validate_pairs(std::vector<PuiseuxPair> raw) {
  if (raw.empty()) throw CurveError(CurveErrc::EmptyList, 0, "at least one Puiseux pair is required");
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const auto& [n, l] = raw[j];
    std::string where = "(" + n.get_str() + "," + l.get_str() + ")";
    if (n < 2) throw CurveError(CurveErrc::NTooSmall, j + 1, "n must be >= 2 in " + where);
    if (l < 1) throw CurveError(CurveErrc::LNonPositive, j + 1, "l must be >= 1 in " + where);
    if (gcd(n, l) != 1) throw CurveError(CurveErrc::NonCoprime, j + 1, "gcd(n, l) != 1 in " + where);
  }
  return PuiseuxPairs(std::move(raw));
}

inline PuiseuxPairs validate_pairs(std::initializer_list<std::pair<long, long>> raw) {
  std::vector<PuiseuxPair> p;
  p.reserve(raw.size());
  for (auto [n, l] : raw) p.push_back({Integer(n), Integer(l)});
  return validate_pairs(std::move(p));
}

/// Numerical invariants of an irreducible plane curve.
///
/// Vectors indexed by j run over 0..g; `beta[0]` holds m = e_0 so that
/// beta[i] = beta_i for i >= 1.  Immutable once built by derive_invariants().
struct CurveInvariants {
  explicit CurveInvariants(PuiseuxPairs p) : pairs(std::move(p)) {}

  PuiseuxPairs pairs;
  std::size_t g = 0;
  std::vector<Integer> e;          // e_0 .. e_g, e_g = 1
  std::vector<Integer> w;          // w_0 .. w_g, w_0 = 1
  std::vector<Integer> mu_seq;     // mu_0 .. mu_g, mu_0 = 0
  Integer mu;                      // Milnor number
  std::vector<Integer> beta;       // m, beta_1 .. beta_g
  std::vector<Integer> beta_bar;   // semigroup generators beta_bar_0 .. beta_bar_g
  std::vector<Rational> char_exponents;  // beta_i / m, i = 1..g
  Rational lct;
  Rational max_exp_lt1;
  Rational beta_g_over_mu;

  const Integer& n(std::size_t j) const { return pairs.n(j); }
  const Integer& l(std::size_t j) const { return pairs.l(j); }
  const Integer& beta_g() const { return beta.back(); }
  /// sum_j l_j e_j, which equals beta_g - e_0.
  Integer sum_l_e() const { return beta_g() - e[0]; }
};

namespace detail {

[[noreturn]] inline void invariant_violation(const std::string& what) {
  throw std::logic_error("curve invariant cross-check failed: " + what);
}

}  // namespace detail

inline CurveInvariants derive_invariants(const PuiseuxPairs& p) {
  CurveInvariants inv(p);
  const std::size_t g = p.g();
  inv.g = g;

  auto n = [&](std::size_t j) -> Integer { return j == 0 ? Integer(1) : p.n(j); };

  inv.e.assign(g + 1, Integer(1));
  for (std::size_t j = g; j-- > 0;) inv.e[j] = inv.e[j + 1] * p.n(j + 1);
  const auto& e = inv.e;

  inv.w.assign(g + 1, Integer(1));
  for (std::size_t j = 1; j <= g; ++j) inv.w[j] = n(j) * n(j - 1) * inv.w[j - 1] + p.l(j);

  inv.mu_seq.assign(g + 1, Integer(0));
  for (std::size_t j = 1; j <= g; ++j)
    inv.mu_seq[j] = (n(j) - 1) * (inv.w[j] - 1) + n(j) * inv.mu_seq[j - 1];
  inv.mu = inv.mu_seq[g];

  inv.beta.assign(g + 1, e[0]);
  for (std::size_t i = 1; i <= g; ++i) inv.beta[i] = inv.beta[i - 1] + p.l(i) * e[i];

  inv.beta_bar.assign(g + 1, e[0]);
  if (g >= 1) inv.beta_bar[1] = inv.beta[1];
  for (std::size_t i = 2; i <= g; ++i)
    inv.beta_bar[i] = n(i - 1) * inv.beta_bar[i - 1] - inv.beta[i - 1] + inv.beta[i];

  for (std::size_t i = 1; i <= g; ++i) inv.char_exponents.emplace_back(inv.beta[i], e[0]);

  // Independent closed forms, all cleared of denominators.
  Integer mu_closed = (e[0] - 1) * (e[0] - 1);
  for (std::size_t j = 1; j <= g; ++j) mu_closed += p.l(j) * e[j] * (e[j - 1] - 1);
  if (mu_closed != inv.mu) detail::invariant_violation("Milnor number recurrence vs closed form");

  Integer partial = e[0] * e[0];
  for (std::size_t j = 1; j <= g; ++j) {
    partial += p.l(j) * e[j] * e[j] * p.n(j);
    if (inv.w[j] * e[j] * e[j] * p.n(j) != partial) detail::invariant_violation("w_j closed form at j=" + std::to_string(j));
  }

  // n_g^2 mu_{g-1} = sum_{k<g} l_k (e_k^2 n_k - n_g e_k) + e_0^2 + n_g^2 - 2 e_0 n_g
  {
    const Integer& ng = p.n(g);
    Integer rhs = e[0] * e[0] + ng * ng - 2 * e[0] * ng;
    for (std::size_t k = 1; k < g; ++k) rhs += p.l(k) * (e[k] * e[k] * p.n(k) - ng * e[k]);
    if (ng * ng * inv.mu_seq[g - 1] != rhs) detail::invariant_violation("n_g mu_{g-1} closed form");
  }

  for (std::size_t j = 0; j <= g; ++j)
    if (inv.beta_bar[j] != inv.w[j] * e[j]) detail::invariant_violation("beta_bar_j = w_j e_j at j=" + std::to_string(j));

  const Integer& n1 = p.n(1);
  inv.lct = Rational(Integer(1), e[1]) * (Rational(Integer(1), n1) + Rational(Integer(1), Integer(n1 + p.l(1))));
  inv.max_exp_lt1 = Rational(1) - Rational(Integer(1), p.n(g) * inv.w[g]);
  inv.beta_g_over_mu = Rational(inv.beta[g], inv.mu);
  return inv;
}

/// Inverse of the characteristic-exponent expansion.  Each successive
/// difference, rescaled by n_1 ... n_{j-1}, must be a reduced fraction l_j/n_j
/// with n_j >= 2.
inline PuiseuxPairs pairs_from_characteristic(const std::vector<Rational>& exponents) {
  auto fail = [](std::size_t i, const std::string& why) -> CurveError {
    return CurveError(CurveErrc::InvalidExponents, i, why);
  };
  if (exponents.empty()) throw fail(0, "no characteristic exponents given");
  std::vector<PuiseuxPair> raw;
  Rational prev(1);
  Integer scale(1);  // n_1 ... n_{j-1}
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] <= prev)
      throw fail(i + 1, i == 0 ? "first exponent must exceed 1" : "exponents must be strictly increasing");
    Rational step = (exponents[i] - prev) * Rational(scale);
    if (step.den() < 2) throw fail(i + 1, "exponent " + exponents[i].str() + " does not leave the previous lattice");
    raw.push_back({step.den(), step.num()});
    scale *= step.den();
    prev = exponents[i];
  }
  PuiseuxPairs pairs = validate_pairs(std::move(raw));
  if (derive_invariants(pairs).char_exponents != exponents) throw fail(0, "exponents do not round-trip");
  return pairs;
}

/// Recovers the pairs from minimal semigroup generators beta_bar_0 < ... < beta_bar_g.
inline PuiseuxPairs pairs_from_semigroup(const std::vector<Integer>& gens) {
  auto fail = [](std::size_t i, const std::string& why) -> CurveError {
    return CurveError(CurveErrc::InvalidSemigroup, i, why);
  };
  if (gens.size() < 2) throw fail(0, "need at least two generators");
  if (gens[0] < 2) throw fail(0, "multiplicity beta_bar_0 must be >= 2");
  const std::size_t g = gens.size() - 1;

  std::vector<Integer> e{gens[0]};
  for (std::size_t i = 1; i <= g; ++i) {
    Integer next = gcd(e.back(), gens[i]);
    if (next == e.back()) throw fail(i, "gcd chain does not drop at generator " + gens[i].get_str());
    e.push_back(next);
  }
  if (e[g] != 1) throw fail(0, "gcd chain ends at " + e[g].get_str() + " instead of 1");

  std::vector<PuiseuxPair> raw;
  Integer beta_prev = e[0];      // beta_{i-1}, with beta_0 := m
  Integer beta_cur;
  for (std::size_t i = 1; i <= g; ++i) {
    Integer n_i = e[i - 1] / e[i];
    if (i == 1) {
      beta_cur = gens[1];
    } else {
      Integer n_prev = e[i - 2] / e[i - 1];
      beta_cur = gens[i] - n_prev * gens[i - 1] + beta_prev;
    }
    Integer diff = beta_cur - beta_prev;
    if (diff % e[i] != 0) throw fail(i, "generator " + gens[i].get_str() + " is not compatible with the gcd chain");
    Integer l_i = diff / e[i];
    if (l_i < 1) throw fail(i, "generator " + gens[i].get_str() + " is not minimal");
    raw.push_back({n_i, l_i});
    beta_prev = beta_cur;
  }
  PuiseuxPairs pairs = [&] {
    try {
      return validate_pairs(std::move(raw));
    } catch (const CurveError& err) {
      throw fail(err.index(), err.what());
    }
  }();
  if (derive_invariants(pairs).beta_bar != gens) throw fail(0, "generators do not round-trip");
  return pairs;
}

/// n as a machine integer for index loops; throws if it does not fit.
inline std::int64_t to_int64(const Integer& v, const char* what) {
  if (!mpz_fits_slong_p(v.get_mpz_t()) || sizeof(long) < sizeof(std::int64_t))
    throw std::overflow_error(std::string(what) + " = " + v.get_str() + " is too large to iterate over");
  return v.get_si();
}

}  // namespace spectra
