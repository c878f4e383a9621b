#pragma once

// Closed forms for the counting function #{alpha_i <= r} and the cumulative
// difference function phi_f(r) = r^2/2 - #{alpha_i <= r}/mu on [0, 1).
//
// Both are evaluated exactly.  Writing r = p/q, every fractional part that
// appears has the form {e_j r} = s_j/q with s_j = e_j p mod q, and
//
//   {w_j ({e_j r} - b/n_j)} = (w_j (s_j n_j - b q) mod q n_j) / (q n_j),
//
// so after multiplying by 2 q^2 lcm(n_j) each formula becomes a sum of
// integers.  The integer work is done in __int128 whenever a bit-length
// budget proves it cannot overflow, and in unbounded integers otherwise.

#include "spectra/curve.hpp"
#include "spectra/numerics.hpp"
#include "spectra/spectrum.hpp"

#include <algorithm>
#include <initializer_list>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spectra {

namespace detail {

using int128 = __int128;

inline Integer to_integer(int128 v) {
  const bool neg = v < 0;
  const auto u = neg ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                     : static_cast<unsigned __int128>(v);
  Integer out(static_cast<unsigned long>(u >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(u);
  return neg ? Integer(-out) : out;
}

inline Integer to_integer(const Integer& v) { return v; }

template <class Int>
Int from_integer(const Integer& v);

template <>
inline int128 from_integer<int128>(const Integer& v) {
  return static_cast<int128>(v.get_si());
}

template <>
inline Integer from_integer<Integer>(const Integer& v) {
  return v;
}

inline bool fits_int64(const Integer& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

template <class Int>
Int floor_mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Integer form of the closed formulas for one curve.
template <class Int>
class ClosedFormKernel {
 public:
  explicit ClosedFormKernel(const CurveInvariants& inv) {
    Integer lcm_n(1);
    for (std::size_t j = 1; j <= inv.g; ++j) lcm_n = lcm(lcm_n, inv.n(j));
    const Integer ng_wg = inv.n(inv.g) * inv.w[inv.g];
    e0_ = from_integer<Int>(inv.e[0]);
    mu_ = from_integer<Int>(inv.mu);
    ng_wg_ = from_integer<Int>(ng_wg);
    lcm_ = from_integer<Int>(lcm_n);
    a_coeff_ = from_integer<Int>(2 * inv.e[0] - 1 + inv.sum_l_e());
    for (std::size_t j = 1; j <= inv.g; ++j) {
      Level lv;
      lv.n = from_integer<Int>(inv.n(j));
      lv.e = from_integer<Int>(inv.e[j]);
      lv.w = from_integer<Int>(inv.w[j]);
      lv.l_lcm_over_n = from_integer<Int>(Integer(inv.l(j) * (lcm_n / inv.n(j))));
      lv.two_lcm_over_n = from_integer<Int>(Integer(2 * (lcm_n / inv.n(j))));
      lv.w_mod_n = from_integer<Int>(Integer(inv.w[j] % inv.n(j)));
      levels_.push_back(lv);
    }
  }

  /// #{alpha <= p/q} with 0 <= p < q.
  Int count_leq(const Int& p, const Int& q) const {
    Residues res = residues(p, q);
    const Int& L = lcm_;
    Int acc = (mu_ - ng_wg_) * p * q * L + ng_wg_ * p * p * L + res.s0 * (q - res.s0) * L;
    Int prev = res.s0;
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      const Level& lv = levels_[j];
      const Int& s = res.s[j];
      acc += (lv.n - 1) * s * q * L;
      acc += lv.l_lcm_over_n * prev * (q - prev);
      acc -= lv.two_lcm_over_n * q * fract_sum(lv, s, q);
      prev = s;
    }
    const Int denom = 2 * q * q * L;
    if (acc % denom != 0)
      throw std::logic_error("closed-form count did not reduce to an integer");
    return acc / denom;
  }

  /// Numerator N with phi_f(p/q) = N / (2 mu q^2 lcm).
  Int phi_numerator(const Int& p, const Int& q) const {
    Residues res = residues(p, q);
    const Int& L = lcm_;
    Int acc = a_coeff_ * p * (q - p) * L - res.s0 * (q - res.s0) * L;
    Int prev = res.s0;
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      const Level& lv = levels_[j];
      const Int& s = res.s[j];
      acc -= (lv.n - 1) * s * q * L;
      acc -= lv.l_lcm_over_n * prev * (q - prev);
      acc += lv.two_lcm_over_n * q * fract_sum(lv, s, q);
      prev = s;
    }
    return acc;
  }

  Int phi_denominator(const Int& q) const { return 2 * mu_ * q * q * lcm_; }

 private:
  struct Level {
    Int n, e, w;
    Int l_lcm_over_n;    // l_j lcm / n_j
    Int two_lcm_over_n;  // 2 lcm / n_j
    Int w_mod_n;
  };

  struct Residues {
    Int s0;              // e_0 p mod q
    std::vector<Int> s;  // s[j-1] = e_j p mod q
  };

  Residues residues(const Int& p, const Int& q) const {
    Residues r;
    r.s0 = floor_mod<Int>(e0_ * p, q);
    r.s.reserve(levels_.size());
    for (const Level& lv : levels_) r.s.push_back(floor_mod<Int>(lv.e * p, q));
    return r;
  }

  // sum over b = 1..n-1 with b/n <= s/q of (w (s n - b q)) mod (q n).
  // Successive terms differ by w q = q (w mod n) modulo q n.
  static Int fract_sum(const Level& lv, const Int& s, const Int& q) {
    const Int sn = s * lv.n;
    const Int b_max = sn / q;
    if (b_max < 1) return Int(0);
    const Int modulus = q * lv.n;
    const Int step = q * lv.w_mod_n;
    Int term = floor_mod<Int>(lv.w * sn, modulus);
    Int total = 0;
    for (Int b = 1; b <= b_max; ++b) {
      term -= step;
      if (term < 0) term += modulus;
      total += term;
    }
    return total;
  }

  std::vector<Level> levels_;
  Int e0_, mu_, ng_wg_, lcm_, a_coeff_;
};

}  // namespace detail

/// Evaluator for the closed-form count and phi_f of one curve.  Construct once
/// and reuse when evaluating at many points.
class ClosedForm {
 public:
  explicit ClosedForm(const CurveInvariants& inv) : mu_(inv.mu), big_(inv) {
    Integer lcm_n(1), n_max(0), l_max(0), w_max(0);
    bool fits = true;
    for (std::size_t j = 1; j <= inv.g; ++j) {
      lcm_n = lcm(lcm_n, inv.n(j));
      n_max = std::max(n_max, inv.n(j));
      l_max = std::max(l_max, inv.l(j));
      w_max = std::max(w_max, inv.w[j]);
    }
    const Integer ng_wg = inv.n(inv.g) * inv.w[inv.g];
    const Integer a_coeff = 2 * inv.e[0] - 1 + inv.sum_l_e();
    const Integer l_lcm = l_max * lcm_n;
    for (const Integer* v : std::initializer_list<const Integer*>{&inv.e[0], &inv.mu, &ng_wg, &lcm_n, &a_coeff, &w_max, &l_lcm}) fits = fits && detail::fits_int64(*v);
    if (!fits) return;
    // Largest intermediate is below 2^(2 bits(q) + budget) and the sums have
    // at most 5 + 3g terms.
    const std::size_t terms = bit_length(Integer(5 + 3 * inv.g)) + 1;
    const std::size_t widest = std::max({bit_length(inv.mu) + 1, bit_length(ng_wg) + 1, bit_length(a_coeff),
                                         bit_length(n_max) + 1, bit_length(l_max)});
    quad_budget_ = bit_length(lcm_n) + widest + terms + 1;
    linear_budget_ = std::max(bit_length(inv.e[0]), bit_length(w_max) + bit_length(n_max));
    small_.emplace(inv);
  }

  Integer count_leq(const Rational& r) const {
    check_domain(r, "count_leq_closed");
    if (use_small(r))
      return detail::to_integer(small_->count_leq(r.num().get_si(), r.den().get_si()));
    return big_.count_leq(r.num(), r.den());
  }

  Rational phi(const Rational& r) const {
    check_domain(r, "phi_closed");
    if (use_small(r)) {
      const detail::int128 p = r.num().get_si(), q = r.den().get_si();
      return Rational(detail::to_integer(small_->phi_numerator(p, q)), detail::to_integer(small_->phi_denominator(q)));
    }
    return Rational(big_.phi_numerator(r.num(), r.den()), big_.phi_denominator(r.den()));
  }

  const Integer& mu() const { return mu_; }

 private:
  static void check_domain(const Rational& r, const char* what) {
    if (r.sign() < 0 || r >= Rational(1)) throw std::domain_error(std::string(what) + " needs 0 <= r < 1, got " + r.str());
  }

  bool use_small(const Rational& r) const {
    if (!small_ || !detail::fits_int64(r.den())) return false;
    const std::size_t bq = bit_length(r.den());
    return 2 * bq + quad_budget_ <= 125 && bq + linear_budget_ <= 125;
  }

  Integer mu_;
  detail::ClosedFormKernel<Integer> big_;
  std::optional<detail::ClosedFormKernel<detail::int128>> small_;
  std::size_t quad_budget_ = 0;
  std::size_t linear_budget_ = 0;
};

/// #{alpha_i <= r} from the closed formula; 0 <= r < 1.
inline Integer count_leq_closed(const CurveInvariants& inv, const Rational& r) { return ClosedForm(inv).count_leq(r); }

/// phi_f(r) from its own closed formula (not via the count); 0 <= r < 1.
inline Rational phi_closed(const CurveInvariants& inv, const Rational& r) { return ClosedForm(inv).phi(r); }

/// phi_f(r) = r^2/2 - count/mu, with the count taken from the closed formula.
inline Rational phi_from_def(const CurveInvariants& inv, const Rational& r) {
  Integer count = count_leq_closed(inv, r);
  return r * r / Rational(2) - Rational(count, inv.mu);
}

/// Triangle density on [0, 2]: s on [0, 1), 2 - s on [1, 2), 0 elsewhere.
inline Rational n2(const Rational& s) {
  if (s.sign() < 0 || s >= Rational(2)) return Rational(0);
  if (s < Rational(1)) return s;
  return Rational(2) - s;
}

struct PhiSample {
  Rational r;
  Rational phi;
  Integer count;

  friend bool operator==(const PhiSample&, const PhiSample&) = default;
};

/// One sample per grid point, in grid order.  Each sample's phi comes from the
/// phi formula and is checked against r^2/2 - count/mu.
inline std::vector<PhiSample> sample_phi(const CurveInvariants& inv, const std::vector<Rational>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i].sign() < 0 || grid[i] >= Rational(1))
      throw std::out_of_range("grid point " + std::to_string(i) + " (" + grid[i].str() + ") is outside [0, 1)");
  ClosedForm cf(inv);
  std::vector<PhiSample> out;
  out.reserve(grid.size());
  for (const Rational& r : grid) {
    PhiSample s{r, cf.phi(r), cf.count_leq(r)};
    if (s.phi != r * r / Rational(2) - Rational(s.count, inv.mu))
      throw std::logic_error("phi and count formulas disagree at r = " + r.str());
    out.push_back(std::move(s));
  }
  return out;
}

/// {t/samples : 0 <= t < samples}.
inline std::vector<Rational> uniform_grid(long samples, long first = 0) {
  if (samples < 1) throw std::invalid_argument("grid needs at least one sample");
  std::vector<Rational> out;
  for (long t = first; t < samples; ++t) out.emplace_back(Integer(t), Integer(samples));
  return out;
}

/// Every spectral value below 1, every midpoint between consecutive values,
/// and the uniform grid of `samples` points, sorted without duplicates.
inline std::vector<Rational> plot_grid(const Spectrum& spec, long samples = 512) {
  std::vector<Rational> out = uniform_grid(samples);
  const auto& v = spec.values_lt1();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(v[i].value);
    if (i + 1 < v.size()) out.push_back((v[i].value + v[i + 1].value) / Rational(2));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace spectra
