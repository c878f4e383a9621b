#pragma once

// Dominating values: points r in [0, 1) with phi_f(r) > 0.
//
// Two inverted parabolas p_1, p_2 bound 2 mu phi_f from below; wherever one of
// them is positive, r is dominating.  Their roots involve sqrt(D_i), which is
// usually irrational, so each interval is reported through two rational
// enclosures of its endpoints.

#include "spectra/curve.hpp"
#include "spectra/distribution.hpp"
#include "spectra/numerics.hpp"

#include <stdexcept>
#include <string>

namespace spectra {

enum class BoundKind { First, Second };

inline const char* to_string(BoundKind k) { return k == BoundKind::First ? "first" : "second"; }

/// a2 r^2 + a1 r + a0.
struct QuadraticBound {
  Rational a2;
  Rational a1;
  Rational a0;
  BoundKind label = BoundKind::First;

  Rational operator()(const Rational& r) const { return (a2 * r + a1) * r + a0; }
  Rational discriminant() const { return a1 * a1 - Rational(4) * a2 * a0; }
};

namespace detail {

// sum_j l_j / (4 n_j)
inline Rational quarter_l_over_n(const CurveInvariants& inv) {
  Rational s;
  for (std::size_t j = 1; j <= inv.g; ++j) s += Rational(inv.l(j), Integer(4 * inv.n(j)));
  return s;
}

// sum_{j<g} (n_j - 1)
inline Integer leading_n_minus_one(const CurveInvariants& inv) {
  Integer s(0);
  for (std::size_t j = 1; j < inv.g; ++j) s += inv.n(j) - 1;
  return s;
}

inline Integer leading_coefficient(const CurveInvariants& inv) { return 2 * inv.e[0] - 1 + inv.sum_l_e(); }

}  // namespace detail

/// Lower bound obtained from {e_j r} <= 1 for j < g.
inline QuadraticBound p1_bound(const CurveInvariants& inv) {
  const Integer a = detail::leading_coefficient(inv);
  const Integer b = 2 * inv.e[0] - inv.n(inv.g) + inv.sum_l_e();
  const Rational c = Rational(detail::leading_n_minus_one(inv)) + Rational(Integer(1), Integer(4)) + detail::quarter_l_over_n(inv);
  return {Rational(Integer(-a)), Rational(b), -c, BoundKind::First};
}

/// Lower bound obtained from {e_j r} <= e_j r; sharper for small r.
inline QuadraticBound p2_bound(const CurveInvariants& inv) {
  const Integer a = detail::leading_coefficient(inv);
  const Integer b = inv.e[0] + inv.sum_l_e();
  const Rational c = Rational(Integer(1), Integer(4)) + detail::quarter_l_over_n(inv);
  return {Rational(Integer(-a)), Rational(b), -c, BoundKind::Second};
}

/// D_1 evaluated from the invariants directly, without going through p1_bound.
inline Rational discriminant_d1(const CurveInvariants& inv) {
  const Integer b = 2 * inv.e[0] - inv.n(inv.g) + inv.sum_l_e();
  const Rational inner = Rational(detail::leading_n_minus_one(inv)) + Rational(Integer(1), Integer(4)) + detail::quarter_l_over_n(inv);
  return Rational(Integer(b * b)) - Rational(Integer(4 * detail::leading_coefficient(inv))) * inner;
}

/// D_2 evaluated from the invariants directly.
inline Rational discriminant_d2(const CurveInvariants& inv) {
  const Integer b = inv.e[0] + inv.sum_l_e();
  const Rational inner = Rational(Integer(1), Integer(4)) + detail::quarter_l_over_n(inv);
  return Rational(Integer(b * b)) - Rational(Integer(4 * detail::leading_coefficient(inv))) * inner;
}

/// Rational brackets around the open root interval (lo, hi) of a bound:
///   outer.lo <= lo <= inner.lo  and  inner.hi <= hi <= outer.hi.
/// So (inner.lo, inner.hi) is contained in the interval and (outer.lo, outer.hi)
/// contains it.
struct RootInterval {
  IntervalEnclosure inner;
  IntervalEnclosure outer;
};

struct DominatingReport {
  QuadraticBound p1;
  QuadraticBound p2;
  Rational d1;
  Rational d2;
  RootInterval interval1;
  RootInterval interval2;
  IntervalEnclosure left_interval;            // open (0, lct): dominating
  IntervalEnclosure right_negative_interval;  // half-open [1 - 1/(n_g w_g), 1): phi < 0
  long precision_bits = 0;                    // precision actually used
};

namespace detail {

inline RootInterval root_interval(const QuadraticBound& q, const Rational& disc, long precision_bits) {
  const Rational two_a = Rational(-2) * q.a2;
  const IntervalEnclosure root = sqrt_enclosure(disc, precision_bits);
  return {{(q.a1 - root.lo) / two_a, (q.a1 + root.lo) / two_a}, {(q.a1 - root.hi) / two_a, (q.a1 + root.hi) / two_a}};
}

}  // namespace detail

/// Certified dominating intervals.  The precision is doubled from the requested
/// value until 1/2 lies strictly inside both inner enclosures, which always
/// happens because p_1(1/2) and p_2(1/2) are positive.
inline DominatingReport dominating_intervals(const CurveInvariants& inv, long precision_bits) {
  if (precision_bits < 1) throw std::invalid_argument("precision must be >= 1 bit");
  DominatingReport rep;
  rep.p1 = p1_bound(inv);
  rep.p2 = p2_bound(inv);
  rep.d1 = discriminant_d1(inv);
  rep.d2 = discriminant_d2(inv);
  if (rep.d1 != rep.p1.discriminant() || rep.d2 != rep.p2.discriminant())
    throw std::logic_error("discriminant formulas disagree with the stored bounds");
  if (rep.d1.sign() <= 0 || rep.d2.sign() <= 0)
    throw std::logic_error("non-positive discriminant for curve " + inv.pairs.str());

  const Rational half(Integer(1), Integer(2));
  long bits = precision_bits;
  for (;;) {
    rep.interval1 = detail::root_interval(rep.p1, rep.d1, bits);
    rep.interval2 = detail::root_interval(rep.p2, rep.d2, bits);
    if (rep.interval1.inner.contains_strictly(half) && rep.interval2.inner.contains_strictly(half)) break;
    if (bits > (1L << 20)) throw std::logic_error("1/2 never entered the dominating intervals");
    bits *= 2;
  }
  rep.precision_bits = bits;
  rep.left_interval = {Rational(0), inv.lct};
  rep.right_negative_interval = {inv.max_exp_lt1, Rational(1)};
  return rep;
}

/// phi_f(r) > 0, strictly; 0 <= r < 1.
inline bool is_dominating(const CurveInvariants& inv, const Rational& r) { return phi_closed(inv, r).sign() > 0; }

}  // namespace spectra
