#pragma once

// Exact arithmetic kernel: unbounded integers, normalized rationals,
// floor / fractional part and certified enclosures of square roots.
//
// Nothing in this header touches floating point.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace spectra {

using Integer = mpz_class;

/// Number of bits needed for |x| (0 for x == 0).
inline std::size_t bit_length(const Integer& x) {
  return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

/// Parses a base-10 integer with optional leading sign; throws
/// std::invalid_argument on anything else.
inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9')
      throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

/// Exact fraction num/den with den > 0 and gcd(|num|, den) = 1.
///
/// Every constructor and operator returns a normalized value, so equality is
/// structural.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T v) : q_(Integer(static_cast<long>(v))) {}  // NOLINT(google-explicit-constructor)

  Rational(const Integer& v) : q_(v) {}  // NOLINT(google-explicit-constructor)

  Rational(const Integer& num, const Integer& den) {
    if (sgn(den) == 0) throw std::domain_error("rational with zero denominator");
    q_.get_num() = num;
    q_.get_den() = den;
    q_.canonicalize();
  }

  /// Accepts "p", "p/q", "-p/q".
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer den = parse_integer(text.substr(slash + 1));
    if (sgn(den) <= 0) throw std::invalid_argument("denominator must be positive in '" + std::string(text) + "'");
    return Rational(parse_integer(text.substr(0, slash)), den);
  }

  const Integer& num() const { return q_.get_num(); }
  const Integer& den() const { return q_.get_den(); }

  bool is_integer() const { return den() == 1; }
  int sign() const { return sgn(q_); }

  /// "p/q", or "p" when the value is an integer.
  std::string str() const { return is_integer() ? num().get_str() : num().get_str() + "/" + den().get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.sign() == 0) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

/// Largest integer <= x.
inline Integer floor(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return out;
}

/// Smallest integer >= x.
inline Integer ceil(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return out;
}

/// x - floor(x), always in [0, 1).
inline Rational fract(const Rational& x) {
  Integer rem;
  mpz_fdiv_r(rem.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return Rational(rem, x.den());
}

/// Largest s with s*s <= n.
inline Integer isqrt_floor(const Integer& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt_floor of a negative integer");
  Integer s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

inline bool is_perfect_square(const Integer& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

/// Closed interval [lo, hi] with rational endpoints.
struct IntervalEnclosure {
  Rational lo;
  Rational hi;

  IntervalEnclosure() = default;
  IntervalEnclosure(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (hi < lo) throw std::invalid_argument("interval enclosure with lo > hi");
  }

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_strictly(const Rational& x) const { return lo < x && x < hi; }
  bool is_point() const { return lo == hi; }

  friend bool operator==(const IntervalEnclosure&, const IntervalEnclosure&) = default;
};

/// Rational bounds lo, hi with lo^2 <= x <= hi^2 and hi - lo <= 2^-precision_bits.
/// Perfect squares give the degenerate interval [sqrt(x), sqrt(x)].
inline IntervalEnclosure sqrt_enclosure(const Rational& x, long precision_bits) {
  if (x.sign() < 0) throw std::domain_error("sqrt_enclosure of a negative rational");
  if (precision_bits < 1) throw std::invalid_argument("sqrt_enclosure needs precision_bits >= 1");
  if (is_perfect_square(x.num()) && is_perfect_square(x.den())) {
    Rational root(isqrt_floor(x.num()), isqrt_floor(x.den()));
    return {root, root};
  }
  // s = isqrt(floor(x * 4^k)) gives s^2 <= x*4^k < (s+1)^2.
  Integer scale = Integer(1) << static_cast<mp_bitcnt_t>(precision_bits);
  Integer scaled = floor(x * Rational(scale * scale));
  Integer s = isqrt_floor(scaled);
  return {Rational(s, scale), Rational(s + 1, scale)};
}

}  // namespace spectra
