#pragma once

// Hodge spectrum of an irreducible plane curve by direct enumeration of
//
//   c/e_j + b/(e_j n_j) + a/(e_j w_j),   1 <= j <= g, 0 <= c < e_j,
//   1 <= b < n_j, 1 <= a <= floor(w_j (1 - b/n_j)),
//
// which lists the mu/2 exponents in (0, 1) with multiplicity.  This is the
// brute-force reference the closed forms in distribution.hpp are checked
// against, so it deliberately avoids any of their algebra.

#include "spectra/curve.hpp"
#include "spectra/numerics.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spectra {

struct SpectralValue {
  Rational value;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const SpectralValue&, const SpectralValue&) = default;
};

/// Spectral exponents in (0, 1), sorted ascending, equal values merged.
class Spectrum {
 public:
  Spectrum(std::vector<SpectralValue> values_lt1, Integer mu) : values_(std::move(values_lt1)), mu_(std::move(mu)) {
    prefix_.reserve(values_.size());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i].multiplicity == 0) throw std::invalid_argument("spectral value with zero multiplicity");
      if (i > 0 && !(values_[i - 1].value < values_[i].value)) throw std::invalid_argument("spectrum not strictly sorted");
      total += values_[i].multiplicity;
      prefix_.push_back(total);
    }
  }

  const std::vector<SpectralValue>& values_lt1() const { return values_; }
  const Integer& mu() const { return mu_; }
  std::uint64_t total_multiplicity() const { return prefix_.empty() ? 0 : prefix_.back(); }

  const Rational& min() const { return values_.front().value; }
  const Rational& max() const { return values_.back().value; }

  /// Number of exponents <= r, with multiplicity.  No range check.
  std::uint64_t count_leq(const Rational& r) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), r,
                               [](const Rational& x, const SpectralValue& v) { return x < v.value; });
    auto idx = static_cast<std::size_t>(it - values_.begin());
    return idx == 0 ? 0 : prefix_[idx - 1];
  }

 private:
  std::vector<SpectralValue> values_;
  Integer mu_;
  std::vector<std::uint64_t> prefix_;
};

namespace detail {

inline std::vector<SpectralValue> merge_sorted(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  std::vector<SpectralValue> out;
  for (auto& v : values) {
    if (!out.empty() && out.back().value == v)
      ++out.back().multiplicity;
    else
      out.push_back({std::move(v), 1});
  }
  return out;
}

}  // namespace detail

inline Spectrum enumerate_spectrum_lt1(const CurveInvariants& inv) {
  std::vector<Rational> values;
  const std::size_t half = to_int64(inv.mu / 2, "mu/2");
  values.reserve(half);
  for (std::size_t j = 1; j <= inv.g; ++j) {
    const Integer& e = inv.e[j];
    const Integer& n = inv.n(j);
    const Integer& w = inv.w[j];
    const Integer den = e * n * w;
    const Integer nw = n * w;
    const std::int64_t e_count = to_int64(e, "e_j");
    const std::int64_t n_count = to_int64(n, "n_j");
    for (std::int64_t c = 0; c < e_count; ++c) {
      for (std::int64_t b = 1; b < n_count; ++b) {
        // a <= floor(w (n - b) / n)
        const std::int64_t a_max = to_int64(Integer(w * (n - b)) / n, "a bound");
        Integer numer = c * nw + b * w;
        for (std::int64_t a = 1; a <= a_max; ++a) {
          numer += n;
          values.emplace_back(numer, den);
        }
      }
    }
  }
  return Spectrum(detail::merge_sorted(std::move(values)), inv.mu);
}

/// The whole spectrum in (0, 2): values below 1 and their mirror images 2 - a.
inline std::vector<SpectralValue> full_spectrum(const Spectrum& lt1) {
  std::vector<SpectralValue> out = lt1.values_lt1();
  const auto& low = lt1.values_lt1();
  for (auto it = low.rbegin(); it != low.rend(); ++it) out.push_back({Rational(2) - it->value, it->multiplicity});
  return out;
}

inline std::vector<SpectralValue> full_spectrum(const CurveInvariants& inv) {
  return full_spectrum(enumerate_spectrum_lt1(inv));
}

/// #{alpha <= r} by scanning the enumerated spectrum; r must lie in [0, 1).
inline std::uint64_t oracle_count(const Spectrum& spec, const Rational& r) {
  if (r.sign() < 0 || r >= Rational(1)) throw std::domain_error("oracle_count needs 0 <= r < 1, got " + r.str());
  return spec.count_leq(r);
}

}  // namespace spectra
