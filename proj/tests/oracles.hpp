#pragma once

// Independent reference computations used only by the tests.  None of them
// share code paths with the library beyond the Rational type.

#include "spectra/spectra.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace spectra::oracle {

/// Random valid pair lists with g <= max_g, 2 <= n <= max_n, 1 <= l <= max_l.
/// Non-coprime pairs are redrawn.
inline std::vector<PuiseuxPairs> random_curves(std::size_t count, std::uint64_t seed, int max_g = 4, int max_n = 5,
                                               int max_l = 9) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> g_dist(1, max_g), n_dist(2, max_n), l_dist(1, max_l);
  std::vector<PuiseuxPairs> out;
  out.reserve(count);
  while (out.size() < count) {
    const int g = g_dist(rng);
    std::vector<PuiseuxPair> raw;
    while (static_cast<int>(raw.size()) < g) {
      const long n = n_dist(rng), l = l_dist(rng);
      if (std::gcd(n, l) == 1) raw.push_back({Integer(n), Integer(l)});
    }
    out.push_back(validate_pairs(std::move(raw)));
  }
  return out;
}

/// Number of gaps of the numerical semigroup generated by `gens` (gcd 1).
/// Membership is sieved upward until gens[0] consecutive members are seen,
/// after which every larger integer is a member.
inline std::uint64_t semigroup_gaps(const std::vector<long>& gens) {
  const long m = *std::min_element(gens.begin(), gens.end());
  std::vector<char> member{1};
  std::uint64_t gaps = 0;
  long run = 1;
  for (long x = 1; run < m; ++x) {
    char in = 0;
    for (long g : gens)
      if (g <= x && member[static_cast<std::size_t>(x - g)]) {
        in = 1;
        break;
      }
    member.push_back(in);
    if (in) {
      ++run;
    } else {
      run = 0;
      ++gaps;
    }
  }
  return gaps;
}

/// Spectrum below 1 in set form: for each j, c and every 0 < a < w_j,
/// 0 < b < n_j with b/n_j + a/w_j < 1, the value (c + b/n_j + a/w_j)/e_j.
/// Built with plain Rational sums and a std::map.
inline std::map<Rational, std::uint64_t> set_form_spectrum(const CurveInvariants& inv) {
  std::map<Rational, std::uint64_t> out;
  const Rational one(1);
  for (std::size_t j = 1; j <= inv.g; ++j) {
    const long e = inv.e[j].get_si(), n = inv.n(j).get_si(), w = inv.w[j].get_si();
    for (long b = 1; b < n; ++b)
      for (long a = 1; a < w; ++a) {
        const Rational frac = Rational(Integer(b), Integer(n)) + Rational(Integer(a), Integer(w));
        if (!(frac < one)) continue;
        for (long c = 0; c < e; ++c) ++out[(Rational(c) + frac) / Rational(e)];
      }
  }
  return out;
}

/// #{alpha <= r} by a linear scan of the set-form spectrum.
inline std::uint64_t scan_count(const std::map<Rational, std::uint64_t>& spec, const Rational& r) {
  std::uint64_t c = 0;
  for (const auto& [v, m] : spec) {
    if (r < v) break;
    c += m;
  }
  return c;
}

/// Milnor number straight from the recurrences for e, w and mu_j, in machine
/// integers (small curves only).
inline long naive_mu(const PuiseuxPairs& p) {
  long mu = 0, w = 1, n_prev = 1;
  for (std::size_t j = 1; j <= p.g(); ++j) {
    const long n = p.n(j).get_si(), l = p.l(j).get_si();
    w = n * n_prev * w + l;
    mu = (n - 1) * (w - 1) + n * mu;
    n_prev = n;
  }
  return mu;
}

}  // namespace spectra::oracle
