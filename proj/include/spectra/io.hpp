#pragma once

// Text forms used by the command line: pair lists, comma lists and correctly
// rounded decimals of exact rationals.

#include "spectra/curve.hpp"
#include "spectra/numerics.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spectra {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

}  // namespace detail

/// "n1,l1;n2,l2;..." -> raw pairs (not yet validated).  A trailing ';' is allowed.
inline std::vector<PuiseuxPair> parse_pair_list(std::string_view text) {
  auto items = detail::split(text, ';');
  if (items.size() > 1 && items.back().empty()) items.pop_back();
  std::vector<PuiseuxPair> out;
  for (std::string_view item : items) {
    if (item.empty() && items.size() == 1) break;  // "" -> empty list, rejected by validation
    auto parts = detail::split(item, ',');
    if (parts.size() != 2) throw std::invalid_argument("expected 'n,l' but got '" + std::string(item) + "'");
    out.push_back({parse_integer(parts[0]), parse_integer(parts[1])});
  }
  return out;
}

inline PuiseuxPairs parse_pairs(std::string_view text) { return validate_pairs(parse_pair_list(text)); }

/// "a,b,c" -> Rationals ("p" or "p/q" each).
inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (auto item : detail::split(text, ',')) out.push_back(Rational::parse(item));
  return out;
}

inline std::vector<Integer> parse_integer_list(std::string_view text) {
  std::vector<Integer> out;
  for (auto item : detail::split(text, ',')) out.push_back(parse_integer(item));
  return out;
}

/// x rounded to `digits` places after the point, ties to even; no exponent
/// notation.  to_decimal(2/3, 4) == "0.6667", to_decimal(-1/8, 2) == "-0.12".
inline std::string to_decimal(const Rational& x, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const Rational scaled = abs(x) * Rational(scale);
  Integer q = floor(scaled);
  const Rational rem = scaled - Rational(q);
  const Rational half(Integer(1), Integer(2));
  if (rem > half || (rem == half && mpz_odd_p(q.get_mpz_t()))) ++q;

  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  if (x.sign() < 0 && q != 0) body.insert(0, "-");
  return body;
}

}  // namespace spectra
