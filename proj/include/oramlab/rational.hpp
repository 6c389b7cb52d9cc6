#pragma once

#include <boost/rational.hpp>

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "oramlab/error.hpp"

namespace oramlab {

// Exact thresholds such as n/(5k) are carried as rationals so that density
// tests never drift through floor/ceil rounding.
// Compare Rational only against Rational: mixed int == rational recurses
// forever under C++20 rewritten comparisons.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Smallest integer >= r.
inline std::int64_t ceil(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

// Largest integer <= r.
inline std::int64_t floor(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

// True iff the integer count meets the threshold, compared exactly.
inline bool meets(std::int64_t count, const Rational& threshold) {
  return Rational(count) >= threshold;
}

namespace detail {
inline std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw SpecError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}
}  // namespace detail

// Accepts "7", "64/5" and terminating decimals such as "12.8".
inline Rational parse_rational(std::string_view s) {
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = detail::parse_int(s.substr(0, slash), "rational");
    auto den = detail::parse_int(s.substr(slash + 1), "rational");
    if (den == 0) throw SpecError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto frac = s.substr(dot + 1);
    if (frac.size() > 12) throw SpecError("too many decimals in '" + std::string(s) + "'");
    bool negative = !s.empty() && s.front() == '-';
    auto whole_part = s.substr(0, dot);
    std::int64_t whole = whole_part.empty() || whole_part == "-" ? 0 : detail::parse_int(whole_part, "rational");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::int64_t f = frac.empty() ? 0 : detail::parse_int(frac, "rational");
    if (negative) f = -f;
    return Rational(whole * scale + f, scale);
  }
  return Rational(detail::parse_int(s, "rational"));
}

}  // namespace oramlab
