#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace takiff {

/// Exact arbitrary-precision rational. Always reduced, denominator > 0.
using Rational = mpq_class;

/// Parses "n" or "n/d" (d > 0 after reduction). Throws std::invalid_argument on bad input.
inline Rational rat_parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

/// Canonical text form: "n" or "n/d" with d > 0.
inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline Rational rat(long num, long den = 1) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

} // namespace takiff
