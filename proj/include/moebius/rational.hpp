#pragma once

#include <gmpxx.h>

#include <string>

namespace moebius {

// Exact rational arithmetic; mpq_class keeps values in lowest terms after
// every arithmetic operation.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace moebius
