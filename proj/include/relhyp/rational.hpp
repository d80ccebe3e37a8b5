#pragma once

#include <gmpxx.h>

#include <string>

namespace relhyp {

// Exact rational arithmetic everywhere; no floating point in any metric or
// chain computation.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// mpq_class(n, d) does not reduce; always construct through this helper
inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace relhyp
