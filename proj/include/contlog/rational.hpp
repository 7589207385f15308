#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace contlog {

/// Exact rational number. All truth values, weights and LP data use this type.
using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (optional leading '-'); the result is canonical.
Rational parse_rational(std::string_view text);

/// Renders a rational as reduced "p/q" with q > 0, always including the slash.
std::string to_string(const Rational& q);

inline bool in_unit_interval(const Rational& q) { return sgn(q) >= 0 && q <= 1; }

inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// Truncated subtraction on reals: max(0, a - b).
inline Rational monus(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return sgn(d) > 0 ? d : Rational(0);
}

/// 2^-n as an exact rational.
Rational dyadic(unsigned n);

}  // namespace contlog
