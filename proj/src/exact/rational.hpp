#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace quadpois::exact {

// Exact rational scalar. mpq_class keeps numerator and denominator coprime
// with a positive denominator once canonicalized; every constructor used in
// this code base canonicalizes.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "3", "-1/2".
std::string to_string(const Rational& q);

// Accepts "p" or "p/q" with optional sign. Throws ParseError.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace quadpois::exact
