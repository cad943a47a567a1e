#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace m0n {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (optional leading '-', no whitespace) into a
/// canonical rational. Throws Error(ParseError) otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

/// p/q in lowest terms. gmpxx leaves a two-argument construction as given,
/// and comparisons assume canonical operands.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational pow(const Rational& base, unsigned exponent);

}  // namespace m0n
