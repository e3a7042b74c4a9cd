#pragma once

// Exact rationals. GMP's mpq_class keeps values in lowest terms with a
// positive denominator after every arithmetic operation, which is exactly
// the canonical form every cohomology computation here relies on.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gfc {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q"; throws InputError on anything else or q = 0.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace gfc
