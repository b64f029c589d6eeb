#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rforge {

/// Exact rational; gmp keeps it in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p" or "p/q". Throws std::invalid_argument on malformed input or q == 0.
Rational parse_rational(std::string_view text);

} // namespace rforge
