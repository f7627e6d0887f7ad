#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace superpluecker {

/// Exact rational number. GMP keeps it canonical: gcd(num, den) = 1, den > 0.
using Rational = mpq_class;

/// Always "p/q", including "0/1" and "5/1".
std::string to_pq_string(const Rational& q);

/// Parses "p/q" or "p"; throws DomainError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// The positive rational square root, if q is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& q);

}  // namespace superpluecker
