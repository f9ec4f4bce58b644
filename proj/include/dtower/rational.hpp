#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dtower {

/// Exact rational number. GMP keeps the value canonical: gcd(num, den) = 1, den > 0.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Parses "p", "-p" or "p/q" (q != 0). Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Renders as "p" when integral, otherwise "p/q".
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);

/// 2^e for any integer e.
Rational pow2(int e);

}  // namespace dtower
