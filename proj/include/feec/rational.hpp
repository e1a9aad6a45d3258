#pragma once

#include <gmpxx.h>
#include <string>
#include <string_view>

namespace feec
{

/// Exact rational number, always kept in canonical (reduced, den > 0) form.
using Rational = mpq_class;

/// Canonical "p/q" rendering; zero is "0/1".
std::string to_string(const Rational& q);

/// Parses "p/q" or an integer "p". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms. mpq_class(num, den) skips that step, and GMP
/// arithmetic and comparison assume canonical operands.
Rational make_rational(long num, long den);

} // namespace feec
