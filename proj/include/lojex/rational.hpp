#pragma once

#include <gmpxx.h>

#include <string>

namespace lojex {

// Exact rational in lowest terms, denominator > 0.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long numerator, long denominator = 1);
Rational make_rational(const Integer& numerator, const Integer& denominator);

// "p" or "p/q".
std::string to_string(const Rational& value);

// "k+r/q" when the value exceeds one in magnitude and is not an integer,
// otherwise the same as to_string. Negative values use "-(k+r/q)".
std::string to_mixed_string(const Rational& value);

// Parses "p" or "p/q" (optionally signed). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

Integer floor(const Rational& value);

}  // namespace lojex
