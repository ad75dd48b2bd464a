#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nilcycle {

/// Exact rational number. GMP keeps every value in lowest terms with a
/// positive denominator after each arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q" or "-p/q". Decimal points, exponents and zero
/// denominators are rejected with std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Like parse_rational, but also accepts decimal literals such as "0.05"
/// or "1e-3", converted exactly (0.05 becomes 1/20).
Rational parse_decimal(std::string_view text);

/// "p/q" form, or "p" for integers.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

int sign(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

/// Exact k-th root when both numerator and denominator are perfect k-th
/// powers and the value is positive; returns false otherwise.
bool exact_root(const Rational& value, unsigned k, Rational& root);

/// Exact binary value of a finite double.
Rational rational_from_double(double value);

}  // namespace nilcycle
