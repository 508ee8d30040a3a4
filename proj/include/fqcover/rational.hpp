#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace fqcover {

using BigInt = mpz_class;
using Rational = mpq_class;

/// n/d in canonical form. Throws Error(DivisionByZero) when d = 0.
Rational ratio(const BigInt& n, const BigInt& d);

/// "numerator/denominator", or just the numerator when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);

/// Parses "a", "a/b" or "-a/b" exactly. Throws Error(SyntaxError).
Rational parse_rational(const std::string& text);

BigInt pow(const BigInt& base, std::uint64_t exponent);
Rational pow(const Rational& base, std::uint64_t exponent);

} // namespace fqcover
