#pragma once

// Exact rational scalars.
//
// Rational is GMP's mpq_class. Every arithmetic result produced by gmpxx is
// canonical (lowest terms, positive denominator, zero as 0/1); values built
// from a numerator/denominator pair go through make_rational() which
// canonicalizes explicitly.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace xxxlab {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p/q", or a finite decimal such as "2.5" / "-0.125".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Best rational approximation p/q with q <= bound such that
/// |x - p/q| < 1e-9. The imaginary part of x must also be below 1e-9.
/// Returns nullopt when no such approximation exists.
std::optional<Rational> rational_reconstruct(Complex x, std::int64_t bound);

}  // namespace xxxlab
