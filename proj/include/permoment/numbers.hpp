#pragma once

#include <gmpxx.h>

#include <string>

#include "permoment/errors.hpp"

namespace permoment {

// Exact arithmetic everywhere. Integers and rationals are arbitrary
// precision; rationals are kept in lowest terms with positive denominator
// (GMP maintains the canonical form through arithmetic).
using Integer = mpz_class;
using Rational = mpq_class;

/// Rational from numerator/denominator, normalized. Throws DomainError on
/// zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p/q" or "p". Whitespace around tokens is accepted.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Decimal approximation with the given number of fractional digits,
/// round-half-away-from-zero. Only for display; exact values stay rational.
std::string decimal_string(const Rational& q, int digits);

/// n! for n >= 0.
Integer factorial(long n);

/// n(n-1)...(n-k+1); k = 0 gives 1. n may be negative or smaller than k.
Integer falling_factorial(long n, long k);

/// Binomial coefficient; 0 when k < 0 or k > n >= 0 or n < 0 < k.
Integer binomial(long n, long k);

/// Unsigned Stirling numbers of the first kind: permutations of [k] with
/// i cycles.
Integer stirling_first_unsigned(long k, long i);

/// Stirling numbers of the second kind: partitions of [r] into k blocks.
Integer stirling_second(long r, long k);

/// Bell numbers, B_r = sum_k S(r,k); B_0 = 1.
Integer bell(long r);

/// Lah numbers L(k,j) = binom(k-1,j-1) k!/j! for 1 <= j <= k.
/// Throws DomainError outside that range.
Integer lah(long k, long j);

} // namespace permoment
