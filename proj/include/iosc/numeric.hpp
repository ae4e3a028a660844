#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace iosc {

using Integer = mpz_class;
using Rational = mpq_class;

/// "num/den" (or just "num" when den == 1).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
Rational parse_rational(const std::string& text);
/// num/den in lowest terms; den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

Integer ipow(const Integer& base, unsigned long exponent);
Rational qpow(const Rational& base, long exponent);
std::uint64_t upow(std::uint64_t base, unsigned exponent);
/// base^exponent, or 0 when the result does not fit in 64 bits.
std::uint64_t upow_checked(std::uint64_t base, unsigned exponent);

bool is_prime(std::uint64_t n);
/// Prime factorisation as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

inline Integer to_integer(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

/// Nonnegative residue of z modulo m.
std::uint64_t mod_reduce(const Integer& z, std::uint64_t m);

double to_double(const Rational& q);

}  // namespace iosc
