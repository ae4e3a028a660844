#include "iosc/numeric.hpp"

#include "iosc/runtime.hpp"

namespace iosc {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw InvalidInput("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidInput("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational qpow(const Rational& base, long exponent) {
  const unsigned long e = exponent < 0 ? -exponent : exponent;
  Rational out(ipow(base.get_num(), e), ipow(base.get_den(), e));
  out.canonicalize();
  if (exponent < 0) {
    if (out == 0) throw InvalidInput("zero to a negative power");
    out = 1 / out;
  }
  return out;
}

std::uint64_t upow(std::uint64_t base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

std::uint64_t upow_checked(std::uint64_t base, unsigned exponent) {
  unsigned __int128 out = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    out *= base;
    if (out > UINT64_MAX) return 0;
  }
  return static_cast<std::uint64_t>(out);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t mod_reduce(const Integer& z, std::uint64_t m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), to_integer(m).get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace iosc
