#pragma once

// Brute-force oracles and random generators shared by the test suites.
// The oracles use only Poly::evaluate and exact integer arithmetic, never
// the modular evaluators or counting kernels under test.

#include <complex>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "iosc/poly.hpp"
#include "iosc/ringcount.hpp"

namespace iosc::testing {

inline std::vector<Integer> to_point(const std::vector<std::uint64_t>& x) {
  std::vector<Integer> out;
  for (auto v : x) out.push_back(to_integer(v));
  return out;
}

inline bool advance(std::vector<std::uint64_t>& x, std::uint64_t base) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (++x[i] < base) return true;
    x[i] = 0;
  }
  return false;
}

inline bool divisible(const Integer& v, const Integer& mod) { return mpz_divisible_p(v.get_mpz_t(), mod.get_mpz_t()) != 0; }

/// #{x in (Z/p^m)^n : all gens = 0 mod p^m}, optionally restricted by a
/// predicate on the residues mod p.
template <class Pred>
Integer brute_count(const PolySystem& sys, std::uint64_t p, unsigned m, Pred keep) {
  const std::uint64_t P = upow(p, m);
  const Integer mod = to_integer(P);
  std::vector<std::uint64_t> x(sys.nvars, 0);
  Integer total = 0;
  do {
    std::vector<std::uint64_t> red(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) red[i] = x[i] % p;
    if (!keep(red)) continue;
    const auto pt = to_point(x);
    bool ok = true;
    for (const auto& f : sys.gens) {
      if (!divisible(f.evaluate(pt), mod)) {
        ok = false;
        break;
      }
    }
    if (ok) ++total;
  } while (advance(x, P));
  return total;
}

inline Integer brute_count(const PolySystem& sys, std::uint64_t p, unsigned m) {
  return brute_count(sys, p, m, [](const std::vector<std::uint64_t>&) { return true; });
}

/// E(m) straight from its definition with Z the full space.
inline Rational brute_E(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned m) {
  const long n = static_cast<long>(sys.nvars);
  const Rational pq(to_integer(p));
  if (m == 1) {
    const Rational c(brute_count(sys, p, 1));
    return qpow(pq, -n) * (c - qpow(pq, n - static_cast<long>(r)));
  }
  const Rational a(brute_count(sys, p, m)), b(brute_count(sys, p, m - 1));
  return qpow(pq, -static_cast<long>(m) * n) * (a - qpow(pq, n - static_cast<long>(r)) * b);
}

/// Floating character sum p^{-m(n+r)} sum_{y primitive, x} e(y.f(x)/p^m).
inline std::complex<double> float_charsum(const PolySystem& sys, std::uint64_t p, unsigned m) {
  const std::uint64_t P = upow(p, m);
  const std::size_t n = sys.nvars, r = sys.gens.size();
  const Integer mod = to_integer(P);
  std::vector<std::vector<std::uint64_t>> values;
  std::vector<std::uint64_t> x(n, 0);
  do {
    std::vector<std::uint64_t> v;
    const auto pt = to_point(x);
    for (const auto& f : sys.gens) {
      Integer z = f.evaluate(pt) % mod;
      if (z < 0) z += mod;
      v.push_back(z.get_ui());
    }
    values.push_back(std::move(v));
  } while (advance(x, P));
  std::complex<double> acc = 0;
  std::vector<std::uint64_t> y(r, 0);
  do {
    bool prim = false;
    for (auto yi : y) prim |= yi % p != 0;
    if (!prim) continue;
    for (const auto& v : values) {
      std::uint64_t ph = 0;
      for (std::size_t i = 0; i < r; ++i) ph = (ph + y[i] * v[i]) % P;
      acc += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(ph) / static_cast<double>(P));
    }
  } while (advance(y, P));
  return acc / std::pow(static_cast<double>(P), static_cast<double>(n + r));
}

/// Random polynomial with small coefficients.
inline Poly random_poly(std::mt19937_64& rng, std::size_t n, unsigned max_deg, unsigned max_terms,
                        int coef = 3) {
  std::uniform_int_distribution<unsigned> deg(0, max_deg), terms(1, max_terms);
  std::uniform_int_distribution<int> c(-coef, coef);
  Poly f(n);
  const unsigned t = terms(rng);
  for (unsigned k = 0; k < t; ++k) {
    Poly::Monomial mono(n, 0);
    unsigned budget = deg(rng);
    for (unsigned j = 0; j < budget; ++j) mono[rng() % n] += 1;
    const int v = c(rng);
    if (v != 0) f.add_term(mono, v);
  }
  return f;
}

inline Poly random_nonconstant(std::mt19937_64& rng, std::size_t n, unsigned max_deg, unsigned max_terms) {
  for (;;) {
    Poly f = random_poly(rng, n, max_deg, max_terms);
    if (!f.is_constant()) return f;
  }
}

inline Poly P(const char* text, std::size_t n) { return parse_poly(text, n); }

}  // namespace iosc::testing
