#include "iosc/sseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "iosc/modeval.hpp"
#include "iosc/runtime.hpp"

namespace iosc {

void EValueCache::prepare(std::uint64_t p, unsigned M) {
  auto it = values_.find(p);
  if (it != values_.end() && it->second.size() > M) return;
  values_[p] = E_values(sys_, r_, p, M);
}

Rational EValueCache::prime_power(std::uint64_t p, unsigned m) {
  if (m == 0) return 1;
  prepare(p, m);
  return values_[p][m];
}

Rational EValueCache::composite(std::uint64_t q) {
  if (q == 0) throw InvalidInput("modulus must be positive");
  Rational out = 1;
  for (const auto& [p, m] : factorize(q)) out *= prime_power(p, m);
  return out;
}

Rational E_composite(const PolySystem& sys, unsigned r, std::uint64_t q) {
  EValueCache cache(sys, r);
  return cache.composite(q);
}

CycloValue E_direct(const PolySystem& sys, unsigned r, std::uint64_t N) {
  const std::size_t n = sys.nvars;
  if (sys.gens.size() != r) throw InvalidInput("the character-sum form needs exactly r generators");
  if (N < 2 || N >= (std::uint64_t{1} << 32)) throw InvalidInput("direct modulus must lie in [2, 2^32)");
  runtime::check_budget(std::pow(static_cast<long double>(N), static_cast<long double>(n)),
                        "direct sum (x enumeration)");
  std::vector<ModPoly> F;
  for (const auto& f : sys.gens) F.emplace_back(f, N);

  std::map<std::vector<std::uint64_t>, std::uint64_t> values;
  std::vector<std::uint64_t> x(n, 0), v(r);
  do {
    for (std::size_t i = 0; i < r; ++i) v[i] = F[i](x);
    ++values[v];
  } while (next_tuple(x, N));
  runtime::check_budget(std::pow(static_cast<long double>(N), static_cast<long double>(r)) *
                            static_cast<long double>(values.size()),
                        "direct sum (y enumeration)");

  std::vector<std::uint64_t> primes;
  for (const auto& [ell, e] : factorize(N)) primes.push_back(ell);
  std::vector<Integer> hist(N, 0);
  std::vector<std::uint64_t> y(r);
  for (const auto& [val, mult] : values) {
    std::fill(y.begin(), y.end(), 0);
    std::vector<std::uint64_t> local(N, 0);
    do {
      bool ok = true;
      for (auto ell : primes) {
        bool unit = false;
        for (auto yi : y) unit |= (yi % ell) != 0;
        if (!unit) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::uint64_t phase = 0;
      for (std::size_t i = 0; i < r; ++i) phase = (phase + y[i] * val[i]) % N;
      ++local[phase];
    } while (next_tuple(y, N));
    const Integer m = to_integer(mult);
    for (std::uint64_t j = 0; j < N; ++j) {
      if (local[j]) hist[j] += m * to_integer(local[j]);
    }
  }
  const Rational scale = qpow(Rational(to_integer(N)), -static_cast<long>(n + r));
  return CycloValue::from_counts(N, hist) * scale;
}

MultiplicativityCheck verify_multiplicativity(const PolySystem& sys, unsigned r, std::uint64_t q1,
                                              std::uint64_t q2) {
  if (q1 == 0 || q2 == 0 || std::gcd(q1, q2) != 1) throw InvalidInput("moduli must be coprime and positive");
  EValueCache cache(sys, r);
  MultiplicativityCheck out;
  out.product = cache.composite(q1) * cache.composite(q2);
  const std::uint64_t N = q1 * q2;
  if (N == 1) {
    out.direct = CycloValue::rational(1, 1);
  } else {
    out.direct = E_direct(sys, r, N);
  }
  out.holds = out.direct.equals_rational(out.product);
  return out;
}

SeriesReport singular_series_partial(const PolySystem& sys, unsigned r, std::uint64_t Qmax,
                                     std::optional<double> sigma, double c) {
  if (Qmax == 0) throw InvalidInput("Qmax must be at least 1");
  EValueCache cache(sys, r);
  for (std::uint64_t p = 2; p <= Qmax; ++p) {
    if (!is_prime(p)) continue;
    unsigned M = 0;
    for (std::uint64_t pk = p; pk <= Qmax; pk *= p) ++M;
    cache.prepare(p, M);
  }
  SeriesReport out;
  Rational acc = 0;
  for (std::uint64_t q = 1; q <= Qmax; ++q) {
    SeriesTerm t;
    t.q = q;
    const auto fac = factorize(q);
    t.source = q == 1 ? "unit" : (fac.size() == 1 ? "prime-power" : "crt");
    t.value = cache.composite(q);
    t.weighted = t.value * Rational(ipow(to_integer(q), r));
    acc += t.weighted;
    out.terms.push_back(std::move(t));
    out.partial_sums.push_back(acc);
  }
  out.tail_constant = c;
  if (sigma) {
    out.sigma = sigma;
    const double excess = *sigma - static_cast<double>(r) - 1.0;
    if (excess > 0) {
      out.tail_bound = c * std::pow(static_cast<double>(Qmax), -excess) / excess;
    }
  }
  return out;
}

DensityReport p_adic_density(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned M) {
  if (M == 0) throw InvalidInput("M must be at least 1");
  const std::size_t n = sys.nvars;
  const auto N = count_levels(sys, p, M, Region::full(n));
  const Rational pq(to_integer(p));
  DensityReport out;
  for (unsigned m = 1; m <= M; ++m) {
    const long e = -static_cast<long>(m) * (static_cast<long>(n) - static_cast<long>(r));
    out.values.push_back(Rational(N[m]) * qpow(pq, e));
  }
  if (M >= 2) out.last_delta = out.values[M - 1] - out.values[M - 2];
  // Two zero deltas in a row; one is not enough for period-2 sequences.
  if (M >= 3) out.stabilized = out.last_delta == 0 && out.values[M - 2] == out.values[M - 3];
  return out;
}

IrreducibilityReport irreducibility_probe(const PolySystem& sys, unsigned r,
                                          const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw InvalidInput("irreducibility_probe needs at least one prime");
  IrreducibilityReport out;
  out.primes = primes;
  std::sort(out.primes.begin(), out.primes.end());
  for (auto p : out.primes) {
    const Rational e = E_counts(sys, r, p, 1);
    out.values.push_back(abs(e) * Rational(ipow(to_integer(p), r)));
  }
  const Rational half(1, 2);
  bool non_increasing = true;
  Rational lowest = out.values.front();
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (i > 0 && out.values[i] > out.values[i - 1]) non_increasing = false;
    if (out.values[i] < lowest) lowest = out.values[i];
  }
  if (out.values.back() < half && non_increasing) {
    out.verdict = "consistent-with-geometric-irreducibility";
  } else if (lowest >= half) {
    out.verdict = "reducible-or-wrong-dimension";
  } else {
    out.verdict = "inconclusive";
  }
  return out;
}

}  // namespace iosc
