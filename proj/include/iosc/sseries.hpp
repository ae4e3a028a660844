#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iosc/expsum.hpp"

namespace iosc {

/// Memoised prime-power values E(p^m), computed one prime at a time with a
/// single counting pass up to the largest exponent requested.
class EValueCache {
 public:
  EValueCache(PolySystem sys, unsigned r) : sys_(std::move(sys)), r_(r) {}
  Rational prime_power(std::uint64_t p, unsigned m);
  /// Make sure E(p^1..p^M) are available (one lifting pass).
  void prepare(std::uint64_t p, unsigned M);
  Rational composite(std::uint64_t q);

 private:
  PolySystem sys_;
  unsigned r_;
  std::map<std::uint64_t, std::vector<Rational>> values_;
};

/// E(q) as the product of its prime-power factors; E(1) = 1.
Rational E_composite(const PolySystem& sys, unsigned r, std::uint64_t q);

/// Direct character sum over Z/N with tuples y that are nonzero modulo
/// every prime divisor of N, normalised by N^{-(n+r)}, reduced exactly in
/// Q(zeta_N). Independent of the prime-power counting code.
CycloValue E_direct(const PolySystem& sys, unsigned r, std::uint64_t N);

struct MultiplicativityCheck {
  bool holds = false;
  Rational product;  ///< E(q1) E(q2)
  CycloValue direct;
};
MultiplicativityCheck verify_multiplicativity(const PolySystem& sys, unsigned r, std::uint64_t q1,
                                              std::uint64_t q2);

struct SeriesTerm {
  std::uint64_t q = 1;
  Rational value;     ///< E(q)
  Rational weighted;  ///< q^r E(q)
  std::string source; ///< "unit", "prime-power" or "crt"
};

struct SeriesReport {
  std::vector<SeriesTerm> terms;
  std::vector<Rational> partial_sums;
  std::optional<double> tail_bound;  ///< c Q^{r+1-sigma} / (sigma - r - 1)
  std::optional<double> sigma;
  double tail_constant = 1.0;
  Rational total() const { return partial_sums.empty() ? Rational(0) : partial_sums.back(); }
};

/// sum_{q <= Qmax} q^r E(q). With sigma > r + 1, attaches the tail bound
/// implied by |E(q)| <= c q^{-sigma}.
SeriesReport singular_series_partial(const PolySystem& sys, unsigned r, std::uint64_t Qmax,
                                     std::optional<double> sigma = std::nullopt, double c = 1.0);

struct DensityReport {
  std::vector<Rational> values;  ///< p^{-m(n-r)} N_m, m = 1..M
  Rational last_delta;
  bool stabilized = false;  ///< the last three values agree (needs M >= 3)
};
DensityReport p_adic_density(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned M);

struct IrreducibilityReport {
  std::vector<std::uint64_t> primes;
  std::vector<Rational> values;  ///< |E(p, 1)| p^r
  std::string verdict;           ///< consistent-with-geometric-irreducibility,
                                 ///< reducible-or-wrong-dimension, inconclusive
};
IrreducibilityReport irreducibility_probe(const PolySystem& sys, unsigned r,
                                          const std::vector<std::uint64_t>& primes);

}  // namespace iosc
