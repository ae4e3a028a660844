#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "iosc/ideal.hpp"
#include "iosc/region.hpp"

namespace iosc {

/// A bare list of polynomials in `nvars` variables. Unlike IdealSpec it
/// accepts constants (including 0) and the empty list, which the counting
/// routines treat literally.
struct PolySystem {
  std::size_t nvars = 0;
  std::vector<Poly> gens;

  PolySystem() = default;
  PolySystem(std::size_t n, std::vector<Poly> g);
  PolySystem(const IdealSpec& spec);  // NOLINT(google-explicit-constructor)
};

enum class CountMethod { Naive, Lifting };

/// N_0, ..., N_M where N_m = #{x in (Z/p^m)^n restricted to the region :
/// every generator vanishes mod p^m}. N_0 is 1 by convention. The
/// region is a constraint on x mod p and is ignored at m = 0.
std::vector<Integer> count_levels(const PolySystem& sys, std::uint64_t p, unsigned M,
                                  const Region& region, CountMethod method = CountMethod::Lifting);

/// N_m alone.
Integer count_zpm(const PolySystem& sys, std::uint64_t p, unsigned m, const Region& region,
                  CountMethod method = CountMethod::Lifting);
Integer count_zpm(const PolySystem& sys, std::uint64_t p, unsigned m,
                  CountMethod method = CountMethod::Lifting);

/// Common zeros in F_{p^k}^n.
Integer count_ff(const PolySystem& sys, std::uint64_t p, unsigned k);

struct DimSample {
  std::uint64_t q = 0;
  Integer count;
};

struct DimEstimate {
  int dim = -1;
  std::vector<DimSample> samples;  ///< sorted by q
  bool confident = false;
};

/// Lang-Weil style estimate: round(log_q count) at the largest q, with
/// q = p^k for the given primes and k <= maxk. Sizes beyond the budget
/// are skipped; if nothing fits, BudgetExceeded is thrown.
DimEstimate dim_estimate(const PolySystem& sys, const std::vector<std::uint64_t>& primes,
                         unsigned maxk = 1);

struct BsingResult {
  unsigned degree = 0;
  int s = -1;
  bool exact = false;  ///< decided without counting (constant or vanishing minors)
  DimEstimate estimate;
};

/// Dimension of the locus where the Jacobian of `forms` has rank below
/// forms.size(). `degree` steers the default prime choice and warnings.
BsingResult rank_locus_dim(std::size_t n, const std::vector<Poly>& forms, unsigned degree,
                           const std::vector<std::uint64_t>& primes = {}, unsigned maxk = 1);

/// Dimension s_{wi} of the Birch singular locus of the top w-parts of each
/// group. Without explicit primes, a few primes above the largest degree
/// are chosen within the budget. Supplied primes p <= the degree produce
/// a warning on stderr.
std::vector<BsingResult> bsing_dim(const IdealSpec& spec,
                                   const std::vector<std::uint64_t>& primes = {},
                                   unsigned maxk = 1);
/// Convenience: degree -> s.
std::map<unsigned, int> bsing_map(const IdealSpec& spec,
                                  const std::vector<std::uint64_t>& primes = {});

/// Default prime list for dimension estimates: primes above `min_p`, kept
/// while p^n stays under `cap` points, at most `count` of them.
std::vector<std::uint64_t> default_dim_primes(std::size_t n, std::uint64_t min_p,
                                              std::uint64_t cap, std::size_t count = 3);

}  // namespace iosc
