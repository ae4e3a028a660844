#include "iosc/ringcount.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "iosc/ffield.hpp"
#include "iosc/modeval.hpp"
#include "iosc/runtime.hpp"

namespace iosc {

PolySystem::PolySystem(std::size_t n, std::vector<Poly> g) : nvars(n), gens(std::move(g)) {
  if (n == 0) throw InvalidInput("a polynomial system needs at least one variable");
  for (const auto& f : gens) {
    if (f.nvars() != n) throw InvalidInput("generator variable count mismatch");
  }
}

PolySystem::PolySystem(const IdealSpec& spec) : nvars(spec.nvars()), gens(spec.generators()) {}

namespace {

std::uint64_t checked_modulus(std::uint64_t p, unsigned m) {
  const std::uint64_t P = upow_checked(p, m);
  if (P == 0 || P >= (std::uint64_t{1} << 32)) {
    throw InvalidInput("p^m must stay below 2^32");
  }
  return P;
}

void check_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
}

// Number of slices for the outer loop; a pure function of the problem so
// that the merge order never depends on the worker count.
std::size_t slice_count(std::uint64_t base, std::size_t n) {
  if (n <= 1) return 1;
  std::uint64_t s = base;
  if (n >= 3 && s < 64) s *= base;
  return static_cast<std::size_t>(s);
}

std::vector<Integer> count_naive(const PolySystem& sys, std::uint64_t p, unsigned M,
                                 const Region& region) {
  const std::size_t n = sys.nvars;
  const std::uint64_t P = checked_modulus(p, M);
  runtime::check_budget(std::pow(static_cast<long double>(P), static_cast<long double>(n)),
                        "naive count");
  std::vector<ModPoly> F;
  for (const auto& f : sys.gens) F.emplace_back(f, P);
  const auto checker = region.checker(p);

  // hits[k] = #{x mod p^M : min valuation of the generators is exactly k}
  // (k = M meaning all vanish mod p^M).
  const std::size_t slices = slice_count(P, n);
  const std::uint64_t per_slice_lead = slices == 1 ? 0 : (slices == P ? 1 : 2);
  std::vector<std::vector<std::uint64_t>> hits(slices, std::vector<std::uint64_t>(M + 1, 0));
  runtime::parallel_for(slices, [&](std::size_t s) {
    std::vector<std::uint64_t> x(n, 0);
    const std::size_t lead = static_cast<std::size_t>(per_slice_lead);
    if (lead == 1) {
      x[0] = s;
    } else if (lead == 2) {
      x[0] = s / P;
      x[1] = s % P;
    }
    std::span<std::uint64_t> tail(x.data() + lead, n - lead);
    auto& h = hits[s];
    do {
      if (!checker.contains(x)) continue;
      unsigned v = M;
      for (const auto& f : F) {
        std::uint64_t val = f(x);
        unsigned k = 0;
        while (k < v && val % p == 0 && val != 0) {
          val /= p;
          ++k;
        }
        if (val != 0) v = std::min(v, k);
      }
      ++h[v];
    } while (next_tuple(tail, P));
  });

  std::vector<std::uint64_t> at_least(M + 2, 0);
  for (const auto& h : hits) {
    for (unsigned k = 0; k <= M; ++k) at_least[k] += h[k];
  }
  for (unsigned k = M; k-- > 0;) at_least[k] += at_least[k + 1];

  std::vector<Integer> N(M + 1);
  N[0] = 1;
  const Integer pz = to_integer(p);
  for (unsigned j = 1; j <= M; ++j) {
    // Each class mod p^j has p^{(M-j)n} lifts mod p^M.
    const Integer lifts = ipow(pz, static_cast<unsigned long>((M - j) * n));
    N[j] = to_integer(at_least[j]) / lifts;
  }
  return N;
}

// Row reduction of [A | b] over F_p. Returns false if inconsistent;
// otherwise fills a particular solution and a kernel basis.
struct LinearSolve {
  std::size_t rank = 0;
  bool consistent = true;
  std::vector<std::uint64_t> particular;
  std::vector<std::vector<std::uint64_t>> kernel;
};

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

LinearSolve solve_mod_p(std::vector<std::vector<std::uint64_t>> A, std::vector<std::uint64_t> b,
                        std::uint64_t p, std::size_t n, bool want_solutions) {
  LinearSolve out;
  const std::size_t rows = A.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    const std::uint64_t inv = inv_mod_p(A[r][c], p);
    for (std::size_t k = 0; k < n; ++k) A[r][k] = A[r][k] * inv % p;
    b[r] = b[r] * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      const std::uint64_t f = A[i][c];
      for (std::size_t k = 0; k < n; ++k) A[i][k] = (A[i][k] + p * p - f * A[r][k]) % p;
      b[i] = (b[i] + p * p - f * b[r]) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  out.rank = r;
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) {
      out.consistent = false;
      return out;
    }
  }
  if (!want_solutions) return out;
  out.particular.assign(n, 0);
  for (std::size_t i = 0; i < r; ++i) out.particular[pivot_col[i]] = b[i];
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivot_col[i]] = (p - A[i][free]) % p;
    out.kernel.push_back(std::move(v));
  }
  return out;
}

struct LiftTally {
  std::vector<std::uint64_t> nodes;          // nodes enumerated at level k
  std::uint64_t smooth = 0;                  // level-1 nodes of full Jacobian rank
  std::vector<std::uint64_t> last_by_rank;   // consistent level-(M-1) nodes by rank
};

class Lifter {
 public:
  Lifter(const PolySystem& sys, std::uint64_t p, unsigned M, runtime::WorkMeter& meter)
      : n_(sys.nvars), s_(sys.gens.size()), p_(p), M_(M), meter_(meter) {
    P_ = checked_modulus(p, M);
    pk_.assign(M + 1, 1);
    for (unsigned k = 1; k <= M; ++k) pk_[k] = pk_[k - 1] * p;
    for (const auto& f : sys.gens) {
      F_.emplace_back(f, P_);
      std::vector<ModPoly> row;
      for (std::size_t j = 0; j < n_; ++j) row.emplace_back(f.derivative(j), p);
      J_.push_back(std::move(row));
    }
  }

  // x is a point of (Z/p)^n with every generator 0 mod p.
  void root(std::vector<std::uint64_t>& x, LiftTally& t) {
    ++t.nodes[1];
    if (M_ == 1) return;
    Jbar_.assign(s_, std::vector<std::uint64_t>(n_, 0));
    for (std::size_t i = 0; i < s_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) Jbar_[i][j] = J_[i][j](x);
    }
    const auto rk = solve_mod_p(Jbar_, std::vector<std::uint64_t>(s_, 0), p_, n_, false);
    if (rk.rank == s_) {
      ++t.smooth;
      return;
    }
    descend(x, 1, t);
  }

  bool vanishes_mod_p(std::span<const std::uint64_t> x) const {
    for (const auto& f : F_) {
      if (f(x) % p_ != 0) return false;
    }
    return true;
  }

 private:
  void descend(std::vector<std::uint64_t>& x, unsigned k, LiftTally& t) {
    std::vector<std::uint64_t> b(s_);
    for (std::size_t i = 0; i < s_; ++i) {
      const std::uint64_t v = F_[i](x);
      b[i] = (p_ - (v / pk_[k]) % p_) % p_;
    }
    const bool last = k + 1 == M_;
    auto sol = solve_mod_p(Jbar_, b, p_, n_, !last);
    meter_.add(1);
    if (!sol.consistent) return;
    if (last) {
      ++t.last_by_rank[sol.rank];
      return;
    }
    const std::size_t dim = sol.kernel.size();
    const std::uint64_t children = upow(p_, static_cast<unsigned>(dim));
    meter_.add(children);
    std::vector<std::uint64_t> coeff(dim, 0);
    std::vector<std::uint64_t> child(n_);
    do {
      for (std::size_t j = 0; j < n_; ++j) {
        std::uint64_t tj = sol.particular[j];
        for (std::size_t d = 0; d < dim; ++d) tj += coeff[d] * sol.kernel[d][j];
        child[j] = x[j] + pk_[k] * (tj % p_);
      }
      ++t.nodes[k + 1];
      descend(child, k + 1, t);
    } while (next_tuple(coeff, p_));
  }

  std::size_t n_, s_;
  std::uint64_t p_;
  unsigned M_;
  std::uint64_t P_ = 1;
  runtime::WorkMeter& meter_;
  std::vector<std::uint64_t> pk_;
  std::vector<ModPoly> F_;
  std::vector<std::vector<ModPoly>> J_;
  std::vector<std::vector<std::uint64_t>> Jbar_;
};

std::vector<Integer> count_lifting(const PolySystem& sys, std::uint64_t p, unsigned M,
                                   const Region& region) {
  const std::size_t n = sys.nvars;
  const std::size_t s = sys.gens.size();
  const Integer pz = to_integer(p);
  std::vector<Integer> N(M + 1);
  N[0] = 1;
  if (s == 0) {
    const Integer base = region.count_mod_p(p);
    for (unsigned j = 1; j <= M; ++j) N[j] = base * ipow(pz, static_cast<unsigned long>((j - 1) * n));
    return N;
  }
  runtime::check_budget(std::pow(static_cast<long double>(p), static_cast<long double>(n)),
                        "residue enumeration mod p");
  runtime::WorkMeter meter("lifting count");
  const Lifter proto(sys, p, M, meter);
  const auto checker = region.checker(p);

  const std::size_t slices = slice_count(p, n);
  const std::size_t lead = slices == 1 ? 0 : (slices == p ? 1 : 2);
  std::vector<LiftTally> tallies(slices);
  runtime::parallel_for(slices, [&](std::size_t sl) {
    Lifter lifter = proto;  // Jbar_ is per-worker scratch
    LiftTally& t = tallies[sl];
    t.nodes.assign(M + 1, 0);
    t.last_by_rank.assign(n + 1, 0);
    std::vector<std::uint64_t> x(n, 0);
    if (lead == 1) {
      x[0] = sl;
    } else if (lead == 2) {
      x[0] = sl / p;
      x[1] = sl % p;
    }
    std::span<std::uint64_t> tail(x.data() + lead, n - lead);
    do {
      if (!checker.contains(x)) continue;
      if (!lifter.vanishes_mod_p(x)) continue;
      lifter.root(x, t);
    } while (next_tuple(tail, p));
  });

  std::vector<Integer> nodes(M + 1, 0);
  Integer smooth = 0;
  std::vector<Integer> last(n + 1, 0);
  for (const auto& t : tallies) {
    for (unsigned k = 1; k <= M; ++k) nodes[k] += to_integer(t.nodes[k]);
    smooth += to_integer(t.smooth);
    for (std::size_t r = 0; r <= n; ++r) last[r] += to_integer(t.last_by_rank[r]);
  }
  for (unsigned j = 1; j <= M; ++j) {
    N[j] = nodes[j];
    if (j >= 2 && s <= n) {
      N[j] += smooth * ipow(pz, static_cast<unsigned long>((j - 1) * (n - s)));
    }
  }
  if (M >= 2) {
    for (std::size_t r = 0; r <= n; ++r) N[M] += last[r] * ipow(pz, static_cast<unsigned long>(n - r));
  }
  return N;
}

}  // namespace

std::vector<Integer> count_levels(const PolySystem& sys, std::uint64_t p, unsigned M,
                                  const Region& region, CountMethod method) {
  check_prime(p);
  if (M == 0) return {Integer(1)};
  if (region.dim() != sys.nvars) throw InvalidInput("region dimension does not match variable count");
  if (method == CountMethod::Naive) return count_naive(sys, p, M, region);
  return count_lifting(sys, p, M, region);
}

Integer count_zpm(const PolySystem& sys, std::uint64_t p, unsigned m, const Region& region,
                  CountMethod method) {
  if (m == 0) throw InvalidInput("m must be at least 1");
  return count_levels(sys, p, m, region, method)[m];
}

Integer count_zpm(const PolySystem& sys, std::uint64_t p, unsigned m, CountMethod method) {
  return count_zpm(sys, p, m, Region::full(sys.nvars), method);
}

Integer count_ff(const PolySystem& sys, std::uint64_t p, unsigned k) {
  check_prime(p);
  const std::size_t n = sys.nvars;
  const std::uint64_t q = upow_checked(p, k);
  if (q == 0) throw InvalidInput("field order overflows");
  runtime::check_budget(std::pow(static_cast<long double>(q), static_cast<long double>(n)),
                        "finite field count");
  const FiniteField field(p, k);
  std::vector<FieldPoly> F;
  for (const auto& f : sys.gens) F.emplace_back(f, field);
  const std::size_t slices = n <= 1 ? 1 : static_cast<std::size_t>(q);
  std::vector<std::uint64_t> counts(slices, 0);
  runtime::parallel_for(slices, [&](std::size_t sl) {
    std::vector<std::uint32_t> x(n, 0);
    std::vector<std::uint64_t> odo(n, 0);
    const std::size_t lead = slices == 1 ? 0 : 1;
    if (lead) odo[0] = sl;
    std::span<std::uint64_t> tail(odo.data() + lead, n - lead);
    std::uint64_t c = 0;
    do {
      for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<std::uint32_t>(odo[i]);
      bool ok = true;
      for (const auto& f : F) {
        if (f(x) != 0) {
          ok = false;
          break;
        }
      }
      c += ok;
    } while (next_tuple(tail, q));
    counts[sl] = c;
  });
  Integer total = 0;
  for (auto c : counts) total += to_integer(c);
  return total;
}

DimEstimate dim_estimate(const PolySystem& sys, const std::vector<std::uint64_t>& primes,
                         unsigned maxk) {
  if (primes.empty()) throw InvalidInput("dim_estimate needs at least one prime");
  if (maxk == 0) throw InvalidInput("maxk must be at least 1");
  DimEstimate est;
  for (auto p : primes) {
    check_prime(p);
    for (unsigned k = 1; k <= maxk; ++k) {
      const std::uint64_t q = upow_checked(p, k);
      if (q == 0) break;
      const long double work = std::pow(static_cast<long double>(q), static_cast<long double>(sys.nvars));
      if (work > static_cast<long double>(runtime::budget()) && !runtime::force()) break;
      est.samples.push_back({q, count_ff(sys, p, k)});
    }
  }
  if (est.samples.empty()) throw BudgetExceeded("dim_estimate: no field size fits the budget");
  std::sort(est.samples.begin(), est.samples.end(),
            [](const DimSample& a, const DimSample& b) { return a.q < b.q; });

  auto rounded = [](const DimSample& s) {
    const double lc = std::log(s.count.get_d());
    return static_cast<int>(std::lround(lc / std::log(static_cast<double>(s.q))));
  };
  bool all_zero = true;
  for (const auto& s : est.samples) all_zero &= (s.count == 0);
  if (all_zero) {
    est.dim = -1;
    est.confident = true;
    return est;
  }
  // Largest q with a nonzero count decides the estimate.
  std::size_t top = est.samples.size();
  while (est.samples[top - 1].count == 0) --top;
  est.dim = rounded(est.samples[top - 1]);
  const std::size_t m = est.samples.size();
  est.confident = m >= 2 && est.samples[m - 1].count > 0 && est.samples[m - 2].count > 0 &&
                  est.samples[m - 2].q != est.samples[m - 1].q &&
                  rounded(est.samples[m - 2]) == rounded(est.samples[m - 1]);
  return est;
}

std::vector<std::uint64_t> default_dim_primes(std::size_t n, std::uint64_t min_p,
                                              std::uint64_t cap, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = std::max<std::uint64_t>(min_p, 2); out.size() < count; ++p) {
    if (!is_prime(p)) continue;
    const long double work = std::pow(static_cast<long double>(p), static_cast<long double>(n));
    if (work > static_cast<long double>(cap)) break;
    out.push_back(p);
  }
  return out;
}

BsingResult rank_locus_dim(std::size_t n, const std::vector<Poly>& forms, unsigned degree,
                           const std::vector<std::uint64_t>& primes, unsigned maxk) {
  BsingResult res;
  res.degree = degree;
  if (forms.size() > n) {
    // More forms than variables: the rank condition holds everywhere.
    res.s = static_cast<int>(n);
    res.exact = true;
    return res;
  }
  std::vector<Poly> minors;
  bool unit = false;
  for (auto& m : jacobian_minors(forms, n)) {
    if (m.is_zero()) continue;
    if (m.is_constant()) unit = true;
    minors.push_back(std::move(m));
  }
  if (unit) {
    res.s = -1;
    res.exact = true;
    return res;
  }
  if (minors.empty()) {
    res.s = static_cast<int>(n);
    res.exact = true;
    return res;
  }
  std::vector<std::uint64_t> ps = primes;
  if (ps.empty()) {
    const std::uint64_t cap = std::min<std::uint64_t>(runtime::budget(), 2'000'000);
    ps = default_dim_primes(n, static_cast<std::uint64_t>(std::max<unsigned>(degree, 2)) + 1, cap);
    if (ps.empty()) ps = default_dim_primes(n, 2, runtime::budget(), 1);
    if (ps.empty()) throw BudgetExceeded("singular locus: no prime fits the budget");
  } else {
    for (auto p : ps) {
      if (p <= degree) {
        std::cerr << "warning: p = " << p << " does not exceed the degree " << degree
                  << "; the singular-locus estimate may be unreliable\n";
      }
    }
  }
  res.estimate = dim_estimate(PolySystem(n, minors), ps, maxk);
  res.s = res.estimate.dim;
  return res;
}

std::vector<BsingResult> bsing_dim(const IdealSpec& spec, const std::vector<std::uint64_t>& primes,
                                   unsigned maxk) {
  std::vector<BsingResult> out;
  for (const auto& group : spec.groups()) {
    std::vector<Poly> tops;
    for (const auto& f : group.gens) tops.push_back(top_weighted_part(f, spec.weight()));
    out.push_back(rank_locus_dim(spec.nvars(), tops, group.degree, primes, maxk));
  }
  return out;
}

std::map<unsigned, int> bsing_map(const IdealSpec& spec, const std::vector<std::uint64_t>& primes) {
  std::map<unsigned, int> out;
  for (const auto& r : bsing_dim(spec, primes)) out[r.degree] = r.s;
  return out;
}

}  // namespace iosc
