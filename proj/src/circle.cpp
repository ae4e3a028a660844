#include "iosc/circle.hpp"

#include <algorithm>
#include <cmath>

#include "iosc/modeval.hpp"
#include "iosc/runtime.hpp"
#include "slicing.hpp"

namespace iosc {

BoxSpec::BoxSpec(std::vector<std::pair<Rational, Rational>> s) : sides(std::move(s)) {
  if (sides.empty()) throw InvalidInput("a box needs at least one side");
  for (const auto& [lo, hi] : sides) {
    if (lo > hi) throw InvalidInput("box side has lo > hi");
    if (lo < -1 || hi > 1) throw InvalidInput("box sides must lie inside [-1, 1]");
  }
}

BoxSpec BoxSpec::unit(std::size_t n) {
  return BoxSpec(std::vector<std::pair<Rational, Rational>>(n, {Rational(-1), Rational(1)}));
}

bool BoxSpec::contains_origin() const {
  return std::all_of(sides.begin(), sides.end(), [](const auto& s) { return s.first < 0 && s.second > 0; });
}

double BoxSpec::volume() const {
  double v = 1;
  for (const auto& [lo, hi] : sides) v *= to_double(hi - lo);
  return v;
}

namespace {

using i128 = __int128;

struct Range {
  std::int64_t lo = 0, hi = -1;
  std::uint64_t size() const { return hi < lo ? 0 : static_cast<std::uint64_t>(hi - lo + 1); }
};

Range scaled_range(const std::pair<Rational, Rational>& side, std::uint64_t B) {
  const Rational a = side.first * Rational(to_integer(B));
  const Rational b = side.second * Rational(to_integer(B));
  Integer lo, hi;
  mpz_cdiv_q(lo.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  mpz_fdiv_q(hi.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  if (!lo.fits_slong_p() || !hi.fits_slong_p()) throw InvalidInput("box range too large");
  return Range{lo.get_si(), hi.get_si()};
}

// A generator as a polynomial in the last variable whose coefficients are
// int64 polynomials in the other variables.
struct SplitPoly {
  struct Term {
    std::int64_t coef;
    std::vector<unsigned> exps;  // first n - 1 variables
  };
  std::vector<std::vector<Term>> by_power;  // index = power of the last variable
};

i128 eval_terms(const std::vector<SplitPoly::Term>& terms, const std::vector<std::int64_t>& x) {
  i128 acc = 0;
  for (const auto& t : terms) {
    i128 v = t.coef;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      for (unsigned e = 0; e < t.exps[i]; ++e) v *= x[i];
    }
    acc += v;
  }
  return acc;
}

i128 horner(const std::vector<i128>& u, std::int64_t t) {
  i128 acc = 0;
  for (std::size_t k = u.size(); k-- > 0;) acc = acc * t + u[k];
  return acc;
}

bool isqrt_exact(i128 d, i128& root) {
  if (d < 0) return false;
  i128 s = static_cast<i128>(std::sqrt(static_cast<long double>(d)));
  while (s * s > d) --s;
  while ((s + 1) * (s + 1) <= d) ++s;
  root = s;
  return s * s == d;
}

}  // namespace

Integer count_box_solutions(const PolySystem& sys, const BoxSpec& box, std::uint64_t B) {
  const std::size_t n = sys.nvars;
  if (box.dim() != n) throw InvalidInput("box dimension does not match variable count");
  if (B == 0) throw InvalidInput("B must be positive");
  std::vector<Range> ranges;
  long double outer_points = 1;
  std::int64_t bound = 1;
  for (std::size_t i = 0; i < n; ++i) {
    ranges.push_back(scaled_range(box.sides[i], B));
    if (ranges.back().size() == 0) return 0;
    if (i + 1 < n) outer_points *= static_cast<long double>(ranges.back().size());
    bound = std::max({bound, std::abs(ranges.back().lo), std::abs(ranges.back().hi)});
  }

  // Coefficient size check so that every value fits comfortably in 128 bits.
  unsigned max_deg = 0;
  std::vector<SplitPoly> split(sys.gens.size());
  for (std::size_t g = 0; g < sys.gens.size(); ++g) {
    const Poly& f = sys.gens[g];
    long double mag = 0;
    for (const auto& [mono, c] : f.terms()) {
      if (!c.fits_slong_p()) throw InvalidInput("coefficient too large for box counting");
      unsigned deg = 0;
      for (auto e : mono) deg += e;
      max_deg = std::max(max_deg, deg);
      mag += std::abs(c.get_d()) * std::pow(static_cast<long double>(bound), deg);
      const unsigned k = mono[n - 1];
      if (split[g].by_power.size() <= k) split[g].by_power.resize(k + 1);
      split[g].by_power[k].push_back({c.get_si(), std::vector<unsigned>(mono.begin(), mono.end() - 1)});
    }
    if (mag > 1e36L) throw InvalidInput("values too large for 128-bit box counting");
  }
  bool scan_last = false;
  for (const auto& s : split) scan_last |= s.by_power.size() > 3;
  runtime::check_budget(outer_points * (scan_last ? static_cast<long double>(ranges[n - 1].size()) : 1.0L),
                        "box count");

  const Range last = ranges[n - 1];
  const std::size_t outer = n - 1;
  const std::size_t slices = outer == 0 ? 1 : static_cast<std::size_t>(ranges[0].size());
  std::vector<std::uint64_t> counts(slices, 0);
  runtime::parallel_for(slices, [&](std::size_t sl) {
    std::vector<std::int64_t> x(outer, 0);
    std::vector<std::uint64_t> odo(outer, 0);
    if (outer > 0) odo[0] = sl;
    std::vector<std::vector<i128>> u(split.size());
    std::uint64_t c = 0;
    auto step = [&]() -> bool {
      for (std::size_t i = outer; i-- > 1;) {
        if (++odo[i] < ranges[i].size()) return true;
        odo[i] = 0;
      }
      return false;
    };
    do {
      for (std::size_t i = 0; i < outer; ++i) x[i] = ranges[i].lo + static_cast<std::int64_t>(odo[i]);
      int pivot = -1;
      for (std::size_t g = 0; g < split.size(); ++g) {
        auto& ug = u[g];
        ug.assign(split[g].by_power.size(), 0);
        for (std::size_t k = 0; k < ug.size(); ++k) ug[k] = eval_terms(split[g].by_power[k], x);
        while (!ug.empty() && ug.back() == 0) ug.pop_back();
        if (pivot < 0 && !ug.empty()) pivot = static_cast<int>(g);
      }
      if (pivot < 0) {
        c += last.size();
        continue;
      }
      const auto& up = u[pivot];
      std::int64_t cand[2];
      std::size_t nc = 0;
      auto accept = [&](std::int64_t t) {
        for (std::size_t g = 0; g < u.size(); ++g) {
          if (!u[g].empty() && horner(u[g], t) != 0) return;
        }
        ++c;
      };
      if (up.size() == 1) continue;  // nonzero constant
      if (up.size() == 2) {
        if (up[0] % up[1] == 0) cand[nc++] = static_cast<std::int64_t>(-up[0] / up[1]);
      } else if (up.size() == 3) {
        const i128 a = up[2], b = up[1], cc = up[0];
        i128 s;
        if (isqrt_exact(b * b - 4 * a * cc, s)) {
          const i128 den = 2 * a;
          if ((-b + s) % den == 0) cand[nc++] = static_cast<std::int64_t>((-b + s) / den);
          if (s != 0 && (-b - s) % den == 0) cand[nc++] = static_cast<std::int64_t>((-b - s) / den);
        }
      } else {
        for (std::int64_t t = last.lo; t <= last.hi; ++t) accept(t);
        continue;
      }
      for (std::size_t i = 0; i < nc; ++i) {
        if (cand[i] >= last.lo && cand[i] <= last.hi) accept(cand[i]);
      }
    } while (outer > 0 && step());
    counts[sl] = c;
  });
  Integer total = 0;
  for (auto c : counts) total += to_integer(c);
  return total;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Floating evaluation of the generators.
struct DoublePoly {
  struct Term {
    double coef;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  std::vector<Term> terms;
  explicit DoublePoly(const Poly& f) {
    for (const auto& [mono, c] : f.terms()) {
      Term t{c.get_d(), {}};
      for (std::size_t i = 0; i < mono.size(); ++i) {
        if (mono[i]) t.factors.emplace_back(i, mono[i]);
      }
      terms.push_back(std::move(t));
    }
  }
  double operator()(const std::vector<double>& x) const {
    double acc = 0;
    for (const auto& t : terms) {
      double v = t.coef;
      for (const auto& [i, e] : t.factors) {
        for (unsigned k = 0; k < e; ++k) v *= x[i];
      }
      acc += v;
    }
    return acc;
  }
};

}  // namespace

SingularIntegral singular_integral(const PolySystem& sys, const BoxSpec& box,
                                   std::vector<double> eps_ladder, const Sampler& sampler) {
  const std::size_t n = sys.nvars;
  const std::size_t r = sys.gens.size();
  if (box.dim() != n) throw InvalidInput("box dimension does not match variable count");
  if (r == 0 || r > n) throw InvalidInput("singular integral needs 1 <= r <= n");
  if (eps_ladder.empty()) throw InvalidInput("eps ladder is empty");
  for (double e : eps_ladder) {
    if (!(e > 0)) throw InvalidInput("eps values must be positive");
  }
  std::sort(eps_ladder.begin(), eps_ladder.end(), std::greater<>());
  if (sampler.samples == 0) throw InvalidInput("sampler needs at least one sample");
  runtime::check_budget(static_cast<long double>(sampler.samples), "singular integral sampling");

  std::vector<DoublePoly> F;
  for (const auto& f : sys.gens) F.emplace_back(f);
  std::vector<double> lo(n), width(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = to_double(box.sides[i].first);
    width[i] = to_double(box.sides[i].second - box.sides[i].first);
  }
  const std::size_t L = eps_ladder.size();

  SingularIntegral out;
  out.eps = eps_ladder;
  out.seed = sampler.seed;

  std::vector<std::uint64_t> hits(L, 0);
  std::uint64_t total = 0;
  auto tally = [&](const std::vector<double>& x, std::vector<std::uint64_t>& h) {
    double worst = 0;
    for (const auto& f : F) worst = std::max(worst, std::abs(f(x)));
    for (std::size_t k = 0; k < L; ++k) {
      if (worst <= eps_ladder[k] / 2) ++h[k];
      else break;  // ladder is decreasing
    }
  };

  if (sampler.kind == SamplerKind::MonteCarlo) {
    out.sampler = "mc";
    constexpr std::size_t kChunks = 256;
    const std::uint64_t per = (sampler.samples + kChunks - 1) / kChunks;
    std::vector<std::vector<std::uint64_t>> parts(kChunks, std::vector<std::uint64_t>(L, 0));
    runtime::parallel_for(kChunks, [&](std::size_t c) {
      std::uint64_t state = sampler.seed ^ (0xd1b54a32d192ed03ULL * (c + 1));
      std::vector<double> x(n);
      for (std::uint64_t s = 0; s < per; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
          const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
          x[i] = lo[i] + width[i] * u;
        }
        tally(x, parts[c]);
      }
    });
    for (const auto& p : parts) {
      for (std::size_t k = 0; k < L; ++k) hits[k] += p[k];
    }
    total = per * kChunks;
  } else {
    out.sampler = "grid";
    std::uint64_t k = static_cast<std::uint64_t>(
        std::floor(std::pow(static_cast<double>(sampler.samples), 1.0 / static_cast<double>(n))));
    k = std::max<std::uint64_t>(k, 2);
    const std::size_t slices = static_cast<std::size_t>(k);
    std::vector<std::vector<std::uint64_t>> parts(slices, std::vector<std::uint64_t>(L, 0));
    runtime::parallel_for(slices, [&](std::size_t sl) {
      std::vector<std::uint64_t> odo(n, 0);
      odo[0] = sl;
      std::span<std::uint64_t> tail(odo.data() + 1, n - 1);
      std::vector<double> x(n);
      do {
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = lo[i] + width[i] * (static_cast<double>(odo[i]) + 0.5) / static_cast<double>(k);
        }
        tally(x, parts[sl]);
      } while (next_tuple(tail, k));
    });
    for (const auto& p : parts) {
      for (std::size_t j = 0; j < L; ++j) hits[j] += p[j];
    }
    total = static_cast<std::uint64_t>(std::pow(static_cast<double>(k), static_cast<double>(n)));
  }
  out.samples = total;

  const double vol = box.volume();
  for (std::size_t k = 0; k < L; ++k) {
    const double frac = static_cast<double>(hits[k]) / static_cast<double>(total);
    out.estimates.push_back(frac * vol / std::pow(eps_ladder[k], static_cast<double>(r)));
  }
  out.value = out.estimates.back();
  if (L >= 2) {
    const double a = out.estimates[L - 2], b = out.estimates[L - 1];
    const double scale = std::max(std::abs(a), std::abs(b));
    out.converged = scale == 0 || std::abs(a - b) <= 0.05 * scale;
  }
  return out;
}

MajorArcReport major_arc_prediction(const PolySystem& sys, const BoxSpec& box, std::uint64_t B,
                                    std::uint64_t Qmax, std::vector<double> eps_ladder,
                                    const Sampler& sampler) {
  const std::size_t n = sys.nvars;
  const Weight ones = Weight::ones(n);
  MajorArcReport out;
  for (const auto& f : sys.gens) {
    if (!is_weighted_homogeneous(f, ones) || f.is_constant()) {
      throw InvalidInput("major-arc prediction needs non-constant homogeneous forms");
    }
    out.degree_sum += static_cast<unsigned long>(f.degree());
  }
  const unsigned r = static_cast<unsigned>(sys.gens.size());
  out.series = singular_series_partial(sys, r, Qmax).total();
  out.integral = singular_integral(sys, box, std::move(eps_ladder), sampler);
  const double scale = std::pow(static_cast<double>(B), static_cast<double>(n) - static_cast<double>(out.degree_sum));
  out.prediction = to_double(out.series) * out.integral.value * scale;
  out.actual = count_box_solutions(sys, box, B);
  out.degenerate = !out.integral.converged || !(out.prediction > 0);
  out.ratio = out.prediction > 0 ? out.actual.get_d() / out.prediction : 0.0;
  return out;
}

WaringReport waring_surjectivity(const std::vector<PolyMap>& maps, std::uint64_t p, unsigned m,
                                 unsigned l, std::size_t max_missing) {
  if (maps.empty() || l == 0) throw InvalidInput("waring test needs at least one map and l >= 1");
  if (maps.size() != 1 && maps.size() != l) throw InvalidInput("give one map or exactly l maps");
  if (!is_prime(p) || m == 0) throw InvalidInput("need a prime p and m >= 1");
  const std::size_t r = maps[0].size();
  if (r == 0) throw InvalidInput("maps need at least one component");
  const std::uint64_t P = upow_checked(p, m);
  if (P == 0 || P >= (std::uint64_t{1} << 32)) throw InvalidInput("p^m must stay below 2^32");
  const long double space = std::pow(static_cast<long double>(P), static_cast<long double>(r));
  if (space > 1e9L) throw BudgetExceeded("waring test: target space too large");
  const std::uint64_t S = static_cast<std::uint64_t>(space);

  auto encode = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t key = 0;
    for (std::size_t i = r; i-- > 0;) key = key * P + v[i];
    return key;
  };

  WaringReport out;
  std::vector<std::vector<std::uint64_t>> images;
  for (const auto& mp : maps) {
    if (mp.size() != r) throw InvalidInput("all maps need the same number of components");
    const std::size_t ni = mp[0].nvars();
    std::vector<ModPoly> F;
    for (const auto& f : mp) {
      if (f.nvars() != ni) throw InvalidInput("map components must share their variables");
      F.emplace_back(f, P);
    }
    runtime::check_budget(std::pow(static_cast<long double>(P), static_cast<long double>(ni)), "waring image");
    std::vector<char> seen(S, 0);
    std::vector<std::uint64_t> x(ni, 0), v(r);
    do {
      for (std::size_t e = 0; e < r; ++e) v[e] = F[e](x);
      seen[encode(v)] = 1;
    } while (next_tuple(x, P));
    std::vector<std::uint64_t> img;
    for (std::uint64_t k = 0; k < S; ++k) {
      if (seen[k]) img.push_back(k);
    }
    out.image_sizes.push_back(img.size());
    images.push_back(std::move(img));
  }

  // Componentwise addition of encoded tuples.
  auto add = [&](std::uint64_t a, std::uint64_t b) {
    std::uint64_t key = 0, scale = 1;
    for (std::size_t e = 0; e < r; ++e) {
      key += ((a % P + b % P) % P) * scale;
      a /= P;
      b /= P;
      scale *= P;
    }
    return key;
  };
  std::vector<std::uint64_t> current{0};
  for (unsigned i = 0; i < l; ++i) {
    const auto& img = images[maps.size() == 1 ? 0 : i];
    runtime::check_budget(static_cast<long double>(current.size()) * static_cast<long double>(img.size()),
                          "waring sumset");
    std::vector<char> next(S, 0);
    for (auto a : current) {
      for (auto b : img) next[add(a, b)] = 1;
    }
    current.clear();
    for (std::uint64_t k = 0; k < S; ++k) {
      if (next[k]) current.push_back(k);
    }
  }
  out.missing_count = S - current.size();
  out.surjective = out.missing_count == 0;
  std::size_t idx = 0;
  for (std::uint64_t k = 0; k < S && out.missing.size() < max_missing; ++k) {
    if (idx < current.size() && current[idx] == k) {
      ++idx;
      continue;
    }
    std::vector<std::uint64_t> v(r);
    std::uint64_t key = k;
    for (std::size_t e = 0; e < r; ++e) {
      v[e] = key % P;
      key /= P;
    }
    out.missing.push_back(std::move(v));
  }
  return out;
}

PolySystem convolution_fiber_ideal(const std::vector<ConvolutionFactor>& maps,
                                   const std::vector<Rational>& target) {
  if (maps.empty()) throw InvalidInput("convolution needs at least one map");
  const std::size_t r = target.size();
  std::size_t total = 0;
  for (const auto& mp : maps) {
    if (mp.components.size() != r) throw InvalidInput("map component count differs from the target length");
    for (const auto& f : mp.domain) {
      if (f.nvars() != mp.nvars) throw InvalidInput("domain generator variable count mismatch");
    }
    for (const auto& f : mp.components) {
      if (f.nvars() != mp.nvars) throw InvalidInput("map component variable count mismatch");
    }
    total += mp.nvars;
  }
  std::vector<Poly> gens;
  std::vector<Poly> sums(r, Poly(total));
  std::size_t offset = 0;
  for (const auto& mp : maps) {
    for (const auto& f : mp.domain) gens.push_back(f.embed(total, offset));
    for (std::size_t e = 0; e < r; ++e) sums[e] += mp.components[e].embed(total, offset);
    offset += mp.nvars;
  }
  for (std::size_t e = 0; e < r; ++e) {
    const Integer den = target[e].get_den();
    gens.push_back(sums[e] * den - Poly::constant(total, target[e].get_num()));
  }
  return PolySystem(total, std::move(gens));
}

ConvolutionFactor chain_example(unsigned r, unsigned R, unsigned D) {
  if (r == 0 || R == 0 || D == 0) throw InvalidInput("chain example needs positive r, R, D");
  ConvolutionFactor out;
  out.nvars = static_cast<std::size_t>(r) * (R + 1);
  auto var = [&](unsigned i, unsigned j) { return Poly::variable(out.nvars, i * (R + 1) + j); };
  for (unsigned i = 0; i < r; ++i) {
    for (unsigned j = 0; j < R; ++j) out.domain.push_back(var(i, j) - var(i, j + 1).pow(D));
    out.components.push_back(var(i, 0).pow(D));
  }
  return out;
}

}  // namespace iosc
