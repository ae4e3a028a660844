#include "iosc/expsum.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <unordered_map>

#include "iosc/modeval.hpp"
#include "iosc/runtime.hpp"
#include "slicing.hpp"

namespace iosc {
namespace {

long double power_ld(std::uint64_t base, std::size_t e) {
  return std::pow(static_cast<long double>(base), static_cast<long double>(e));
}

std::uint64_t checked_modulus(std::uint64_t p, unsigned m) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  if (m == 0) throw InvalidInput("m must be at least 1");
  const std::uint64_t P = upow_checked(p, m);
  if (P == 0 || P >= (std::uint64_t{1} << 32)) throw InvalidInput("p^m must stay below 2^32");
  return P;
}

std::vector<Integer> merge(const std::vector<std::vector<std::uint64_t>>& parts, std::size_t size) {
  std::vector<Integer> out(size, 0);
  for (const auto& h : parts) {
    for (std::size_t j = 0; j < size; ++j) {
      if (h[j] != 0) out[j] += to_integer(h[j]);
    }
  }
  return out;
}

}  // namespace

Integer PhaseHistogram::total() const {
  Integer t = 0;
  for (const auto& c : counts) t += c;
  return t;
}

PhaseHistogram phase_histogram(const Poly& f, std::uint64_t p, unsigned m, const Region& region) {
  const std::uint64_t P = checked_modulus(p, m);
  const std::size_t n = f.nvars();
  if (region.dim() != n) throw InvalidInput("region dimension does not match variable count");
  runtime::check_budget(power_ld(P, n), "phase histogram");
  const ModPoly F(f, P);
  const auto checker = region.checker(p);
  const auto sl = detail::make_slicing(P, n, std::max<std::uint64_t>(1, (1u << 22) / P));
  std::vector<std::vector<std::uint64_t>> parts(sl.count, std::vector<std::uint64_t>(P, 0));
  runtime::parallel_for(sl.count, [&](std::size_t s) {
    std::vector<std::uint64_t> x(n, 0);
    detail::slice_start(sl, s, P, x);
    std::span<std::uint64_t> tail(x.data() + sl.lead, n - sl.lead);
    auto& h = parts[s];
    do {
      if (checker.contains(x)) ++h[F(x)];
    } while (next_tuple(tail, P));
  });
  return PhaseHistogram{p, m, merge(parts, P)};
}

std::vector<Integer> cyclotomic_polynomial(std::uint64_t N) {
  if (N == 0) throw InvalidInput("cyclotomic order must be positive");
  if (N > (1u << 20)) throw InvalidInput("cyclotomic order too large");
  // x^N - 1 divided by Phi_d for every proper divisor d.
  std::vector<Integer> num(N + 1, 0);
  num[0] = -1;
  num[N] = 1;
  for (std::uint64_t d = 1; d < N; ++d) {
    if (N % d != 0) continue;
    const auto den = cyclotomic_polynomial(d);  // monic
    const std::size_t dd = den.size() - 1;
    std::vector<Integer> quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      const Integer c = num[i];
      quot[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t t = 0; t <= dd; ++t) num[i - dd + t] -= c * den[t];
    }
    num = std::move(quot);
  }
  return num;
}

CycloValue::CycloValue(std::uint64_t order) : order_(order) {
  if (order == 0) throw InvalidInput("cyclotomic order must be positive");
  std::uint64_t phi = order;
  for (const auto& [q, e] : factorize(order)) phi = phi / q * (q - 1);
  residue_.assign(phi, 0);
}

CycloValue CycloValue::from_counts(std::uint64_t order, std::span<const Integer> counts) {
  CycloValue v(order);
  const std::size_t phi = v.residue_.size();
  std::vector<Integer> a(order, 0);
  for (std::size_t j = 0; j < counts.size(); ++j) a[j % order] += counts[j];
  const auto fac = factorize(order);
  if (order == 1) {
    // nothing to reduce
  } else if (fac.size() == 1) {
    // Phi_{p^m}(x) = sum_{i<p} x^{i p^{m-1}}, so
    // zeta^{phi+k} = -sum_{i<=p-2} zeta^{k + i p^{m-1}}.
    const std::uint64_t p = fac[0].first;
    const std::uint64_t step = order / p;
    for (std::size_t j = order; j-- > phi;) {
      if (a[j] == 0) continue;
      const Integer c = a[j];
      const std::size_t k = j - phi;
      for (std::uint64_t i = 0; i + 2 <= p; ++i) a[k + i * step] -= c;
      a[j] = 0;
    }
  } else {
    const auto Phi = cyclotomic_polynomial(order);
    for (std::size_t j = order; j-- > phi;) {
      if (a[j] == 0) continue;
      const Integer c = a[j];
      for (std::size_t t = 0; t < phi; ++t) a[j - phi + t] -= c * Phi[t];
      a[j] = 0;
    }
  }
  for (std::size_t j = 0; j < phi; ++j) v.residue_[j] = Rational(a[j]);
  return v;
}

CycloValue CycloValue::rational(std::uint64_t order, const Rational& r) {
  CycloValue v(order);
  v.residue_[0] = r;
  return v;
}

CycloValue& CycloValue::operator+=(const CycloValue& o) {
  if (o.order_ != order_) throw InvalidInput("cyclotomic orders differ");
  for (std::size_t j = 0; j < residue_.size(); ++j) residue_[j] += o.residue_[j];
  return *this;
}

CycloValue& CycloValue::operator-=(const CycloValue& o) {
  if (o.order_ != order_) throw InvalidInput("cyclotomic orders differ");
  for (std::size_t j = 0; j < residue_.size(); ++j) residue_[j] -= o.residue_[j];
  return *this;
}

CycloValue& CycloValue::operator*=(const Rational& c) {
  for (auto& x : residue_) x *= c;
  return *this;
}

bool CycloValue::is_rational() const {
  for (std::size_t j = 1; j < residue_.size(); ++j) {
    if (residue_[j] != 0) return false;
  }
  return true;
}

bool CycloValue::equals_rational(const Rational& r) const { return is_rational() && residue_[0] == r; }

std::string CycloValue::to_string() const {
  std::string out = std::to_string(order_) + ":[";
  for (std::size_t i = 0; i < residue_.size(); ++i) {
    if (i) out += ',';
    out += iosc::to_string(residue_[i]);
  }
  return out + "]";
}

std::complex<double> CycloValue::to_complex() const {
  std::complex<double> z = 0;
  for (std::size_t j = 0; j < residue_.size(); ++j) {
    if (residue_[j] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(order_);
    z += to_double(residue_[j]) * std::polar(1.0, angle);
  }
  return z;
}

CycloValue cyclo_reduce(const PhaseHistogram& h) {
  return CycloValue::from_counts(h.modulus(), h.counts);
}

bool equals_rational(const CycloValue& v, const Rational& r) { return v.equals_rational(r); }

std::complex<double> to_complex(const PhaseHistogram& h) {
  std::complex<double> z = 0;
  const double N = static_cast<double>(h.modulus());
  for (std::size_t j = 0; j < h.counts.size(); ++j) {
    if (h.counts[j] == 0) continue;
    z += h.counts[j].get_d() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / N);
  }
  return z;
}

std::vector<Rational> E_values(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned M,
                               const std::optional<Region>& Z, CountMethod method) {
  const std::size_t n = sys.nvars;
  const Region region = Z ? *Z : Region::full(n);
  const auto N = count_levels(sys, p, M, region, method);
  const Rational pq = Rational(to_integer(p));
  // V_m = p^{-mn} N_m restricted to Z, with V_0 the volume of Z.
  std::vector<Rational> V(M + 1);
  V[0] = Rational(region.count_mod_p(p)) * qpow(pq, -static_cast<long>(n));
  for (unsigned m = 1; m <= M; ++m) V[m] = Rational(N[m]) * qpow(pq, -static_cast<long>(m * n));
  const Rational pr = qpow(pq, -static_cast<long>(r));
  std::vector<Rational> E(M + 1);
  E[0] = 1;
  for (unsigned m = 1; m <= M; ++m) E[m] = V[m] - pr * V[m - 1];
  return E;
}

Rational E_counts(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned m,
                  const std::optional<Region>& Z) {
  if (m == 0) throw InvalidInput("m must be at least 1");
  return E_values(sys, r, p, m, Z)[m];
}

CycloValue E_charsum(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned m,
                     CharsumMethod method) {
  const std::size_t n = sys.nvars;
  if (sys.gens.size() != r) throw InvalidInput("the character-sum form needs exactly r generators");
  if (r == 0) throw InvalidInput("r must be at least 1");
  const std::uint64_t P = checked_modulus(p, m);
  const Rational scale = qpow(Rational(to_integer(p)), -static_cast<long>(m * (n + r)));

  if (method == CharsumMethod::Pairing) {
    Poly g(r + n);
    for (std::size_t i = 0; i < r; ++i) g += Poly::variable(r + n, i) * sys.gens[i].embed(r + n, r);
    const Region region = Region::product(Region::uniform(r, BlockMode::PrimitiveBlock), Region::full(n));
    auto h = phase_histogram(g, p, m, region);
    return cyclo_reduce(h) * scale;
  }

  if (power_ld(P, r) >= 1.8e19L) throw InvalidInput("too many generators for the grouped kernel");
  runtime::check_budget(power_ld(P, n), "character sum (x enumeration)");
  std::vector<ModPoly> F;
  for (const auto& f : sys.gens) F.emplace_back(f, P);
  const auto sl = detail::make_slicing(P, n, 4096);
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> parts(sl.count);
  runtime::parallel_for(sl.count, [&](std::size_t s) {
    std::vector<std::uint64_t> x(n, 0);
    detail::slice_start(sl, s, P, x);
    std::span<std::uint64_t> tail(x.data() + sl.lead, n - sl.lead);
    auto& tally = parts[s];
    do {
      std::uint64_t key = 0;
      for (std::size_t i = r; i-- > 0;) key = key * P + F[i](x);
      ++tally[key];
    } while (next_tuple(tail, P));
  });
  std::map<std::uint64_t, std::uint64_t> values;
  for (const auto& t : parts) {
    for (const auto& [k, c] : t) values[k] += c;
  }
  runtime::check_budget(power_ld(P, r) * static_cast<long double>(values.size()),
                        "character sum (y enumeration)");

  std::vector<std::pair<std::uint64_t, std::uint64_t>> items(values.begin(), values.end());
  std::vector<std::vector<std::uint64_t>> hist(items.size() > 64 ? 64 : std::max<std::size_t>(items.size(), 1),
                                              std::vector<std::uint64_t>(P, 0));
  const std::size_t chunks = hist.size();
  runtime::parallel_for(chunks, [&](std::size_t c) {
    auto& h = hist[c];
    std::vector<std::uint64_t> v(r), y(r);
    for (std::size_t it = c; it < items.size(); it += chunks) {
      std::uint64_t key = items[it].first;
      const std::uint64_t mult = items[it].second;
      for (std::size_t i = 0; i < r; ++i) {
        v[i] = key % P;
        key /= P;
      }
      std::fill(y.begin(), y.end(), 0);
      do {
        bool primitive = false;
        std::uint64_t phase = 0;
        for (std::size_t i = 0; i < r; ++i) {
          primitive |= (y[i] % p) != 0;
          phase = (phase + y[i] * v[i]) % P;
        }
        if (primitive) h[phase] += mult;
      } while (next_tuple(y, P));
    }
  });
  return CycloValue::from_counts(P, merge(hist, P)) * scale;
}

MoidefCheck verify_moidef(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned m) {
  MoidefCheck out;
  out.counts = E_counts(sys, r, p, m);
  out.charsum = E_charsum(sys, r, p, m);
  out.holds = out.charsum.equals_rational(out.counts);
  return out;
}

std::vector<Integer> ff_trace_histogram(const Poly& h, const FiniteField& field,
                                        const std::set<std::size_t>& J1,
                                        const std::set<std::size_t>& J2) {
  const std::size_t n = h.nvars();
  for (auto i : J1) {
    if (i >= n || J2.count(i)) throw InvalidInput("J1 and J2 must be disjoint index sets within range");
  }
  for (auto i : J2) {
    if (i >= n) throw InvalidInput("J2 index out of range");
  }
  const std::uint64_t q = field.order();
  const std::uint64_t p = field.characteristic();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (!J1.count(i)) free.push_back(i);
  }
  const std::size_t nf = free.size();
  runtime::check_budget(power_ld(q, nf), "finite field character sum");
  const FieldPoly H(h, field);
  const auto sl = detail::make_slicing(q, nf);
  std::vector<std::vector<std::uint64_t>> parts(sl.count, std::vector<std::uint64_t>(p, 0));
  std::vector<bool> unit(n, false);
  for (auto i : J2) unit[i] = true;
  runtime::parallel_for(sl.count, [&](std::size_t s) {
    std::vector<std::uint64_t> odo(nf, 0);
    detail::slice_start(sl, s, q, odo);
    std::span<std::uint64_t> tail(odo.data() + sl.lead, nf - sl.lead);
    std::vector<FiniteField::Element> x(n, 0);
    auto& hist = parts[s];
    do {
      bool ok = true;
      for (std::size_t k = 0; k < nf; ++k) {
        x[free[k]] = static_cast<FiniteField::Element>(odo[k]);
        if (unit[free[k]] && odo[k] == 0) ok = false;
      }
      if (ok) ++hist[field.trace(H(x))];
    } while (next_tuple(tail, q));
  });
  return merge(parts, p);
}

FFSum ff_char_sum(const Poly& f, const Poly& g, std::uint64_t p, unsigned k,
                  const std::set<std::size_t>& J1, const std::set<std::size_t>& J2,
                  std::optional<int> s, const std::optional<Weight>& w) {
  const std::size_t n = f.nvars();
  if (g.nvars() != n) throw InvalidInput("f and g must share their variables");
  const Weight weight = w ? *w : Weight::ones(n);
  if (weight.size() != n) throw InvalidInput("weight length does not match variable count");
  const FiniteField field(p, k);
  FFSum out;
  out.q = field.order();
  const long d = f.weighted_degree(weight);
  out.homogeneous = is_weighted_homogeneous(f, weight);
  out.degree_invertible = d > 0 && d % static_cast<long>(p) != 0;
  if (!out.homogeneous) std::cerr << "warning: f is not weighted homogeneous\n";
  if (!out.degree_invertible) {
    std::cerr << "warning: p = " << p << " divides the degree " << d << " of f\n";
  }
  const auto hist = ff_trace_histogram(f + g, field, J1, J2);
  out.exact = CycloValue::from_counts(p, hist);
  out.value = out.exact.to_complex();
  if (s) {
    out.s = *s;
  } else {
    out.s = rank_locus_dim(n, {f}, static_cast<unsigned>(std::max<long>(d, 1))).s;
    out.s_estimated = true;
  }
  const double denom = std::pow(static_cast<double>(out.q), (static_cast<double>(n) + out.s) / 2.0);
  out.ratio = std::abs(out.value) / denom;
  return out;
}

TorusCheck torus_sum_check(const Poly& f, const Poly& g, const Weight& w, std::uint64_t p,
                           unsigned k) {
  const std::size_t n = f.nvars();
  if (g.nvars() != n || w.size() != n) throw InvalidInput("f, g and w must share their variables");
  if (!g.is_zero() && g.weighted_degree(w) >= f.weighted_degree(w)) {
    throw InvalidInput("torus check needs d_w(g) < d_w(f)");
  }
  const FiniteField field(p, k);
  const std::uint64_t q = field.order();
  TorusCheck out;
  out.original = CycloValue::from_counts(p, ff_trace_histogram(f + g, field, {}, {}));

  const Poly fh = torus_transform(f, w);
  const Poly gh = torus_transform(g, w);
  std::set<std::size_t> units;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned j = 1; j < w[i]; ++j) units.insert(offset + j);
    offset += w[i];
  }
  const auto hist = ff_trace_histogram(fh + gh, field, {}, units);
  const long extra = static_cast<long>(w.total() - n);
  out.transformed = CycloValue::from_counts(p, hist) *
                    qpow(Rational(to_integer(q - 1)), -extra);
  out.holds = out.original == out.transformed;
  return out;
}

}  // namespace iosc
