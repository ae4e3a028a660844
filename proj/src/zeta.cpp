#include "iosc/zeta.hpp"

#include <cmath>

#include "iosc/runtime.hpp"

namespace iosc {
namespace {

void check_same_q(const QSeries& a, const QSeries& b) {
  if (a.q != b.q) throw InvalidInput("series over different q");
}

TPoly trim(TPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

bool all_zero(const PolySystem& sys) {
  for (const auto& f : sys.gens) {
    if (!f.is_zero()) return false;
  }
  return true;
}

// V_0 = vol(Z), V_m = p^{-mn} N_m over Z.
std::vector<Rational> volumes(const PolySystem& sys, std::uint64_t p, unsigned M, const Region& Z,
                              CountMethod method = CountMethod::Lifting) {
  const std::size_t n = sys.nvars;
  const auto N = count_levels(sys, p, M, Z, method);
  const Rational pq(to_integer(p));
  std::vector<Rational> V(M + 1);
  V[0] = Rational(Z.count_mod_p(p)) * qpow(pq, -static_cast<long>(n));
  for (unsigned m = 1; m <= M; ++m) V[m] = Rational(N[m]) * qpow(pq, -static_cast<long>(m * n));
  return V;
}

}  // namespace

QSeries& QSeries::operator+=(const QSeries& o) {
  check_same_q(*this, o);
  const std::size_t len = std::min(coeffs.size(), o.coeffs.size());
  coeffs.resize(len);
  for (std::size_t i = 0; i < len; ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  check_same_q(*this, o);
  const std::size_t len = std::min(coeffs.size(), o.coeffs.size());
  coeffs.resize(len);
  for (std::size_t i = 0; i < len; ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  check_same_q(a, b);
  const std::size_t len = std::min(a.coeffs.size(), b.coeffs.size());
  QSeries out{a.q, std::vector<Rational>(len, 0)};
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; i + j < len; ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

std::vector<Rational> RationalFunc::expand(std::size_t terms) const {
  std::vector<Rational> s(terms, 0);
  for (std::size_t k = 0; k < terms; ++k) {
    Rational v = k < numerator.size() ? numerator[k] : Rational(0);
    for (std::size_t i = 1; i < denominator.size() && i <= k; ++i) v -= denominator[i] * s[k - i];
    s[k] = v;  // denominator[0] == 1
  }
  return s;
}

std::string to_string(ReconstructStatus s) {
  switch (s) {
    case ReconstructStatus::Found: return "found";
    case ReconstructStatus::InsufficientData: return "insufficient_data";
    case ReconstructStatus::NotFound: return "not_found";
  }
  return "not_found";
}

Reconstruction rational_reconstruct(const std::vector<Rational>& s, unsigned max_order) {
  const std::size_t N = s.size();
  TPoly C{1}, B{1};
  std::size_t L = 0, shift = 1;
  Rational b = 1;
  for (std::size_t k = 0; k < N; ++k) {
    Rational d = s[k];
    for (std::size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * s[k - i];
    if (d == 0) {
      ++shift;
      continue;
    }
    const Rational coef = d / b;
    TPoly T = C;
    if (C.size() < B.size() + shift) C.resize(B.size() + shift, 0);
    for (std::size_t i = 0; i < B.size(); ++i) C[i + shift] -= coef * B[i];
    if (2 * L <= k) {
      L = k + 1 - L;
      B = std::move(T);
      b = d;
      shift = 1;
    } else {
      ++shift;
    }
  }

  Reconstruction out;
  out.recurrence_order = static_cast<unsigned>(L);
  if (L > max_order) {
    out.status = N >= 2 * static_cast<std::size_t>(max_order) + 1 ? ReconstructStatus::NotFound
                                                                  : ReconstructStatus::InsufficientData;
    return out;
  }
  if (N <= 2 * L) {
    out.status = ReconstructStatus::InsufficientData;
    return out;
  }
  RationalFunc f;
  f.denominator = trim(C);
  TPoly num(L, 0);
  for (std::size_t k = 0; k < L; ++k) {
    for (std::size_t i = 0; i <= k && i < f.denominator.size(); ++i) num[k] += f.denominator[i] * s[k - i];
  }
  f.numerator = trim(num);
  if (f.expand(N) != s) throw Inconsistency("rational reconstruction does not reproduce its input");
  out.status = ReconstructStatus::Found;
  out.func = std::move(f);
  return out;
}

unsigned root_multiplicity(const TPoly& poly, const Rational& t0) {
  TPoly p = trim(poly);
  unsigned mult = 0;
  while (p.size() > 1) {
    // Synthetic division by (t - t0).
    TPoly q(p.size() - 1, 0);
    Rational carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
      carry = p[i] + carry * t0;
      q[i - 1] = carry;
    }
    const Rational rem = p[0] + carry * t0;
    if (rem != 0) break;
    ++mult;
    p = trim(std::move(q));
  }
  return mult;
}

OrdDistribution ord_distribution(const PolySystem& sys, std::uint64_t p, unsigned M,
                                 const std::optional<Region>& Z) {
  if (all_zero(sys)) throw InvalidInput("ideal is zero");
  const Region region = Z ? *Z : Region::full(sys.nvars);
  const auto V = volumes(sys, p, M + 1, region);
  OrdDistribution out;
  out.c.resize(M + 1);
  for (unsigned m = 0; m <= M; ++m) out.c[m] = V[m] - V[m + 1];
  out.tail = V[M + 1];
  out.total = V[0];
  return out;
}

CompaReport compa_check(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned M,
                        const std::optional<Region>& Z) {
  if (M < 2) throw InvalidInput("compa_check needs M >= 2");
  const std::size_t n = sys.nvars;
  const Region region = Z ? *Z : Region::uniform(n, BlockMode::ReductionIn, sys.gens);
  const auto dist = ord_distribution(sys, p, M, region);

  // The right side comes from a separate counting pass; naive enumeration
  // when it is cheap, so that the two sides use different algorithms.
  const long double naive_work =
      std::pow(static_cast<long double>(p), static_cast<long double>((M + 1) * n));
  const CountMethod method = naive_work <= 2e6L ? CountMethod::Naive : CountMethod::Lifting;
  const auto V = volumes(sys, p, M + 1, region, method);
  const auto E = E_values(sys, r, p, M + 1, region, method);

  const Rational a = qpow(Rational(to_integer(p)), -static_cast<long>(r));
  CompaReport out;
  out.lhs.q = out.rhs.q = p;
  out.lhs.coeffs.assign(M + 1, 0);
  out.rhs.coeffs.assign(M + 1, 0);
  for (unsigned k = 0; k <= M; ++k) {
    out.lhs.coeffs[k] = dist.c[k] - (k > 0 ? a * dist.c[k - 1] : Rational(0));
  }
  out.rhs.coeffs[1] = (1 - a) * V[0] - E[2];
  for (unsigned k = 2; k <= M; ++k) out.rhs.coeffs[k] = E[k] - E[k + 1];
  out.correction = V[0] - V[1];
  out.z_inside_x = out.correction == 0;
  out.rhs.coeffs[0] += out.correction;
  out.rhs.coeffs[1] -= out.correction;
  out.holds = out.lhs == out.rhs;
  return out;
}

std::string to_string(ThetaVerdict v) {
  switch (v) {
    case ThetaVerdict::Decaying: return "decaying";
    case ThetaVerdict::Stalled: return "stalled";
    case ThetaVerdict::Growing: return "growing";
  }
  return "stalled";
}

ThetaVerdict theta_verdict(const std::vector<Rational>& terms) {
  std::vector<Rational> nz;
  for (const auto& t : terms) {
    if (t != 0) nz.push_back(abs(t));
  }
  if (nz.size() < 2) {
    if (terms.empty() || terms.back() == 0) return ThetaVerdict::Decaying;
    return ThetaVerdict::Stalled;
  }
  const Rational ratio = nz.back() / nz[nz.size() - 2];
  if (ratio < Rational(1, 2)) return ThetaVerdict::Decaying;
  if (ratio > 1) return ThetaVerdict::Growing;
  return ThetaVerdict::Stalled;
}

ThetaReport theta_probe(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned M) {
  if (M < 3) throw InvalidInput("theta_probe needs M >= 3");
  const auto E = E_values(sys, r, p, M);
  ThetaReport out;
  const Rational pr = qpow(Rational(to_integer(p)), static_cast<long>(r));
  Rational acc = 1, scale = 1;
  for (unsigned m = 1; m <= M; ++m) {
    scale *= pr;
    out.terms.push_back(E[m] * scale);
    acc += out.terms.back();
    out.partial_sums.push_back(acc);
  }
  out.verdict = theta_verdict(out.terms);
  return out;
}

QSeries poincare_series(const PolySystem& sys, std::uint64_t p, unsigned M) {
  const auto V = volumes(sys, p, M, Region::full(sys.nvars));
  QSeries out{p, V};
  out.coeffs[0] = 1;
  return out;
}

}  // namespace iosc
