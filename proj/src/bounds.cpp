#include "iosc/bounds.hpp"

#include <cmath>

#include "iosc/ringcount.hpp"
#include "iosc/runtime.hpp"

namespace iosc {

ExtRational ExtRational::infinity() {
  ExtRational e;
  e.infinite_ = true;
  return e;
}

ExtRational ExtRational::ratio(const Rational& num, const Rational& den) {
  if (den == 0) {
    if (num == 0) return ExtRational(Rational(0));
    if (num > 0) return infinity();
    throw InvalidInput("negative numerator over zero");
  }
  return ExtRational(Rational(num / den));
}

const Rational& ExtRational::value() const {
  if (infinite_) throw InvalidInput("value of +infinity requested");
  return value_;
}

std::string ExtRational::to_string() const { return infinite_ ? "inf" : iosc::to_string(value_); }

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

namespace {

// Regroup by total degree of the top homogeneous parts.
IdealSpec by_total_degree(const IdealSpec& spec) {
  const std::size_t n = spec.nvars();
  const Weight ones = Weight::ones(n);
  std::vector<Poly> tops;
  for (const auto& f : spec.generators()) tops.push_back(top_weighted_part(f, ones));
  return IdealSpec::from_generators(n, std::move(tops));
}

SValues resolve_s(const IdealSpec& spec, const std::optional<std::map<unsigned, int>>& s) {
  SValues out;
  if (s) {
    out.s = *s;
    out.injected = true;
    for (const auto& g : spec.groups()) {
      if (!out.s.count(g.degree)) {
        throw InvalidInput("no s value supplied for degree " + std::to_string(g.degree));
      }
    }
  } else {
    out.s = bsing_map(spec);
  }
  return out;
}

}  // namespace

BoundResult sigma0(const IdealSpec& spec, const std::optional<std::map<unsigned, int>>& s) {
  const IdealSpec grouped = by_total_degree(spec);
  BoundResult out;
  out.s = resolve_s(grouped, s);
  const long n = static_cast<long>(spec.nvars());
  out.value = ExtRational::infinity();
  for (const auto& g : grouped.groups()) {
    const auto v = ExtRational::ratio(Rational(n - out.s.s.at(g.degree)), Rational(g.degree));
    out.per_degree[g.degree] = v;
    out.value = min(out.value, v);
  }
  return out;
}

BoundResult sigma_tilde0w(const IdealSpec& spec, const std::optional<std::map<unsigned, int>>& s) {
  BoundResult out;
  out.s = resolve_s(spec, s);
  const long n = static_cast<long>(spec.nvars());
  out.value = ExtRational::infinity();
  for (const auto& g : spec.groups()) {
    const long den = 2 * (static_cast<long>(g.degree) - 1);
    const auto v = ExtRational::ratio(Rational(n - out.s.s.at(g.degree)), Rational(den));
    out.per_degree[g.degree] = v;
    out.value = min(out.value, v);
  }
  return out;
}

Rational birch_bound(long n, long s, long r, unsigned d) {
  if (d < 2) throw InvalidInput("birch_bound needs d >= 2");
  if (r <= 0) throw InvalidInput("birch_bound needs r >= 1");
  const Integer den = Integer(r) * Integer(d - 1) * ipow(Integer(2), d - 1);
  return make_rational(Integer(n - s), den);
}

ExtRational bhb_tau0(const std::vector<DegreeGroup>& groups, long n) {
  if (groups.empty()) throw InvalidInput("bhb_tau0 needs at least one group");
  std::map<unsigned, DegreeGroup> by_degree;
  for (const auto& g : groups) {
    if (g.count <= 0) throw InvalidInput("group sizes must be positive");
    if (n <= g.s) throw InvalidInput("bhb_tau0 needs n > s for every group");
    if (g.degree == 0) throw InvalidInput("group degrees must be positive");
    if (!by_degree.emplace(g.degree, g).second) throw InvalidInput("duplicate group degree");
  }
  std::map<unsigned, Rational> t;
  Rational running = 0;
  for (auto it = by_degree.rbegin(); it != by_degree.rend(); ++it) {
    const auto& g = it->second;
    running += make_rational(ipow(Integer(2), g.degree - 1) * Integer(g.degree - 1) * Integer(g.count),
                        Integer(n - g.s));
    t[g.degree] = running;
  }
  Rational weighted = 0, total_r = 0;
  for (const auto& [d, g] : by_degree) {
    weighted += t[d] * Rational(g.count);
    total_r += Rational(g.count);
  }
  const Rational& t0 = t.begin()->second;
  const auto head = ExtRational::ratio(1 - weighted, t0);
  if (head.is_infinite()) return head;
  return ExtRational(head.value() + total_r);
}

Thresholds convolution_thresholds(unsigned long r, unsigned long R, unsigned long D) {
  if (r == 0 || R == 0 || D == 0) throw InvalidInput("thresholds need positive r, R, D");
  Thresholds t;
  const Integer top = ipow(Integer(D), R + 1);
  t.N = 2 * Integer(r) * (top - 1);
  t.N_prime = (2 * Integer(r) + 1) * (top - 1);
  t.affine_N = Integer(r) * Integer(D);
  t.affine_N_prime = make_rational(2 * Integer(r) + 1, 2) * Rational(Integer(D));
  t.chain = Integer(r) * top;
  return t;
}

MoiFit moi_fit(const std::vector<FitPoint>& data, unsigned m_min, std::optional<double> sigma0_value) {
  MoiFit out;
  std::map<std::uint64_t, std::vector<std::pair<double, double>>> series;
  for (const auto& pt : data) {
    if (pt.p < 2) throw InvalidInput("fit data needs primes p >= 2");
    if (pt.m == 1 && sigma0_value) {
      out.m1_scaled.emplace_back(pt.p, std::abs(pt.value) * std::pow(static_cast<double>(pt.p), *sigma0_value));
    }
    if (pt.m < m_min) continue;
    if (pt.value == 0) {
      out.excluded_zero.push_back(pt);
      continue;
    }
    const double y = -std::log(std::abs(pt.value)) / std::log(static_cast<double>(pt.p));
    series[pt.p].emplace_back(static_cast<double>(pt.m), y);
  }
  double sxy = 0, sxx = 0;
  for (const auto& [p, pts] : series) {
    if (pts.size() < 3) {
      out.insufficient_primes.push_back(p);
      continue;
    }
    double mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double cxy = 0, cxx = 0;
    for (const auto& [x, y] : pts) {
      cxy += (x - mx) * (y - my);
      cxx += (x - mx) * (x - mx);
    }
    PrimeFit f;
    f.p = p;
    f.points = pts.size();
    f.slope = cxy / cxx;
    f.intercept = my - f.slope * mx;
    for (const auto& [x, y] : pts) {
      f.max_residual = std::max(f.max_residual, std::abs(y - (f.slope * x + f.intercept)));
    }
    out.per_prime.push_back(f);
    sxy += cxy;
    sxx += cxx;
  }
  if (out.per_prime.empty()) {
    throw InvalidInput("moi_fit: insufficient data (need three nonzero points with m >= " +
                       std::to_string(m_min) + " for some prime)");
  }
  out.sigma = sxy / sxx;
  return out;
}

}  // namespace iosc
