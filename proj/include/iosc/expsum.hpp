#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "iosc/ffield.hpp"
#include "iosc/ringcount.hpp"

namespace iosc {

/// counts[j] = number of region points where the phase is j mod p^m.
struct PhaseHistogram {
  std::uint64_t p = 2;
  unsigned m = 1;
  std::vector<Integer> counts;

  std::uint64_t modulus() const { return counts.size(); }
  Integer total() const;
};

PhaseHistogram phase_histogram(const Poly& f, std::uint64_t p, unsigned m, const Region& region);

/// An element of Q(zeta_N) stored as its residue modulo the cyclotomic
/// polynomial Phi_N, i.e. coordinates on 1, zeta, ..., zeta^{phi(N)-1}.
/// Two values are equal as complex numbers iff their residues agree.
class CycloValue {
 public:
  CycloValue() : CycloValue(1) {}
  explicit CycloValue(std::uint64_t order);
  /// sum_j counts[j] zeta^j with zeta = exp(2 pi i / order), j < order.
  static CycloValue from_counts(std::uint64_t order, std::span<const Integer> counts);
  static CycloValue rational(std::uint64_t order, const Rational& r);

  std::uint64_t order() const { return order_; }
  const std::vector<Rational>& residue() const { return residue_; }

  CycloValue& operator+=(const CycloValue& o);
  CycloValue& operator-=(const CycloValue& o);
  CycloValue& operator*=(const Rational& c);
  friend CycloValue operator*(CycloValue a, const Rational& c) { return a *= c; }
  bool operator==(const CycloValue& o) const { return order_ == o.order_ && residue_ == o.residue_; }

  bool is_rational() const;
  bool equals_rational(const Rational& r) const;
  std::complex<double> to_complex() const;
  /// "N:[r0,r1,...]" with rational residue coordinates.
  std::string to_string() const;

 private:
  std::uint64_t order_;
  std::vector<Rational> residue_;
};

/// Integer coefficients of Phi_N, low degree first.
std::vector<Integer> cyclotomic_polynomial(std::uint64_t N);

CycloValue cyclo_reduce(const PhaseHistogram& h);
bool equals_rational(const CycloValue& v, const Rational& r);
std::complex<double> to_complex(const PhaseHistogram& h);

/// E(m) from point counts restricted to Z (a region over (Z/p)^n):
///   m >= 2: p^{-mn}(N_m - p^{n-r} N_{m-1}),
///   m = 1:  p^{-n}(#(X cap Z)(F_p) - p^{-r} #Z(F_p)).
Rational E_counts(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned m,
                  const std::optional<Region>& Z = std::nullopt);
/// E(1), ..., E(M) from a single counting pass (index 0 holds 1).
std::vector<Rational> E_values(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned M,
                               const std::optional<Region>& Z = std::nullopt,
                               CountMethod method = CountMethod::Lifting);

enum class CharsumMethod {
  Grouped,  ///< tally x by the value vector of the generators, then pair with y
  Pairing,  ///< phase histogram of g(a, x) over primitive a times all x
};

/// p^{-m(n+r)} sum over primitive y in (Z/p^m)^r and x in (Z/p^m)^n of
/// psi(y . f(x)), with psi(a) = exp(2 pi i a / p^m). The system must have
/// exactly r generators.
CycloValue E_charsum(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned m,
                     CharsumMethod method = CharsumMethod::Grouped);

struct MoidefCheck {
  Rational counts;
  CycloValue charsum;
  bool holds = false;
};
MoidefCheck verify_moidef(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned m);

/// Histogram of Tr(h(x)) in F_p over x in F_q^n with x_i = 0 for i in J1
/// and x_i != 0 for i in J2.
std::vector<Integer> ff_trace_histogram(const Poly& h, const FiniteField& field,
                                        const std::set<std::size_t>& J1,
                                        const std::set<std::size_t>& J2);

struct FFSum {
  std::uint64_t q = 0;
  CycloValue exact;               ///< in Q(zeta_p)
  std::complex<double> value;
  int s = 0;
  bool s_estimated = false;
  bool degree_invertible = true;  ///< p does not divide the w-degree of f
  bool homogeneous = true;
  double ratio = 0;               ///< |sum| / q^{(n + s)/2}
};

/// Sum of Psi(f + g) over the constrained set for the canonical character
/// Psi(a) = exp(2 pi i Tr(a) / p). Without `s`, the dimension of the
/// common zeros of the partials of f is estimated.
FFSum ff_char_sum(const Poly& f, const Poly& g, std::uint64_t p, unsigned k,
                  const std::set<std::size_t>& J1 = {}, const std::set<std::size_t>& J2 = {},
                  std::optional<int> s = std::nullopt,
                  const std::optional<Weight>& w = std::nullopt);

struct TorusCheck {
  bool holds = false;
  CycloValue original;   ///< sum over k^n of Psi(f + g)
  CycloValue transformed;  ///< sum over k^n x (k*)^{|w|-n} of Psi(f^ + g^), divided by (q-1)^{|w|-n}
};

/// Compares both sides of the torus averaging identity exactly.
TorusCheck torus_sum_check(const Poly& f, const Poly& g, const Weight& w, std::uint64_t p,
                           unsigned k);

}  // namespace iosc
