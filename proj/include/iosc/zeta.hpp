#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iosc/expsum.hpp"

namespace iosc {

/// Truncated power series in t = q^{-s} with exact coefficients c_0..c_M.
struct QSeries {
  std::uint64_t q = 0;
  std::vector<Rational> coeffs;

  unsigned order() const { return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1); }
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  /// Product truncated at the smaller order.
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  bool operator==(const QSeries& o) const = default;
};

/// Polynomial in t, low degree first.
using TPoly = std::vector<Rational>;

struct RationalFunc {
  TPoly numerator;
  TPoly denominator;  ///< denominator[0] == 1
  /// First `terms` coefficients of the expansion.
  std::vector<Rational> expand(std::size_t terms) const;
};

enum class ReconstructStatus { Found, InsufficientData, NotFound };
std::string to_string(ReconstructStatus s);

struct Reconstruction {
  ReconstructStatus status = ReconstructStatus::NotFound;
  std::optional<RationalFunc> func;
  unsigned recurrence_order = 0;
};

/// Minimal linear recurrence (Berlekamp-Massey over Q) of order at most
/// max_order. A recurrence is only accepted when the data contain at least
/// twice its order in terms.
Reconstruction rational_reconstruct(const std::vector<Rational>& coeffs, unsigned max_order);

/// Multiplicity of t0 as a root of the polynomial (0 if not a root).
unsigned root_multiplicity(const TPoly& poly, const Rational& t0);

struct OrdDistribution {
  std::vector<Rational> c;  ///< c_m = vol{x in Z : ord = m}, m = 0..M
  Rational tail;            ///< vol{x in Z : ord >= M + 1}
  Rational total;           ///< vol(Z)
};

/// Valuation distribution of the ideal over the region Z (full space by
/// default). Throws InvalidInput("ideal is zero") for the zero ideal.
OrdDistribution ord_distribution(const PolySystem& sys, std::uint64_t p, unsigned M,
                                 const std::optional<Region>& Z = std::nullopt);

struct CompaReport {
  bool holds = false;
  QSeries lhs;         ///< (1 - p^{-r} t) Z(t)
  QSeries rhs;         ///< p^{-n}(1 - p^{-r}) #Z t + (1 - 1/t) sum_{m>=2} E(m) t^m + correction
  Rational correction; ///< vol(Z) - vol(Z cap X(F_p)); the rhs adds correction * (1 - t)
  bool z_inside_x = true;
};

/// Series identity between the zeta function and the exponential sums,
/// compared exactly through order M. Z defaults to the reduction of X.
CompaReport compa_check(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned M,
                        const std::optional<Region>& Z = std::nullopt);

enum class ThetaVerdict { Decaying, Stalled, Growing };
std::string to_string(ThetaVerdict v);

struct ThetaReport {
  std::vector<Rational> terms;         ///< E(p, m) p^{rm}, m = 1..M
  std::vector<Rational> partial_sums;  ///< 1 + sum_{k<=m} terms
  ThetaVerdict verdict = ThetaVerdict::Stalled;
};

/// Verdict rule on the last two nonzero |terms|: ratio < 1/2 decaying,
/// > 1 growing, otherwise stalled. A zero final term with fewer than two
/// nonzero terms counts as decaying.
ThetaVerdict theta_verdict(const std::vector<Rational>& terms);
ThetaReport theta_probe(const PolySystem& sys, unsigned r, std::uint64_t p, unsigned M);

/// Poincare series P(t) = sum p^{-mn} N_m t^m through order M.
QSeries poincare_series(const PolySystem& sys, std::uint64_t p, unsigned M);

}  // namespace iosc
