#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iosc/ideal.hpp"

namespace iosc {

/// A rational or +infinity, with n/0 = +inf (n > 0) and 0/0 = 0.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(const Rational& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static ExtRational infinity();
  static ExtRational ratio(const Rational& num, const Rational& den);

  bool is_infinite() const { return infinite_; }
  const Rational& value() const;
  std::string to_string() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend bool operator<(const ExtRational& a, const ExtRational& b);
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }

 private:
  bool infinite_ = false;
  Rational value_ = 0;
};

/// Where the singular-locus dimensions came from.
struct SValues {
  std::map<unsigned, int> s;  ///< degree -> s
  bool injected = false;      ///< supplied by the caller rather than estimated
};

struct BoundResult {
  ExtRational value;
  SValues s;
  std::map<unsigned, ExtRational> per_degree;
};

/// min over degrees l of (n - s_l) / l, with the generators regrouped by
/// the total degree of their top homogeneous parts.
BoundResult sigma0(const IdealSpec& spec, const std::optional<std::map<unsigned, int>>& s = std::nullopt);

/// min over w-degrees i of (n - s_{wi}) / (2 (i - 1)).
BoundResult sigma_tilde0w(const IdealSpec& spec,
                          const std::optional<std::map<unsigned, int>>& s = std::nullopt);

/// (n - s) / (r (d - 1) 2^{d - 1}), d >= 2.
Rational birch_bound(long n, long s, long r, unsigned d);

struct DegreeGroup {
  unsigned degree = 0;
  long count = 0;  ///< r_i
  long s = -1;     ///< s_i
};

/// Browning / Heath-Brown exponent built from the weights
/// t_i = sum_{l >= i} 2^{l-1} (l - 1) r_l / (n - s_l).
ExtRational bhb_tau0(const std::vector<DegreeGroup>& groups, long n);

struct Thresholds {
  Integer N;            ///< 2 r (D^{R+1} - 1)
  Integer N_prime;      ///< (2 r + 1)(D^{R+1} - 1)
  Integer affine_N;     ///< r D
  Rational affine_N_prime;  ///< (r + 1/2) D
  Integer chain;        ///< r D^{R+1}, threshold of the chain example
};
Thresholds convolution_thresholds(unsigned long r, unsigned long R, unsigned long D);

struct FitPoint {
  std::uint64_t p = 0;
  unsigned m = 0;
  double value = 0;  ///< |E(p, m)|
};

struct PrimeFit {
  std::uint64_t p = 0;
  double slope = 0;
  double intercept = 0;
  std::size_t points = 0;
  double max_residual = 0;
};

struct MoiFit {
  double sigma = 0;  ///< pooled slope (common slope, per-prime intercepts)
  std::vector<PrimeFit> per_prime;
  std::vector<FitPoint> excluded_zero;
  std::vector<std::uint64_t> insufficient_primes;
  /// m = 1 line: |E(p, 1)| p^{sigma0} per prime, when sigma0 is given.
  std::vector<std::pair<std::uint64_t, double>> m1_scaled;
};

/// Least-squares fit of -log_p |E| = sigma m + c_p over points with
/// m >= m_min and E != 0. Primes with fewer than three usable points are
/// set aside; if none remain, InvalidInput is thrown.
MoiFit moi_fit(const std::vector<FitPoint>& data, unsigned m_min = 2,
               std::optional<double> sigma0_value = std::nullopt);

}  // namespace iosc
