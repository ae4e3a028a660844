#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iosc/poly.hpp"

namespace iosc {

/// A polynomial with coefficients reduced modulo N, compiled for fast
/// repeated evaluation on residue vectors. N must be below 2^32.
class ModPoly {
 public:
  ModPoly() = default;
  ModPoly(const Poly& f, std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }

  /// f(x) mod N; entries of x must already lie in [0, N).
  std::uint64_t operator()(std::span<const std::uint64_t> x) const;

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
  };
  struct Term {
    std::uint64_t coef;
    std::uint32_t first, last;  // range in factors_
  };
  std::uint64_t modulus_ = 1;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
  std::vector<Factor> factors_;
};

/// Odometer over [0, base)^k; returns false after the last vector.
inline bool next_tuple(std::span<std::uint64_t> x, std::uint64_t base) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (++x[i] < base) return true;
    x[i] = 0;
  }
  return false;
}

/// Decode index into a base-`base` digit vector (most significant first).
inline void decode_tuple(std::uint64_t index, std::uint64_t base, std::span<std::uint64_t> x) {
  for (std::size_t i = x.size(); i-- > 0;) {
    x[i] = index % base;
    index /= base;
  }
}

}  // namespace iosc
