#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iosc/sseries.hpp"

namespace iosc {

/// Axis-aligned box of closed rational intervals inside [-1, 1]^n.
struct BoxSpec {
  std::vector<std::pair<Rational, Rational>> sides;

  BoxSpec() = default;
  explicit BoxSpec(std::vector<std::pair<Rational, Rational>> s);
  static BoxSpec unit(std::size_t n);  ///< [-1, 1]^n
  std::size_t dim() const { return sides.size(); }
  bool contains_origin() const;  ///< 0 in the interior
  double volume() const;
};

/// #{x in Z^n : x / B in box, every generator vanishes at x}.
Integer count_box_solutions(const PolySystem& sys, const BoxSpec& box, std::uint64_t B);

enum class SamplerKind { Grid, MonteCarlo };

struct Sampler {
  SamplerKind kind = SamplerKind::MonteCarlo;
  std::uint64_t seed = 0x5eed;
  std::uint64_t samples = 1u << 22;
};

struct SingularIntegral {
  std::vector<double> eps;
  std::vector<double> estimates;  ///< eps^{-r} vol{x in box : |f_i(x)| <= eps/2}
  double value = 0;               ///< estimate at the smallest eps
  bool converged = false;         ///< last two estimates within 5%
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::string sampler;
};

SingularIntegral singular_integral(const PolySystem& sys, const BoxSpec& box,
                                   std::vector<double> eps_ladder, const Sampler& sampler = {});

struct MajorArcReport {
  Rational series;          ///< sum_{q <= Qmax} q^r E(q)
  SingularIntegral integral;
  double prediction = 0;    ///< series * integral * B^{n - D}
  Integer actual;
  double ratio = 0;
  bool degenerate = false;  ///< prediction or count too small for a meaningful ratio
  unsigned long degree_sum = 0;
};

/// Compares the major-arc main term with the exact box count for a system
/// of homogeneous forms.
MajorArcReport major_arc_prediction(const PolySystem& sys, const BoxSpec& box, std::uint64_t B,
                                    std::uint64_t Qmax, std::vector<double> eps_ladder,
                                    const Sampler& sampler = {});

/// Components of a polynomial map A^{n_i} -> A^r.
using PolyMap = std::vector<Poly>;

struct WaringReport {
  bool surjective = false;
  std::uint64_t missing_count = 0;
  std::vector<std::vector<std::uint64_t>> missing;  ///< first few missing tuples
  std::vector<std::uint64_t> image_sizes;
};

/// Is (Z/p^m)^r the sum of the images A_1 + ... + A_l? A single map is
/// repeated l times; otherwise exactly l maps are required.
WaringReport waring_surjectivity(const std::vector<PolyMap>& maps, std::uint64_t p, unsigned m,
                                 unsigned l, std::size_t max_missing = 64);

/// A map phi: X -> A^r with X cut out by `domain` in `nvars` variables.
struct ConvolutionFactor {
  std::size_t nvars = 0;
  std::vector<Poly> domain;
  PolyMap components;
};

/// Ideal of the fibre over `target` of (x_1, ..., x_l) -> sum phi_i(x_i),
/// in sum n_i variables: every domain generator plus
/// sum_i phi_{i,e} - target_e (denominators cleared) for e = 1..r.
PolySystem convolution_fiber_ideal(const std::vector<ConvolutionFactor>& maps,
                                   const std::vector<Rational>& target);

/// The chain example: x_{i1} - x_{i2}^D, ..., x_{iR} - x_{i,R+1}^D for
/// i = 1..r, with the map (x_{11}^D, ..., x_{r1}^D).
ConvolutionFactor chain_example(unsigned r, unsigned R, unsigned D);

}  // namespace iosc
