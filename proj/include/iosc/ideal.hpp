#pragma once

#include <optional>
#include <vector>

#include "iosc/poly.hpp"

namespace iosc {

/// Generators sharing one (weighted) degree.
struct GeneratorGroup {
  unsigned degree = 0;
  std::vector<Poly> gens;
};

/// Ideal presented by generators grouped by w-degree, with an optional
/// weight vector (all ones by default).
class IdealSpec {
 public:
  IdealSpec() = default;
  /// Validates: generators non-constant, in `nvars` variables, and of
  /// w-degree equal to their group's degree.
  IdealSpec(std::size_t nvars, std::vector<GeneratorGroup> groups,
            std::optional<Weight> weight = std::nullopt);

  /// Groups a flat generator list by w-degree (ascending), keeping the
  /// input order inside each group.
  static IdealSpec from_generators(std::size_t nvars, std::vector<Poly> gens,
                                   std::optional<Weight> weight = std::nullopt);

  std::size_t nvars() const { return nvars_; }
  const std::vector<GeneratorGroup>& groups() const { return groups_; }
  const Weight& weight() const { return weight_; }
  bool has_explicit_weight() const { return explicit_weight_; }

  /// r = sum of group sizes.
  std::size_t generator_count() const;
  /// Generators in group-major order.
  std::vector<Poly> generators() const;
  /// sum over groups of degree * size.
  unsigned long weighted_degree_sum() const;
  unsigned max_degree() const;

 private:
  std::size_t nvars_ = 0;
  std::vector<GeneratorGroup> groups_;
  Weight weight_;
  bool explicit_weight_ = false;
};

/// g(a, x) = sum a_{ij} f_{ij}(x) in r + n variables: the a-variables
/// first (group-major, then j), then x.
Poly build_pairing(const IdealSpec& spec);

/// Per-degree outcome of the top-part check on jet coefficients.
struct HighpartCase {
  unsigned degree = 0;  ///< the group degree l with a_{ij0} = 0 for i > l
  bool holds = false;
  Poly top_of_jet;      ///< top w~-part of the m-th jet coefficient of g
  Poly jet_of_top;      ///< m-th jet coefficient of the top w-part
};

struct HighpartReport {
  unsigned m = 0;
  unsigned max_degree = 0;  ///< D
  std::vector<HighpartCase> cases;
  bool holds() const;
};

/// Compares, for each group degree l, the top w~-weighted part
/// (w~(x_{iu}) = w_i + D u, a-variables of weight 0) of the m-th jet
/// coefficient of g with a_{ij}(0) = 0 for i > l, against the m-th jet
/// coefficient of sum_j a_{lj} F_{ljw} evaluated at constant a.
HighpartReport highpart_check(const IdealSpec& spec, unsigned m);

}  // namespace iosc
