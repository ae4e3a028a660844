#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iosc/numeric.hpp"

namespace iosc {

/// Vector of positive integer weights, one per variable.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<unsigned> w);
  static Weight ones(std::size_t n) { return Weight(std::vector<unsigned>(n, 1)); }

  std::size_t size() const { return w_.size(); }
  unsigned operator[](std::size_t i) const { return w_[i]; }
  const std::vector<unsigned>& values() const { return w_; }
  /// |w|
  unsigned long total() const;
  bool is_all_ones() const;
  bool operator==(const Weight&) const = default;

 private:
  std::vector<unsigned> w_;
};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Terms are kept in lexicographic order of exponent
/// vectors and never store a zero coefficient.
class Poly {
 public:
  using Monomial = std::vector<unsigned>;
  using Terms = std::map<Monomial, Integer>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Integer& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(Monomial exponents, const Integer& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Integer constant_term() const;
  /// Coefficient of the given monomial (0 if absent).
  Integer coefficient(const Monomial& m) const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// w-degree d_w(f); -1 for the zero polynomial.
  long weighted_degree(const Weight& w) const;
  /// Largest exponent of `var` (0 if absent).
  unsigned degree_in(std::size_t var) const;
  bool uses_variable(std::size_t var) const { return degree_in(var) > 0; }

  void add_term(const Monomial& m, const Integer& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Integer& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Integer& c) { return a *= c; }
  friend Poly operator*(const Integer& c, Poly a) { return a *= c; }
  Poly operator-() const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly pow(unsigned e) const;
  Poly derivative(std::size_t var) const;

  /// Replace x_i by images[i]; every image must share one variable count.
  Poly substitute(std::span<const Poly> images, std::size_t target_nvars) const;
  /// Re-embed into `nvars` variables, mapping variable i to i + offset.
  Poly embed(std::size_t nvars, std::size_t offset = 0) const;
  /// Set the listed variables to zero.
  Poly zero_variables(std::span<const std::size_t> vars) const;

  /// Exact value at an integer point.
  Integer evaluate(std::span<const Integer> point) const;

  /// Human-readable form using x1..xN (or the supplied names).
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Parse `text` with variables x1..xN (or the declared `names`), integer
/// literals, + - * ^ and parentheses. Throws InvalidInput with the
/// offending position.
Poly parse_poly(std::string_view text, std::size_t nvars,
                std::span<const std::string> names = {});

/// f(point) mod p^m, with the result in [0, p^m).
Integer eval_mod(const Poly& f, std::span<const Integer> point, std::uint64_t p, unsigned m);

/// Decomposition of f into w-weighted homogeneous parts keyed by w-degree.
std::map<long, Poly> weighted_parts(const Poly& f, const Weight& w);
/// Highest w-degree part f~_w (zero polynomial for f = 0).
Poly top_weighted_part(const Poly& f, const Weight& w);
/// Highest part for an arbitrary nonnegative grading (zero grades allowed).
Poly top_graded_part(const Poly& f, std::span<const long> grading);
bool is_weighted_homogeneous(const Poly& f, const Weight& w);

/// All r x r minors of the Jacobian of `gens` (r = gens.size()), in
/// lexicographic order of the chosen column sets.
std::vector<Poly> jacobian_minors(std::span<const Poly> gens, std::size_t nvars);

/// x_i -> x_{i1} ... x_{i w_i}; variable (i, j) lands at
/// w_1 + ... + w_{i-1} + j.
Poly torus_transform(const Poly& f, const Weight& w);

/// Which coefficient x_{i j} starts each jet series x_i(t) = sum_j x_{ij} t^j.
enum class JetStart { Zero = 0, One = 1 };

/// Index of the jet variable x_{i j} in the output of jet_expand.
std::size_t jet_variable(std::size_t i, unsigned j, unsigned m, JetStart start);

/// Coefficients F_0..F_m of f(x(t)) mod t^{m+1}, each a polynomial in
/// n * (m + 1 - start) variables indexed by jet_variable.
std::vector<Poly> jet_expand(const Poly& f, unsigned m, JetStart start);

}  // namespace iosc
