#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iosc/poly.hpp"

namespace iosc {

/// F_q, q = p^k, in a polynomial basis over F_p. Elements are encoded as
/// integers in [0, q) whose base-p digits are the coordinates on
/// 1, a, a^2, ..., a^{k-1}; the prime subfield is {0, ..., p-1}.
/// Multiplication goes through discrete log tables built from a
/// primitive element.
class FiniteField {
 public:
  using Element = std::uint32_t;

  FiniteField(std::uint64_t p, unsigned k);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint64_t order() const { return q_; }
  /// Coefficients c_0..c_k (monic) of the defining polynomial.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  Element add(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Element pow(Element a, std::uint64_t e) const;
  /// Absolute trace to F_p, as an integer in [0, p).
  std::uint64_t trace(Element a) const { return trace_[a]; }
  /// Image of an integer in the prime subfield.
  Element from_integer(const Integer& z) const;
  /// The primitive element used for the log tables.
  Element generator() const { return generator_; }

 private:
  std::uint64_t p_;
  unsigned k_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> trace_;
  Element generator_ = 1;
};

/// A polynomial compiled for evaluation over a FiniteField.
class FieldPoly {
 public:
  FieldPoly(const Poly& f, const FiniteField& field);
  FiniteField::Element operator()(std::span<const FiniteField::Element> x) const;

 private:
  struct Term {
    FiniteField::Element coef;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
  };
  const FiniteField* field_;
  std::vector<Term> terms_;
};

}  // namespace iosc
