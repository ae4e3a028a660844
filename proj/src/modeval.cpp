#include "iosc/modeval.hpp"

#include "iosc/runtime.hpp"

namespace iosc {

ModPoly::ModPoly(const Poly& f, std::uint64_t modulus) : modulus_(modulus), nvars_(f.nvars()) {
  if (modulus == 0 || modulus >= (std::uint64_t{1} << 32)) {
    throw InvalidInput("modulus must lie in [1, 2^32)");
  }
  for (const auto& [m, c] : f.terms()) {
    const std::uint64_t coef = mod_reduce(c, modulus);
    if (coef == 0) continue;
    Term t{coef, static_cast<std::uint32_t>(factors_.size()), 0};
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0) factors_.push_back({static_cast<std::uint32_t>(i), m[i]});
    }
    t.last = static_cast<std::uint32_t>(factors_.size());
    terms_.push_back(t);
  }
}

std::uint64_t ModPoly::operator()(std::span<const std::uint64_t> x) const {
  const std::uint64_t N = modulus_;
  std::uint64_t acc = 0;
  for (const Term& t : terms_) {
    std::uint64_t v = t.coef;
    for (std::uint32_t k = t.first; k < t.last; ++k) {
      const std::uint64_t base = x[factors_[k].var];
      for (std::uint32_t e = 0; e < factors_[k].exp; ++e) v = v * base % N;
    }
    acc += v;
    if (acc >= N) acc -= N;
  }
  return acc;
}

}  // namespace iosc
