#include "iosc/ffield.hpp"

#include "iosc/runtime.hpp"

namespace iosc {
namespace {

using Digits = std::vector<std::uint64_t>;  // low degree first

Digits trim(Digits a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // p is prime: a^(p-2).
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// a mod b over F_p; b nonzero.
Digits poly_mod(Digits a, const Digits& b, std::uint64_t p) {
  a = trim(std::move(a));
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
    }
    a = trim(std::move(a));
  }
  return a;
}

Digits poly_mulmod(const Digits& a, const Digits& b, const Digits& mod, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Digits prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(prod), mod, p);
}

Digits poly_powmod(Digits base, std::uint64_t e, const Digits& mod, std::uint64_t p) {
  Digits r{1};
  base = poly_mod(std::move(base), mod, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

Digits poly_gcd(Digits a, Digits b, std::uint64_t p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Digits r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree k is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= k/2.
bool irreducible(const Digits& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  Digits xp{0, 1};
  for (std::size_t i = 1; i <= k / 2; ++i) {
    xp = poly_powmod(xp, p, f, p);
    Digits h = xp;
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    Digits g = poly_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Digits to_digits(std::uint64_t e, std::uint64_t p, unsigned k) {
  Digits d(k, 0);
  for (unsigned i = 0; i < k; ++i) {
    d[i] = e % p;
    e /= p;
  }
  return trim(std::move(d));
}

std::uint64_t from_digits(const Digits& d, std::uint64_t p) {
  std::uint64_t e = 0;
  for (std::size_t i = d.size(); i-- > 0;) e = e * p + d[i];
  return e;
}

}  // namespace

FiniteField::FiniteField(std::uint64_t p, unsigned k) : p_(p), k_(k) {
  if (!is_prime(p)) throw InvalidInput("field characteristic must be prime");
  if (k == 0) throw InvalidInput("field degree must be positive");
  q_ = upow_checked(p, k);
  if (q_ == 0 || q_ > (std::uint64_t{1} << 26)) throw InvalidInput("field too large for table arithmetic");

  // Smallest monic irreducible polynomial of degree k (lexicographic on
  // the lower coefficients).
  Digits mod;
  for (std::uint64_t c = 0; c < q_; ++c) {
    Digits cand(k + 1, 0);
    std::uint64_t t = c;
    for (unsigned i = 0; i < k; ++i) {
      cand[i] = t % p;
      t /= p;
    }
    cand[k] = 1;
    if (k > 1 && cand[0] == 0) continue;
    if (irreducible(cand, p)) {
      mod = cand;
      break;
    }
  }
  modulus_.assign(mod.begin(), mod.end());

  const std::uint64_t group = q_ - 1;
  const auto primes = factorize(group);
  Digits gen;
  if (q_ == 2) {
    gen = {1};
  } else {
    for (std::uint64_t e = 2; e < q_; ++e) {
      Digits cand = to_digits(e, p, k);
      bool primitive = true;
      for (const auto& [ell, unused] : primes) {
        Digits r = poly_powmod(cand, group / ell, mod, p);
        if (r.size() == 1 && r[0] == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = cand;
        break;
      }
    }
  }
  generator_ = static_cast<Element>(from_digits(gen, p));

  exp_.assign(group, 0);
  log_.assign(q_, 0);
  Digits cur{1};
  for (std::uint64_t i = 0; i < group; ++i) {
    const std::uint64_t e = from_digits(cur, p);
    exp_[i] = static_cast<Element>(e);
    log_[e] = static_cast<std::uint32_t>(i);
    cur = poly_mulmod(cur, gen, mod, p);
  }

  // Trace of the basis elements a^j, then extend linearly.
  std::vector<std::uint64_t> basis_trace(k, 0);
  for (unsigned j = 0; j < k; ++j) {
    Digits aj(j + 1, 0);
    aj[j] = 1;
    aj = poly_mod(aj, mod, p);
    Digits conj = aj;
    std::uint64_t t = 0;
    for (unsigned i = 0; i < k; ++i) {
      Digits c = trim(conj);
      t = (t + (c.empty() ? 0 : c[0])) % p;
      conj = poly_powmod(conj, p, mod, p);
    }
    basis_trace[j] = t;
  }
  trace_.assign(q_, 0);
  for (std::uint64_t e = 0; e < q_; ++e) {
    std::uint64_t t = 0, v = e;
    for (unsigned j = 0; j < k; ++j) {
      t = (t + (v % p) * basis_trace[j]) % p;
      v /= p;
    }
    trace_[e] = static_cast<std::uint32_t>(t);
  }
}

FiniteField::Element FiniteField::add(Element a, Element b) const {
  if (k_ == 1) {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  std::uint64_t out = 0, scale = 1, x = a, y = b;
  for (unsigned i = 0; i < k_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<Element>(out);
}

FiniteField::Element FiniteField::neg(Element a) const {
  std::uint64_t out = 0, scale = 1, x = a;
  for (unsigned i = 0; i < k_; ++i) {
    out += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return static_cast<Element>(out);
}

FiniteField::Element FiniteField::pow(Element a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t l = (static_cast<unsigned __int128>(log_[a]) * e) % (q_ - 1);
  return exp_[l];
}

FiniteField::Element FiniteField::from_integer(const Integer& z) const {
  return static_cast<Element>(mod_reduce(z, p_));
}

FieldPoly::FieldPoly(const Poly& f, const FiniteField& field) : field_(&field) {
  for (const auto& [m, c] : f.terms()) {
    const auto coef = field.from_integer(c);
    if (coef == 0) continue;
    Term t{coef, {}};
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0) t.factors.emplace_back(static_cast<std::uint32_t>(i), m[i]);
    }
    terms_.push_back(std::move(t));
  }
}

FiniteField::Element FieldPoly::operator()(std::span<const FiniteField::Element> x) const {
  FiniteField::Element acc = 0;
  for (const auto& t : terms_) {
    FiniteField::Element v = t.coef;
    for (const auto& [var, e] : t.factors) {
      v = field_->mul(v, field_->pow(x[var], e));
      if (v == 0) break;
    }
    acc = field_->add(acc, v);
  }
  return acc;
}

}  // namespace iosc
