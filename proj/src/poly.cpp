#include "iosc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "iosc/runtime.hpp"

namespace iosc {

Weight::Weight(std::vector<unsigned> w) : w_(std::move(w)) {
  for (unsigned v : w_) {
    if (v == 0) throw InvalidInput("weights must be positive integers");
  }
}

unsigned long Weight::total() const {
  return std::accumulate(w_.begin(), w_.end(), 0ul);
}

bool Weight::is_all_ones() const {
  return std::all_of(w_.begin(), w_.end(), [](unsigned v) { return v == 1; });
}

// ---------------------------------------------------------------------------

Poly Poly::constant(std::size_t nvars, const Integer& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InvalidInput("variable index out of range");
  Monomial m(nvars, 0);
  m[index] = 1;
  Poly p(nvars);
  p.add_term(m, 1);
  return p;
}

Poly Poly::monomial(Monomial exponents, const Integer& c) {
  Poly p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](unsigned e) { return e == 0; }));
}

Integer Poly::constant_term() const { return coefficient(Monomial(nvars_, 0)); }

Integer Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    d = std::max(d, static_cast<int>(std::accumulate(m.begin(), m.end(), 0u)));
  }
  return d;
}

long Poly::weighted_degree(const Weight& w) const {
  if (w.size() != nvars_) throw InvalidInput("weight length does not match variable count");
  long d = -1;
  for (const auto& [m, c] : terms_) {
    long s = 0;
    for (std::size_t i = 0; i < nvars_; ++i) s += static_cast<long>(w[i]) * m[i];
    d = std::max(d, s);
  }
  return d;
}

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

void Poly::add_term(const Monomial& m, const Integer& c) {
  if (m.size() != nvars_) throw InvalidInput("monomial length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nvars_ != nvars_) throw InvalidInput("adding polynomials in different variable counts");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.nvars_ != nvars_) throw InvalidInput("subtracting polynomials in different variable counts");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw InvalidInput("multiplying polynomials in different variable counts");
  Poly out(a.nvars_);
  Poly::Monomial m(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= nvars_) throw InvalidInput("variable index out of range");
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out.add_term(d, c * m[var]);
  }
  return out;
}

Poly Poly::substitute(std::span<const Poly> images, std::size_t target_nvars) const {
  if (images.size() != nvars_) throw InvalidInput("substitution needs one image per variable");
  for (const auto& img : images) {
    if (img.nvars() != target_nvars) throw InvalidInput("substitution images disagree on variable count");
  }
  // Cache powers of each image.
  std::vector<std::vector<Poly>> powers(nvars_);
  Poly out(target_nvars);
  for (const auto& [m, c] : terms_) {
    Poly term = constant(target_nvars, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target_nvars, 1));
      while (pw.size() <= m[i]) pw.push_back(pw.back() * images[i]);
      term = term * pw[m[i]];
    }
    out += term;
  }
  return out;
}

Poly Poly::embed(std::size_t nvars, std::size_t offset) const {
  if (offset + nvars_ > nvars) throw InvalidInput("embedding does not fit");
  Poly out(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial e(nvars, 0);
    std::copy(m.begin(), m.end(), e.begin() + static_cast<std::ptrdiff_t>(offset));
    out.add_term(e, c);
  }
  return out;
}

Poly Poly::zero_variables(std::span<const std::size_t> vars) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    bool keep = std::none_of(vars.begin(), vars.end(), [&](std::size_t v) { return m[v] > 0; });
    if (keep) out.add_term(m, c);
  }
  return out;
}

Integer Poly::evaluate(std::span<const Integer> point) const {
  if (point.size() != nvars_) throw InvalidInput("point length does not match variable count");
  Integer total = 0;
  for (const auto& [m, c] : terms_) {
    Integer t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] > 0) t *= ipow(point[i], m[i]);
    }
    total += t;
  }
  return total;
}

std::string Poly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  auto name = [&](std::size_t i) {
    return i < names.size() ? names[i] : "x" + std::to_string(i + 1);
  };
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = std::any_of(m.begin(), m.end(), [](unsigned e) { return e > 0; });
    bool wrote = false;
    if (mag != 1 || !has_var) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << name(i);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars, std::span<const std::string> names)
      : text_(text), nvars_(nvars), names_(names) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "polynomial syntax error at position " << pos_ << ": " << msg << " in '" << text_ << "'";
    throw InvalidInput(os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 1000) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly::constant(nvars_, Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string ident(text_.substr(start, pos_ - start));
      if (!names_.empty()) {
        auto it = std::find(names_.begin(), names_.end(), ident);
        if (it == names_.end()) {
          pos_ = start;
          fail("unknown variable '" + ident + "'");
        }
        return Poly::variable(nvars_, static_cast<std::size_t>(it - names_.begin()));
      }
      if (ident.size() < 2 || ident[0] != 'x' ||
          !std::all_of(ident.begin() + 1, ident.end(),
                       [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        pos_ = start;
        fail("unknown variable '" + ident + "' (expected x1..x" + std::to_string(nvars_) + ")");
      }
      unsigned long idx = std::stoul(ident.substr(1));
      if (idx == 0 || idx > nvars_) {
        pos_ = start;
        fail("variable index out of range: " + ident);
      }
      return Poly::variable(nvars_, idx - 1);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t nvars_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::size_t nvars, std::span<const std::string> names) {
  if (!names.empty() && names.size() != nvars) {
    throw InvalidInput("declared variable names do not match the variable count");
  }
  return Parser(text, nvars, names).parse();
}

Integer eval_mod(const Poly& f, std::span<const Integer> point, std::uint64_t p, unsigned m) {
  const Integer modulus = ipow(Integer(to_integer(p)), m);
  Integer v = f.evaluate(point);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------

std::map<long, Poly> weighted_parts(const Poly& f, const Weight& w) {
  if (w.size() != f.nvars()) throw InvalidInput("weight length does not match variable count");
  std::map<long, Poly> parts;
  for (const auto& [m, c] : f.terms()) {
    long d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<long>(w[i]) * m[i];
    auto [it, inserted] = parts.try_emplace(d, f.nvars());
    it->second.add_term(m, c);
  }
  return parts;
}

Poly top_weighted_part(const Poly& f, const Weight& w) {
  auto parts = weighted_parts(f, w);
  if (parts.empty()) return Poly(f.nvars());
  return parts.rbegin()->second;
}

Poly top_graded_part(const Poly& f, std::span<const long> grading) {
  if (grading.size() != f.nvars()) throw InvalidInput("grading length does not match variable count");
  long best = -1;
  for (const auto& [m, c] : f.terms()) {
    long d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += grading[i] * m[i];
    best = std::max(best, d);
  }
  Poly out(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    long d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += grading[i] * m[i];
    if (d == best) out.add_term(m, c);
  }
  return out;
}

bool is_weighted_homogeneous(const Poly& f, const Weight& w) {
  return weighted_parts(f, w).size() <= 1;
}

namespace {

Poly determinant(std::vector<std::vector<Poly>> mat, std::size_t nvars) {
  const std::size_t r = mat.size();
  if (r == 0) return Poly::constant(nvars, 1);
  if (r == 1) return mat[0][0];
  Poly det(nvars);
  for (std::size_t col = 0; col < r; ++col) {
    if (mat[0][col].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    minor.reserve(r - 1);
    for (std::size_t row = 1; row < r; ++row) {
      std::vector<Poly> line;
      line.reserve(r - 1);
      for (std::size_t c = 0; c < r; ++c) {
        if (c != col) line.push_back(mat[row][c]);
      }
      minor.push_back(std::move(line));
    }
    Poly term = mat[0][col] * determinant(std::move(minor), nvars);
    if (col % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

}  // namespace

std::vector<Poly> jacobian_minors(std::span<const Poly> gens, std::size_t nvars) {
  const std::size_t r = gens.size();
  if (r > nvars) throw InvalidInput("more generators than variables: the rank condition is vacuous");
  std::vector<std::vector<Poly>> jac(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (gens[i].nvars() != nvars) throw InvalidInput("generator variable count mismatch");
    for (std::size_t j = 0; j < nvars; ++j) jac[i].push_back(gens[i].derivative(j));
  }
  std::vector<Poly> minors;
  if (r == 0) return minors;
  std::vector<std::size_t> cols(r);
  std::iota(cols.begin(), cols.end(), 0);
  for (;;) {
    std::vector<std::vector<Poly>> sub(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t c : cols) sub[i].push_back(jac[i][c]);
    }
    minors.push_back(determinant(std::move(sub), nvars));
    // Next combination in lexicographic order.
    std::size_t k = r;
    while (k > 0 && cols[k - 1] == nvars - r + (k - 1)) --k;
    if (k == 0) break;
    ++cols[k - 1];
    for (std::size_t t = k; t < r; ++t) cols[t] = cols[t - 1] + 1;
  }
  return minors;
}

Poly torus_transform(const Poly& f, const Weight& w) {
  if (w.size() != f.nvars()) throw InvalidInput("weight length does not match variable count");
  const std::size_t total = w.total();
  std::vector<Poly> images;
  images.reserve(f.nvars());
  std::size_t offset = 0;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Poly::Monomial m(total, 0);
    for (unsigned j = 0; j < w[i]; ++j) m[offset + j] = 1;
    images.push_back(Poly::monomial(m, 1));
    offset += w[i];
  }
  return f.substitute(images, total);
}

std::size_t jet_variable(std::size_t i, unsigned j, unsigned m, JetStart start) {
  const unsigned s = static_cast<unsigned>(start);
  if (j < s || j > m) throw InvalidInput("jet coefficient index out of range");
  return i * (m + 1 - s) + (j - s);
}

std::vector<Poly> jet_expand(const Poly& f, unsigned m, JetStart start) {
  const unsigned s = static_cast<unsigned>(start);
  const std::size_t n = f.nvars();
  const std::size_t width = m + 1 >= s ? (m + 1 - s) : 0;
  const std::size_t nv = n * width;
  using Series = std::vector<Poly>;  // coefficients of t^0..t^m

  auto multiply = [&](const Series& a, const Series& b) {
    Series out(m + 1, Poly(nv));
    for (unsigned i = 0; i <= m; ++i) {
      if (a[i].is_zero()) continue;
      for (unsigned j = 0; i + j <= m; ++j) {
        if (b[j].is_zero()) continue;
        out[i + j] += a[i] * b[j];
      }
    }
    return out;
  };

  std::vector<std::vector<Series>> powers(n);
  auto power_of = [&](std::size_t var, unsigned e) -> const Series& {
    auto& pw = powers[var];
    if (pw.empty()) {
      Series one(m + 1, Poly(nv));
      one[0] = Poly::constant(nv, 1);
      pw.push_back(one);
      Series x(m + 1, Poly(nv));
      for (unsigned j = s; j <= m; ++j) x[j] = Poly::variable(nv, jet_variable(var, j, m, start));
      pw.push_back(x);
    }
    while (pw.size() <= e) pw.push_back(multiply(pw.back(), pw[1]));
    return pw[e];
  };

  Series total(m + 1, Poly(nv));
  for (const auto& [mono, c] : f.terms()) {
    Series term(m + 1, Poly(nv));
    term[0] = Poly::constant(nv, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (mono[i] == 0) continue;
      term = multiply(term, power_of(i, mono[i]));
    }
    for (unsigned k = 0; k <= m; ++k) total[k] += term[k];
  }
  return total;
}

}  // namespace iosc
