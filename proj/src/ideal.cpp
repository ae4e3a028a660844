#include "iosc/ideal.hpp"

#include <algorithm>
#include <map>

#include "iosc/runtime.hpp"

namespace iosc {

IdealSpec::IdealSpec(std::size_t nvars, std::vector<GeneratorGroup> groups,
                     std::optional<Weight> weight)
    : nvars_(nvars), groups_(std::move(groups)) {
  if (nvars == 0) throw InvalidInput("an ideal needs at least one variable");
  explicit_weight_ = weight.has_value();
  weight_ = weight ? *weight : Weight::ones(nvars);
  if (weight_.size() != nvars) throw InvalidInput("weight length does not match variable count");
  for (const auto& g : groups_) {
    if (g.gens.empty()) throw InvalidInput("empty generator group");
    for (const auto& f : g.gens) {
      if (f.nvars() != nvars) throw InvalidInput("generator variable count mismatch");
      if (f.is_constant()) throw InvalidInput("generators must be non-constant");
      if (f.weighted_degree(weight_) != static_cast<long>(g.degree)) {
        throw InvalidInput("generator " + f.to_string() + " has w-degree " +
                           std::to_string(f.weighted_degree(weight_)) + ", expected " +
                           std::to_string(g.degree));
      }
    }
  }
}

IdealSpec IdealSpec::from_generators(std::size_t nvars, std::vector<Poly> gens,
                                     std::optional<Weight> weight) {
  const Weight w = weight ? *weight : Weight::ones(nvars);
  std::map<unsigned, std::vector<Poly>> by_degree;
  for (auto& f : gens) {
    if (f.nvars() != nvars) throw InvalidInput("generator variable count mismatch");
    if (f.is_constant()) throw InvalidInput("generators must be non-constant");
    by_degree[static_cast<unsigned>(f.weighted_degree(w))].push_back(std::move(f));
  }
  std::vector<GeneratorGroup> groups;
  for (auto& [d, g] : by_degree) groups.push_back({d, std::move(g)});
  return IdealSpec(nvars, std::move(groups), weight);
}

std::size_t IdealSpec::generator_count() const {
  std::size_t r = 0;
  for (const auto& g : groups_) r += g.gens.size();
  return r;
}

std::vector<Poly> IdealSpec::generators() const {
  std::vector<Poly> out;
  for (const auto& g : groups_) out.insert(out.end(), g.gens.begin(), g.gens.end());
  return out;
}

unsigned long IdealSpec::weighted_degree_sum() const {
  unsigned long s = 0;
  for (const auto& g : groups_) s += static_cast<unsigned long>(g.degree) * g.gens.size();
  return s;
}

unsigned IdealSpec::max_degree() const {
  unsigned d = 0;
  for (const auto& g : groups_) d = std::max(d, g.degree);
  return d;
}

Poly build_pairing(const IdealSpec& spec) {
  const std::size_t r = spec.generator_count();
  const std::size_t n = spec.nvars();
  Poly g(r + n);
  std::size_t k = 0;
  for (const auto& group : spec.groups()) {
    for (const auto& f : group.gens) {
      g += Poly::variable(r + n, k) * f.embed(r + n, r);
      ++k;
    }
  }
  return g;
}

bool HighpartReport::holds() const {
  return !cases.empty() &&
         std::all_of(cases.begin(), cases.end(), [](const HighpartCase& c) { return c.holds; });
}

HighpartReport highpart_check(const IdealSpec& spec, unsigned m) {
  const std::size_t r = spec.generator_count();
  const std::size_t n = spec.nvars();
  const std::size_t nv = r + n;
  const unsigned D = spec.max_degree();
  const Weight& w = spec.weight();

  HighpartReport report;
  report.m = m;
  report.max_degree = D;

  const Poly g = build_pairing(spec);
  const Poly g_m = jet_expand(g, m, JetStart::Zero)[m];

  // Grading of the jet variables: a-variables weight 0, x_{iu} -> w_i + D u.
  std::vector<long> grading(nv * (m + 1), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned u = 0; u <= m; ++u) {
      grading[jet_variable(r + i, u, m, JetStart::Zero)] = static_cast<long>(w[i]) + static_cast<long>(D) * u;
    }
  }
  // a-jet variables of order >= 1.
  std::vector<std::size_t> higher_a;
  for (std::size_t k = 0; k < r; ++k) {
    for (unsigned u = 1; u <= m; ++u) higher_a.push_back(jet_variable(k, u, m, JetStart::Zero));
  }

  for (const auto& group : spec.groups()) {
    const unsigned ell = group.degree;
    // a_{ij}(t) in t C[[t]] for groups of degree above ell.
    std::vector<std::size_t> killed;
    std::vector<Poly> top_parts(r, Poly(nv));
    std::size_t k = 0;
    for (const auto& grp : spec.groups()) {
      for (const auto& f : grp.gens) {
        if (grp.degree > ell) killed.push_back(jet_variable(k, 0, m, JetStart::Zero));
        if (grp.degree == ell) {
          top_parts[k] = Poly::variable(nv, k) * top_weighted_part(f, w).embed(nv, r);
        }
        ++k;
      }
    }
    HighpartCase c;
    c.degree = ell;
    c.top_of_jet = top_graded_part(g_m.zero_variables(killed), grading);

    Poly top_pairing(nv);
    for (const auto& t : top_parts) top_pairing += t;
    c.jet_of_top = jet_expand(top_pairing, m, JetStart::Zero)[m].zero_variables(higher_a);
    c.holds = !c.top_of_jet.is_zero() && c.top_of_jet == c.jet_of_top;
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace iosc
