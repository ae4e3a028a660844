#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iosc/bounds.hpp"
#include "iosc/circle.hpp"
#include "iosc/expsum.hpp"
#include "iosc/ideal.hpp"
#include "iosc/ringcount.hpp"
#include "iosc/runtime.hpp"
#include "iosc/sseries.hpp"
#include "iosc/zeta.hpp"

namespace py = pybind11;
using namespace iosc;

namespace {

// Exact values cross the boundary as decimal strings; the Python package
// turns them into int and Fraction.
std::string q(const Rational& r) { return r.get_str(); }
std::string q(const ExtRational& r) { return r.is_infinite() ? "inf" : q(r.value()); }

std::vector<std::string> qs(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(q(r));
  return out;
}

std::vector<std::string> zs(const std::vector<Integer>& v) {
  std::vector<std::string> out;
  for (const auto& z : v) out.push_back(z.get_str());
  return out;
}

PolySystem system(const std::vector<std::string>& gens, std::size_t n) {
  std::vector<Poly> g;
  for (const auto& t : gens) g.push_back(parse_poly(t, n));
  return PolySystem(n, g);
}

unsigned codim(const std::optional<unsigned>& r, const std::vector<std::string>& gens) {
  return r ? *r : static_cast<unsigned>(gens.size());
}

IdealSpec spec(const std::vector<std::string>& gens, std::size_t n, const std::optional<std::vector<unsigned>>& w) {
  std::vector<Poly> g;
  for (const auto& t : gens) g.push_back(parse_poly(t, n));
  return IdealSpec::from_generators(n, g, w ? std::optional<Weight>(Weight(*w)) : std::nullopt);
}

py::dict cyclo(const CycloValue& v) {
  py::dict d;
  d["order"] = v.order();
  d["residue"] = qs(v.residue());
  d["value"] = v.to_complex();
  d["rational"] = v.is_rational() ? py::object(py::str(q(v.residue().empty() ? Rational(0) : v.residue()[0])))
                                  : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_iosc, m) {
  m.doc() = "Exact exponential sums and point counts over polynomial ideals";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<Inconsistency>(m, "Inconsistency", PyExc_RuntimeError);

  m.def("set_threads", &runtime::set_threads, py::arg("n"));
  m.def("threads", &runtime::threads);
  m.def("set_budget", &runtime::set_budget, py::arg("points"));
  m.def("budget", &runtime::budget);

  m.def("canonical", [](const std::string& text, std::size_t n) { return parse_poly(text, n).to_string(); },
        py::arg("poly"), py::arg("n"));

  m.def(
      "count_levels",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t p, unsigned M, const std::string& method) {
        if (method != "lifting" && method != "naive") throw InvalidInput("method must be 'lifting' or 'naive'");
        return zs(count_levels(system(gens, n), p, M, Region::full(n),
                               method == "lifting" ? CountMethod::Lifting : CountMethod::Naive));
      },
      py::arg("gens"), py::arg("n"), py::arg("p"), py::arg("M"), py::arg("method") = "lifting");
  m.def(
      "count_ff",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t p, unsigned k) {
        return count_ff(system(gens, n), p, k).get_str();
      },
      py::arg("gens"), py::arg("n"), py::arg("p"), py::arg("k") = 1);

  m.def(
      "E_counts",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t p, unsigned mm, std::optional<unsigned> r) {
        return q(E_counts(system(gens, n), codim(r, gens), p, mm));
      },
      py::arg("gens"), py::arg("n"), py::arg("p"), py::arg("m"), py::arg("r") = py::none());
  m.def(
      "E_charsum",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t p, unsigned mm, std::optional<unsigned> r) {
        return cyclo(E_charsum(system(gens, n), codim(r, gens), p, mm));
      },
      py::arg("gens"), py::arg("n"), py::arg("p"), py::arg("m"), py::arg("r") = py::none());
  m.def(
      "verify_moidef",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t p, unsigned mm, std::optional<unsigned> r) {
        return verify_moidef(system(gens, n), codim(r, gens), p, mm).holds;
      },
      py::arg("gens"), py::arg("n"), py::arg("p"), py::arg("m"), py::arg("r") = py::none());
  m.def(
      "gauss_sum",
      [](const std::string& f, std::uint64_t p, unsigned mm) {
        return to_complex(phase_histogram(parse_poly(f, 1), p, mm, Region::full(1)));
      },
      py::arg("f"), py::arg("p"), py::arg("m") = 1);

  m.def(
      "zeta_series",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t p, unsigned M) {
        return qs(ord_distribution(system(gens, n), p, M).c);
      },
      py::arg("gens"), py::arg("n"), py::arg("p"), py::arg("M"));
  m.def(
      "rational_reconstruct",
      [](const std::vector<std::string>& coeffs, unsigned max_order) {
        std::vector<Rational> c;
        for (const auto& s : coeffs) c.push_back(parse_rational(s));
        const auto rec = rational_reconstruct(c, max_order);
        py::dict d;
        d["status"] = to_string(rec.status);
        d["order"] = rec.recurrence_order;
        if (rec.func) {
          d["numerator"] = qs(rec.func->numerator);
          d["denominator"] = qs(rec.func->denominator);
        }
        return d;
      },
      py::arg("coeffs"), py::arg("max_order"));
  m.def(
      "compa_check",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t p, unsigned M, std::optional<unsigned> r) {
        return compa_check(system(gens, n), codim(r, gens), p, M).holds;
      },
      py::arg("gens"), py::arg("n"), py::arg("p"), py::arg("M"), py::arg("r") = py::none());
  m.def(
      "theta_probe",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t p, unsigned M, std::optional<unsigned> r) {
        const auto rep = theta_probe(system(gens, n), codim(r, gens), p, M);
        return py::make_tuple(qs(rep.terms), to_string(rep.verdict));
      },
      py::arg("gens"), py::arg("n"), py::arg("p"), py::arg("M"), py::arg("r") = py::none());

  m.def(
      "E_composite",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t qq, std::optional<unsigned> r) {
        return q(E_composite(system(gens, n), codim(r, gens), qq));
      },
      py::arg("gens"), py::arg("n"), py::arg("q"), py::arg("r") = py::none());
  m.def(
      "singular_series",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t Qmax, std::optional<unsigned> r) {
        return q(singular_series_partial(system(gens, n), codim(r, gens), Qmax).total());
      },
      py::arg("gens"), py::arg("n"), py::arg("Qmax"), py::arg("r") = py::none());
  m.def(
      "irreducibility_probe",
      [](const std::vector<std::string>& gens, std::size_t n, const std::vector<std::uint64_t>& primes,
         std::optional<unsigned> r) { return irreducibility_probe(system(gens, n), codim(r, gens), primes).verdict; },
      py::arg("gens"), py::arg("n"), py::arg("primes"), py::arg("r") = py::none());

  m.def(
      "sigma0",
      [](const std::vector<std::string>& gens, std::size_t n, std::optional<std::map<unsigned, int>> s) {
        return q(sigma0(spec(gens, n, std::nullopt), s).value);
      },
      py::arg("gens"), py::arg("n"), py::arg("s") = py::none());
  m.def(
      "sigma_tilde0w",
      [](const std::vector<std::string>& gens, std::size_t n, std::optional<std::vector<unsigned>> w,
         std::optional<std::map<unsigned, int>> s) { return q(sigma_tilde0w(spec(gens, n, w), s).value); },
      py::arg("gens"), py::arg("n"), py::arg("weights") = py::none(), py::arg("s") = py::none());
  m.def(
      "birch_bound", [](long n, long s, long r, unsigned d) { return q(birch_bound(n, s, r, d)); }, py::arg("n"),
      py::arg("s"), py::arg("r"), py::arg("d"));
  m.def(
      "bhb_tau0",
      [](const std::vector<std::tuple<unsigned, long, long>>& groups, long n) {
        std::vector<DegreeGroup> g;
        for (const auto& [d, r, s] : groups) g.push_back({d, r, s});
        return q(bhb_tau0(g, n));
      },
      py::arg("groups"), py::arg("n"));
  m.def(
      "convolution_thresholds",
      [](unsigned long r, unsigned long R, unsigned long D) {
        const auto t = convolution_thresholds(r, R, D);
        py::dict d;
        d["N"] = t.N.get_str();
        d["N_prime"] = t.N_prime.get_str();
        d["affine_N"] = t.affine_N.get_str();
        d["affine_N_prime"] = q(t.affine_N_prime);
        d["chain"] = t.chain.get_str();
        return d;
      },
      py::arg("r"), py::arg("R"), py::arg("D"));

  m.def(
      "count_box_solutions",
      [](const std::vector<std::string>& gens, std::size_t n, std::uint64_t B) {
        return count_box_solutions(system(gens, n), BoxSpec::unit(n), B).get_str();
      },
      py::arg("gens"), py::arg("n"), py::arg("B"));
  m.def(
      "singular_integral",
      [](const std::vector<std::string>& gens, std::size_t n, std::vector<double> eps, std::uint64_t samples,
         std::uint64_t seed, const std::string& sampler) {
        Sampler s;
        s.samples = samples;
        s.seed = seed;
        if (sampler == "grid") {
          s.kind = SamplerKind::Grid;
        } else if (sampler != "mc") {
          throw InvalidInput("sampler must be 'mc' or 'grid'");
        }
        const auto res = singular_integral(system(gens, n), BoxSpec::unit(n), std::move(eps), s);
        py::dict d;
        d["estimates"] = res.estimates;
        d["value"] = res.value;
        d["converged"] = res.converged;
        return d;
      },
      py::arg("gens"), py::arg("n"), py::arg("eps"), py::arg("samples") = Sampler{}.samples,
      py::arg("seed") = Sampler{}.seed, py::arg("sampler") = "mc");
  m.def(
      "waring_surjective",
      [](const std::vector<std::string>& components, std::size_t n, std::uint64_t p, unsigned mm, unsigned l) {
        PolyMap map;
        for (const auto& t : components) map.push_back(parse_poly(t, n));
        return waring_surjectivity({map}, p, mm, l).surjective;
      },
      py::arg("components"), py::arg("n"), py::arg("p"), py::arg("m"), py::arg("l"));
}
