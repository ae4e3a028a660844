#include "jobs.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "iosc/bounds.hpp"
#include "iosc/circle.hpp"
#include "iosc/expsum.hpp"
#include "iosc/ideal.hpp"
#include "iosc/ringcount.hpp"
#include "iosc/runtime.hpp"
#include "iosc/sseries.hpp"
#include "iosc/zeta.hpp"

namespace iosc::cli {

namespace {

// ---- serialization -------------------------------------------------------

std::string q(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }
std::string q(const ExtRational& r) { return r.is_infinite() ? "inf" : q(r.value()); }

json qs(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(q(r));
  return out;
}

json zs(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(z.get_str());
  return out;
}

json cyclo(const CycloValue& v) {
  json out;
  out["order"] = v.order();
  out["residue"] = qs(v.residue());
  if (v.is_rational()) {
    out["rational"] = q(v.residue().empty() ? Rational(0) : v.residue()[0]);
  } else {
    out["rational"] = nullptr;
  }
  const auto c = v.to_complex();
  out["approx"] = {c.real(), c.imag()};
  return out;
}

json svalues(const SValues& s) {
  json out;
  for (const auto& [d, v] : s.s) out[std::to_string(d)] = v;
  return out;
}

// ---- parameter access ------------------------------------------------------

const json& params_of(const json& config) {
  static const json empty = json::object();
  auto it = config.find("params");
  return it == config.end() ? empty : *it;
}

template <class T>
T req(const json& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end() || it->is_null()) throw InvalidInput(std::string("missing parameter '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InvalidInput(std::string("parameter '") + key + "' has the wrong type");
  }
}

template <class T>
T opt(const json& p, const char* key, T fallback) {
  auto it = p.find(key);
  if (it == p.end() || it->is_null()) return fallback;
  return req<T>(p, key);
}

std::uint64_t prime(const json& p, const char* key = "p") {
  const auto v = req<std::uint64_t>(p, key);
  if (!is_prime(v)) throw InvalidInput(std::string("parameter '") + key + "' must be prime");
  return v;
}

// ---- ideals ------------------------------------------------------------------

struct Ideal {
  std::size_t n = 0;
  std::vector<Poly> gens;
  std::optional<Weight> weight;
  json groups;  // null when given as a flat list

  PolySystem system() const { return PolySystem(n, gens); }
  IdealSpec spec() const {
    if (groups.is_null()) return IdealSpec::from_generators(n, gens, weight);
    std::vector<GeneratorGroup> gs;
    std::size_t k = 0;
    for (const auto& g : groups) {
      GeneratorGroup group{g.at("degree").get<unsigned>(), {}};
      for (std::size_t j = 0; j < g.at("gens").size(); ++j) group.gens.push_back(gens[k++]);
      gs.push_back(std::move(group));
    }
    return IdealSpec(n, gs, weight);
  }
};

json load_json_source(const std::string& src) {
  const auto first = src.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && src[first] == '{') return json::parse(src);
    std::ifstream in(src);
    if (!in) throw InvalidInput("cannot read ideal file '" + src + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Ideal parse_ideal(const json& j) {
  if (!j.is_object()) throw InvalidInput("ideal must be a JSON object");
  Ideal out;
  if (!j.contains("n")) throw InvalidInput("ideal needs \"n\"");
  const auto n = j.at("n").get<long>();
  if (n <= 0) throw InvalidInput("ideal needs n >= 1");
  out.n = static_cast<std::size_t>(n);
  if (j.contains("weights")) {
    const auto w = j.at("weights").get<std::vector<unsigned>>();
    if (w.size() != out.n) throw InvalidInput("weights must have n entries");
    out.weight = Weight(w);
  }
  if (j.contains("groups")) {
    out.groups = json::array();
    for (const auto& g : j.at("groups")) {
      json group{{"degree", g.at("degree").get<unsigned>()}, {"gens", json::array()}};
      for (const auto& t : g.at("gens")) {
        out.gens.push_back(parse_poly(t.get<std::string>(), out.n));
        group["gens"].push_back(out.gens.back().to_string());
      }
      out.groups.push_back(group);
    }
  } else if (j.contains("gens")) {
    for (const auto& t : j.at("gens")) out.gens.push_back(parse_poly(t.get<std::string>(), out.n));
  } else {
    throw InvalidInput("ideal needs \"groups\" or \"gens\"");
  }
  return out;
}

json canonical(const Ideal& ideal) {
  json out{{"n", ideal.n}};
  if (ideal.groups.is_null()) {
    json g = json::array();
    for (const auto& f : ideal.gens) g.push_back(f.to_string());
    out["gens"] = g;
  } else {
    out["groups"] = ideal.groups;
  }
  if (ideal.weight) {
    std::vector<unsigned> w;
    for (std::size_t i = 0; i < ideal.n; ++i) w.push_back((*ideal.weight)[i]);
    out["weights"] = w;
  }
  return out;
}

Ideal ideal_of(const json& config) {
  auto it = config.find("ideal");
  if (it == config.end() || it->is_null()) throw InvalidInput("this command needs --ideal or --gens");
  try {
    return parse_ideal(*it);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed ideal: ") + e.what());
  }
}

unsigned r_of(const json& p, const Ideal& ideal) {
  return opt<unsigned>(p, "r", static_cast<unsigned>(ideal.gens.size()));
}

// ---- shared parsers ------------------------------------------------------------

BoxSpec box_of(const json& p, std::size_t n) {
  auto it = p.find("box");
  if (it == p.end() || it->is_null()) return BoxSpec::unit(n);
  std::vector<std::pair<Rational, Rational>> sides;
  for (const auto& side : *it) {
    if (side.size() != 2) throw InvalidInput("box sides are [lo, hi] pairs");
    sides.emplace_back(parse_rational(side[0].get<std::string>()), parse_rational(side[1].get<std::string>()));
  }
  if (sides.size() != n) throw InvalidInput("box needs one side per variable");
  return BoxSpec(sides);
}

Sampler sampler_of(const json& p) {
  Sampler s;
  const auto kind = opt<std::string>(p, "sampler", "mc");
  if (kind == "grid") {
    s.kind = SamplerKind::Grid;
  } else if (kind != "mc") {
    throw InvalidInput("sampler must be 'mc' or 'grid'");
  }
  s.seed = opt<std::uint64_t>(p, "seed", s.seed);
  s.samples = opt<std::uint64_t>(p, "samples", s.samples);
  return s;
}

std::vector<double> eps_of(const json& p) { return opt<std::vector<double>>(p, "eps", {0.04, 0.02, 0.01}); }

std::optional<std::map<unsigned, int>> s_of(const json& p) {
  auto it = p.find("s");
  if (it == p.end() || it->is_null()) return std::nullopt;
  std::map<unsigned, int> s;
  for (const auto& [k, v] : it->items()) s[static_cast<unsigned>(std::stoul(k))] = v.get<int>();
  return s;
}

json integral_json(const SingularIntegral& si) {
  return {{"eps", si.eps},         {"estimates", si.estimates}, {"value", si.value},
          {"converged", si.converged}, {"sampler", si.sampler},   {"samples", si.samples},
          {"seed", si.seed}};
}

json bound_json(const BoundResult& b) {
  json per;
  for (const auto& [d, v] : b.per_degree) per[std::to_string(d)] = q(v);
  return {{"value", q(b.value)}, {"per_degree", per}, {"s", svalues(b.s)}, {"s_injected", b.s.injected}};
}

// ---- commands ------------------------------------------------------------------

json cmd_expsum(const json& c, bool fault) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  const auto sys = ideal.system();
  const unsigned r = r_of(p, ideal);
  const auto pr = prime(p);
  const auto m = req<unsigned>(p, "m");
  Rational counts = E_counts(sys, r, pr, m);
  json out{{"E_counts", q(counts)}};
  if (opt<bool>(p, "verify", false)) {
    const auto method = opt<std::string>(p, "method", "grouped");
    if (method != "grouped" && method != "pairing") throw InvalidInput("method must be 'grouped' or 'pairing'");
    const auto cs = E_charsum(sys, r, pr, m, method == "grouped" ? CharsumMethod::Grouped : CharsumMethod::Pairing);
    if (fault) counts += 1;
    const bool holds = equals_rational(cs, counts);
    if (!holds) {
      throw Inconsistency("E_counts " + q(counts) + " disagrees with the character sum " + cs.to_string());
    }
    out["E_charsum"] = cyclo(cs);
    out["verify_moidef"] = holds;
  }
  return out;
}

json cmd_count(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  const auto sys = ideal.system();
  const auto pr = prime(p);
  json out;
  if (p.contains("ff")) {
    const auto k = req<unsigned>(p, "ff");
    out["q"] = to_integer(pr).get_str() + "^" + std::to_string(k);
    out["count"] = count_ff(sys, pr, k).get_str();
    return out;
  }
  const auto M = req<unsigned>(p, "m");
  const auto method = opt<std::string>(p, "method", "lifting");
  if (method != "lifting" && method != "naive") throw InvalidInput("method must be 'lifting' or 'naive'");
  const Region region = Region::uniform(ideal.n, parse_block_mode(opt<std::string>(p, "region", "full")));
  out["counts"] = zs(count_levels(sys, pr, M, region,
                                  method == "lifting" ? CountMethod::Lifting : CountMethod::Naive));
  if (opt<bool>(p, "dim", false)) {
    const auto est = dim_estimate(sys, default_dim_primes(ideal.n, 3, runtime::budget()));
    json samples = json::array();
    for (const auto& s : est.samples) samples.push_back({{"q", s.q}, {"count", s.count.get_str()}});
    out["dim"] = {{"estimate", est.dim}, {"confident", est.confident}, {"samples", samples}};
  }
  return out;
}

json reconstruction_json(const Reconstruction& rec, const Rational& pole) {
  json out{{"status", to_string(rec.status)}, {"recurrence_order", rec.recurrence_order}};
  if (rec.func) {
    out["numerator"] = qs(rec.func->numerator);
    out["denominator"] = qs(rec.func->denominator);
    out["pole_multiplicity"] = root_multiplicity(rec.func->denominator, pole);
  }
  return out;
}

json cmd_zeta(const json& c, bool fault) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  const auto sys = ideal.system();
  const unsigned r = r_of(p, ideal);
  const auto pr = prime(p);
  const auto M = req<unsigned>(p, "max_order");
  const auto d = ord_distribution(sys, pr, M);
  json out{{"series", qs(d.c)}, {"tail", q(d.tail)}};
  if (opt<bool>(p, "reconstruct", false)) {
    const unsigned max_order = opt<unsigned>(p, "max_rec_order", static_cast<unsigned>(d.c.size() / 2));
    out["reconstruction"] = reconstruction_json(rational_reconstruct(d.c, max_order),
                                                Rational(ipow(to_integer(pr), r)));
  }
  if (opt<bool>(p, "compa", false)) {
    auto rep = compa_check(sys, r, pr, M);
    if (fault) rep.holds = !rep.holds;
    if (!rep.holds) throw Inconsistency("zeta series and exponential sums disagree");
    out["compa"] = {{"holds", rep.holds}, {"lhs", qs(rep.lhs.coeffs)}, {"rhs", qs(rep.rhs.coeffs)}};
  }
  return out;
}

json cmd_theta(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  const auto rep = theta_probe(ideal.system(), r_of(p, ideal), prime(p), req<unsigned>(p, "max_order"));
  return {{"terms", qs(rep.terms)}, {"partial_sums", qs(rep.partial_sums)}, {"verdict", to_string(rep.verdict)}};
}

json cmd_sseries(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  std::optional<double> sigma;
  if (p.contains("sigma") && !p["sigma"].is_null()) sigma = p["sigma"].get<double>();
  const auto rep = singular_series_partial(ideal.system(), r_of(p, ideal), req<std::uint64_t>(p, "qmax"), sigma,
                                           opt<double>(p, "c", 1.0));
  json terms = json::array();
  for (const auto& t : rep.terms) {
    terms.push_back({{"q", t.q}, {"E", q(t.value)}, {"weighted", q(t.weighted)}, {"source", t.source}});
  }
  json out{{"terms", terms}, {"total", q(rep.total())}};
  out["tail_bound"] = rep.tail_bound ? json(*rep.tail_bound) : json(nullptr);
  return out;
}

json cmd_irreducible(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  const auto primes = opt<std::vector<std::uint64_t>>(p, "primes", {3, 5, 7, 11, 13});
  const auto rep = irreducibility_probe(ideal.system(), r_of(p, ideal), primes);
  return {{"primes", rep.primes}, {"values", qs(rep.values)}, {"verdict", rep.verdict}};
}

json cmd_sigma0(const json& c, bool) { return bound_json(sigma0(ideal_of(c).spec(), s_of(params_of(c)))); }
json cmd_sigmaw(const json& c, bool) { return bound_json(sigma_tilde0w(ideal_of(c).spec(), s_of(params_of(c)))); }

json cmd_birch(const json& c, bool) {
  const auto& p = params_of(c);
  return {{"value", q(birch_bound(req<long>(p, "n"), req<long>(p, "s"), req<long>(p, "r"), req<unsigned>(p, "d")))}};
}

json cmd_tau0(const json& c, bool) {
  const auto& p = params_of(c);
  std::vector<DegreeGroup> groups;
  for (const auto& g : req<json>(p, "groups")) {
    groups.push_back({g.at("d").get<unsigned>(), g.at("r").get<long>(), g.at("s").get<long>()});
  }
  return {{"value", q(bhb_tau0(groups, req<long>(p, "n")))}};
}

json cmd_thresholds(const json& c, bool) {
  const auto& p = params_of(c);
  const auto t = convolution_thresholds(req<unsigned long>(p, "r"), req<unsigned long>(p, "R"),
                                        req<unsigned long>(p, "D"));
  return {{"N", t.N.get_str()},
          {"N_prime", t.N_prime.get_str()},
          {"affine_N", t.affine_N.get_str()},
          {"affine_N_prime", q(t.affine_N_prime)},
          {"chain", t.chain.get_str()}};
}

json cmd_moi_fit(const json& c, bool) {
  const auto& p = params_of(c);
  std::vector<FitPoint> data;
  if (p.contains("data")) {
    for (const auto& pt : p["data"]) {
      data.push_back({pt.at("p").get<std::uint64_t>(), pt.at("m").get<unsigned>(), pt.at("value").get<double>()});
    }
  } else {
    const Ideal ideal = ideal_of(c);
    const auto sys = ideal.system();
    const unsigned r = r_of(p, ideal);
    const auto M = req<unsigned>(p, "max_m");
    for (auto pr : req<std::vector<std::uint64_t>>(p, "primes")) {
      const auto E = E_values(sys, r, pr, M);
      for (unsigned m = 1; m <= M; ++m) data.push_back({pr, m, std::abs(to_double(E[m]))});
    }
  }
  std::optional<double> s0;
  if (p.contains("sigma0") && !p["sigma0"].is_null()) s0 = p["sigma0"].get<double>();
  const auto fit = moi_fit(data, opt<unsigned>(p, "m_min", 2), s0);
  json per = json::array();
  for (const auto& f : fit.per_prime) {
    per.push_back({{"p", f.p}, {"slope", f.slope}, {"intercept", f.intercept}, {"points", f.points},
                   {"max_residual", f.max_residual}});
  }
  json zeros = json::array();
  for (const auto& z : fit.excluded_zero) zeros.push_back({{"p", z.p}, {"m", z.m}});
  json m1 = json::array();
  for (const auto& [pr, v] : fit.m1_scaled) m1.push_back({{"p", pr}, {"scaled", v}});
  return {{"sigma", fit.sigma},
          {"per_prime", per},
          {"excluded_zero", zeros},
          {"insufficient_primes", fit.insufficient_primes},
          {"m1_scaled", m1}};
}

json cmd_box_count(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  return {{"count", count_box_solutions(ideal.system(), box_of(p, ideal.n), req<std::uint64_t>(p, "B")).get_str()}};
}

json cmd_jintegral(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  return integral_json(singular_integral(ideal.system(), box_of(p, ideal.n), eps_of(p), sampler_of(p)));
}

json cmd_predict(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  const auto rep = major_arc_prediction(ideal.system(), box_of(p, ideal.n), req<std::uint64_t>(p, "B"),
                                        req<std::uint64_t>(p, "qmax"), eps_of(p), sampler_of(p));
  return {{"series", q(rep.series)},       {"integral", integral_json(rep.integral)},
          {"prediction", rep.prediction},  {"actual", rep.actual.get_str()},
          {"ratio", rep.ratio},            {"degenerate", rep.degenerate},
          {"degree_sum", rep.degree_sum}};
}

json cmd_waring(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  const auto rep = waring_surjectivity({ideal.gens}, prime(p), req<unsigned>(p, "m"), req<unsigned>(p, "l"),
                                       opt<std::size_t>(p, "max_missing", 64));
  return {{"surjective", rep.surjective},
          {"missing_count", rep.missing_count},
          {"missing", rep.missing},
          {"image_sizes", rep.image_sizes}};
}

json cmd_jet_expand(const json& c, bool) {
  const auto& p = params_of(c);
  const Ideal ideal = ideal_of(c);
  const auto m = req<unsigned>(p, "m");
  const auto start_v = opt<unsigned>(p, "start", 0);
  if (start_v > 1) throw InvalidInput("start must be 0 or 1");
  const auto start = start_v ? JetStart::One : JetStart::Zero;
  std::vector<std::string> names(ideal.n * (m + 1 - start_v));
  for (std::size_t i = 0; i < ideal.n; ++i) {
    for (unsigned j = start_v; j <= m; ++j) {
      names[jet_variable(i, j, m, start)] = "x" + std::to_string(i + 1) + "_" + std::to_string(j);
    }
  }
  json out = json::array();
  for (const auto& f : ideal.gens) {
    json coeffs = json::array();
    for (const auto& F : jet_expand(f, m, start)) coeffs.push_back(F.to_string(names));
    out.push_back(coeffs);
  }
  return {{"variables", names}, {"coefficients", out}};
}

json cmd_highpart(const json& c, bool) {
  const auto& p = params_of(c);
  const auto rep = highpart_check(ideal_of(c).spec(), req<unsigned>(p, "m"));
  json cases = json::array();
  for (const auto& cs : rep.cases) cases.push_back({{"degree", cs.degree}, {"holds", cs.holds}});
  return {{"holds", rep.holds()}, {"max_degree", rep.max_degree}, {"cases", cases}};
}

using Handler = std::function<json(const json&, bool)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"expsum", cmd_expsum},
      {"count", cmd_count},
      {"zeta", cmd_zeta},
      {"zeta theta", cmd_theta},
      {"sseries", cmd_sseries},
      {"sseries irreducible", cmd_irreducible},
      {"bounds sigma0", cmd_sigma0},
      {"bounds sigmaw", cmd_sigmaw},
      {"bounds birch", cmd_birch},
      {"bounds tau0", cmd_tau0},
      {"bounds thresholds", cmd_thresholds},
      {"bounds moi-fit", cmd_moi_fit},
      {"circle count", cmd_box_count},
      {"circle jintegral", cmd_jintegral},
      {"circle predict", cmd_predict},
      {"circle waring", cmd_waring},
      {"jet expand", cmd_jet_expand},
      {"jet highpart-check", cmd_highpart},
  };
  return table;
}

void flatten(const json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

void resolve_ideal(json& config) {
  auto it = config.find("ideal");
  if (it == config.end() || it->is_null()) return;
  json raw = it->is_string() ? load_json_source(it->get<std::string>()) : *it;
  try {
    *it = canonical(parse_ideal(raw));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed ideal: ") + e.what());
  }
}

json run_job(const json& config, bool fault_inject) {
  const auto cmd = config.value("command", std::string());
  auto it = handlers().find(cmd);
  if (it == handlers().end()) throw InvalidInput("unknown command '" + cmd + "'");
  try {
    return it->second(config, fault_inject);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed parameters: ") + e.what());
  }
}

std::string to_csv(const json& payload) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(payload, "", os);
  return os.str();
}

}  // namespace iosc::cli
