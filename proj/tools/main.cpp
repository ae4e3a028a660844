// iosc: command-line front end. Every report echoes its resolved config,
// which `iosc run --config` accepts back.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>

#include "CLI11.hpp"
#include "iosc/runtime.hpp"
#include "jobs.hpp"

using iosc::cli::json;

namespace {

struct Command {
  std::string name;
  json params = json::object();
  bool uses_ideal = false;
  std::string ideal_src;
  std::string gens;
  std::size_t nvars = 0;
  std::vector<unsigned> weights;
};

template <class T>
CLI::Option* param(CLI::App* app, Command& cmd, const std::string& flags, const std::string& key,
                   const std::string& help) {
  return app->add_option_function<T>(flags, [&cmd, key](const T& v) { cmd.params[key] = v; }, help);
}

void flag(CLI::App* app, Command& cmd, const std::string& flags, const std::string& key, const std::string& help) {
  app->add_flag_callback(flags, [&cmd, key] { cmd.params[key] = true; }, help);
}

void ideal_options(CLI::App* app, Command& cmd) {
  cmd.uses_ideal = true;
  app->add_option("--ideal", cmd.ideal_src, "Ideal as a JSON file or inline JSON");
  app->add_option("--gens", cmd.gens, "Generators separated by ';'");
  app->add_option("-n,--nvars", cmd.nvars, "Number of variables for --gens (default: highest xk)");
  app->add_option("--weights", cmd.weights, "Variable weights for --gens")->delimiter(',');
}

json ideal_from_gens(const Command& cmd) {
  json gens = json::array();
  std::size_t n = cmd.nvars;
  std::size_t start = 0;
  const std::string& s = cmd.gens;
  while (start <= s.size()) {
    const auto end = std::min(s.find(';', start), s.size());
    const auto piece = s.substr(start, end - start);
    if (piece.find_first_not_of(" \t") != std::string::npos) gens.push_back(piece);
    start = end + 1;
  }
  if (n == 0) {
    static const std::regex var("x([0-9]+)");
    for (std::sregex_iterator it(s.begin(), s.end(), var), last; it != last; ++it) {
      n = std::max<std::size_t>(n, std::stoul((*it)[1].str()));
    }
    n = std::max<std::size_t>(n, 1);
  }
  json out{{"n", n}, {"gens", gens}};
  if (!cmd.weights.empty()) out["weights"] = cmd.weights;
  return out;
}

std::uint64_t resolve_budget(const std::optional<std::uint64_t>& flag_value) {
  if (flag_value) return *flag_value;
  if (const char* env = std::getenv("IOSC_BUDGET")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
      return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      throw iosc::InvalidInput(std::string("IOSC_BUDGET must be a positive number, got '") + env + "'");
    }
  }
  return iosc::runtime::kDefaultBudget;
}

int emit(const json& config, bool fault) {
  iosc::runtime::set_budget(config.at("budget").get<std::uint64_t>());
  iosc::runtime::set_threads(config.at("threads").get<unsigned>());
  const json result = iosc::cli::run_job(config, fault);
  const json report{{"config", config}, {"result", result}};
  if (config.value("format", std::string("json")) == "csv") {
    std::cout << iosc::cli::to_csv(report);
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact exponential sums and local densities over polynomial ideals"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  unsigned threads = 1;
  std::optional<std::uint64_t> budget;
  bool force = false, fault = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--budget", budget, "Evaluation-point budget (overrides IOSC_BUDGET)");
  app.add_flag("--force", force, "Ignore the point budget");
  app.add_flag("--fault-inject", fault)->group("");

  std::vector<std::unique_ptr<Command>> commands;
  std::map<CLI::App*, Command*> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& help) {
    commands.push_back(std::make_unique<Command>());
    commands.back()->name = full;
    auto* sub = parent->add_subcommand(name, help);
    leaves[sub] = commands.back().get();
    return std::pair<CLI::App*, Command&>(sub, *commands.back());
  };

  {
    auto [a, c] = leaf(&app, "expsum", "expsum", "Exponential sum E(p^m) from counts, optionally checked");
    ideal_options(a, c);
    param<std::uint64_t>(a, c, "-p,--prime", "p", "Prime");
    param<unsigned>(a, c, "-m", "m", "Exponent m");
    param<unsigned>(a, c, "-r", "r", "Codimension r (default: number of generators)");
    flag(a, c, "--verify", "verify", "Compare with the character sum");
    param<std::string>(a, c, "--method", "method", "grouped or pairing");
  }
  {
    auto [a, c] = leaf(&app, "count", "count", "Point counts modulo p^m or over F_{p^k}");
    ideal_options(a, c);
    param<std::uint64_t>(a, c, "-p,--prime", "p", "Prime");
    param<unsigned>(a, c, "-m", "m", "Highest level M");
    param<unsigned>(a, c, "--ff", "ff", "Count over F_{p^k} instead");
    param<std::string>(a, c, "--method", "method", "lifting or naive");
    param<std::string>(a, c, "--region", "region", "full, primitive, zero or unit");
    flag(a, c, "--dim", "dim", "Also estimate the dimension");
  }
  auto* zeta = app.add_subcommand("zeta", "Valuation series and its rational form");
  {
    auto [a, c] = leaf(zeta, "theta", "zeta theta", "Terms E(p^m) p^{rm} and a verdict");
    ideal_options(a, c);
    param<std::uint64_t>(a, c, "-p,--prime", "p", "Prime");
    param<unsigned>(a, c, "-M,--max-order", "max_order", "Highest m");
    param<unsigned>(a, c, "-r", "r", "Codimension r");
  }
  {
    commands.push_back(std::make_unique<Command>());
    Command& c = *commands.back();
    c.name = "zeta";
    leaves[zeta] = &c;
    ideal_options(zeta, c);
    param<std::uint64_t>(zeta, c, "-p,--prime", "p", "Prime");
    param<unsigned>(zeta, c, "--max-order", "max_order", "Series order M");
    param<unsigned>(zeta, c, "-r", "r", "Codimension r");
    flag(zeta, c, "--reconstruct", "reconstruct", "Fit a rational function");
    param<unsigned>(zeta, c, "--max-rec-order", "max_rec_order", "Largest recurrence order");
    flag(zeta, c, "--compa", "compa", "Check the series identity with exponential sums");
  }
  auto* sseries = app.add_subcommand("sseries", "Partial singular series");
  {
    auto [a, c] = leaf(sseries, "irreducible", "sseries irreducible", "Irreducibility probe from E(p)");
    ideal_options(a, c);
    param<unsigned>(a, c, "-r", "r", "Codimension r");
    param<std::vector<std::uint64_t>>(a, c, "--primes", "primes", "Primes")->delimiter(',');
  }
  {
    commands.push_back(std::make_unique<Command>());
    Command& c = *commands.back();
    c.name = "sseries";
    leaves[sseries] = &c;
    ideal_options(sseries, c);
    param<unsigned>(sseries, c, "-r", "r", "Codimension r");
    param<std::uint64_t>(sseries, c, "--qmax", "qmax", "Largest modulus");
    param<double>(sseries, c, "--sigma", "sigma", "Decay exponent for the tail bound");
    param<double>(sseries, c, "-c", "c", "Constant of the decay bound");
  }
  auto* bounds = app.add_subcommand("bounds", "Exponents and thresholds");
  bounds->require_subcommand(1);
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"sigma0", "min over degrees of (n - s_l) / l"}, {"sigmaw", "min over groups of (n - s) / (2(d - 1))"}}) {
    auto [a, c] = leaf(bounds, name, "bounds " + name, help);
    ideal_options(a, c);
    a->add_option_function<std::vector<std::string>>(
         "--s",
         [&c = c](const std::vector<std::string>& items) {
           json s = json::object();
           for (const auto& item : items) {
             const auto colon = item.find(':');
             if (colon == std::string::npos) throw CLI::ValidationError("--s", "entries look like degree:s");
             s[item.substr(0, colon)] = std::stoi(item.substr(colon + 1));
           }
           c.params["s"] = s;
         },
         "Injected s values, e.g. 1:-1,2:0")
        ->delimiter(',');
  }
  {
    auto [a, c] = leaf(bounds, "birch", "bounds birch", "(n - s) / (r (d - 1) 2^{d-1})");
    param<long>(a, c, "-n", "n", "Variables");
    param<long>(a, c, "-s", "s", "Singular locus dimension");
    param<long>(a, c, "-r", "r", "Forms");
    param<unsigned>(a, c, "-d", "d", "Degree");
  }
  {
    auto [a, c] = leaf(bounds, "tau0", "bounds tau0", "Exponent for several degree groups");
    param<long>(a, c, "-n", "n", "Variables");
    a->add_option_function<std::vector<std::string>>(
         "--groups",
         [&c = c](const std::vector<std::string>& items) {
           json g = json::array();
           for (const auto& item : items) {
             unsigned d = 0;
             long r = 0, s = 0;
             if (std::sscanf(item.c_str(), "%u:%ld:%ld", &d, &r, &s) != 3) {
               throw CLI::ValidationError("--groups", "entries look like d:r:s");
             }
             g.push_back({{"d", d}, {"r", r}, {"s", s}});
           }
           c.params["groups"] = g;
         },
         "Groups d:r:s separated by ','")
        ->delimiter(',');
  }
  {
    auto [a, c] = leaf(bounds, "thresholds", "bounds thresholds", "Convolution thresholds");
    param<unsigned long>(a, c, "-r", "r", "Target dimension r");
    param<unsigned long>(a, c, "-R", "R", "Chain length R");
    param<unsigned long>(a, c, "-D", "D", "Degree D");
  }
  {
    auto [a, c] = leaf(bounds, "moi-fit", "bounds moi-fit", "Fit the decay exponent of |E(p^m)|");
    ideal_options(a, c);
    param<unsigned>(a, c, "-r", "r", "Codimension r");
    param<std::vector<std::uint64_t>>(a, c, "--primes", "primes", "Primes")->delimiter(',');
    param<unsigned>(a, c, "--max-m", "max_m", "Highest m");
    param<unsigned>(a, c, "--m-min", "m_min", "Smallest m in the fit");
    param<double>(a, c, "--sigma0", "sigma0", "Report |E(p)| p^{sigma0}");
    a->add_option_function<std::string>(
        "--data",
        [&c = c](const std::string& path) {
          std::ifstream in(path);
          if (!in) throw CLI::ValidationError("--data", "cannot read " + path);
          c.params["data"] = json::parse(in);
        },
        "JSON list of {p, m, value} instead of computing E");
  }
  auto* circle = app.add_subcommand("circle", "Box counts and major arcs");
  circle->require_subcommand(1);
  auto box_options = [](CLI::App* a, Command& c) {
    a->add_option_function<std::vector<std::string>>(
         "--box",
         [&c](const std::vector<std::string>& items) {
           json box = json::array();
           for (const auto& item : items) {
             const auto colon = item.find(':');
             if (colon == std::string::npos) throw CLI::ValidationError("--box", "sides look like lo:hi");
             box.push_back({item.substr(0, colon), item.substr(colon + 1)});
           }
           c.params["box"] = box;
         },
         "Sides lo:hi per variable (default [-1,1]^n)")
        ->delimiter(',');
  };
  auto sampler_options = [](CLI::App* a, Command& c) {
    param<std::vector<double>>(a, c, "--eps", "eps", "Decreasing eps ladder")->delimiter(',');
    param<std::string>(a, c, "--sampler", "sampler", "mc or grid");
    param<std::uint64_t>(a, c, "--samples", "samples", "Sample count");
    param<std::uint64_t>(a, c, "--seed", "seed", "Sampler seed");
  };
  {
    auto [a, c] = leaf(circle, "count", "circle count", "Integer solutions in B times a box");
    ideal_options(a, c);
    param<std::uint64_t>(a, c, "-B", "B", "Scale");
    box_options(a, c);
  }
  {
    auto [a, c] = leaf(circle, "jintegral", "circle jintegral", "Singular integral");
    ideal_options(a, c);
    box_options(a, c);
    sampler_options(a, c);
  }
  {
    auto [a, c] = leaf(circle, "predict", "circle predict", "Major-arc prediction against the count");
    ideal_options(a, c);
    param<std::uint64_t>(a, c, "-B", "B", "Scale");
    param<std::uint64_t>(a, c, "--qmax", "qmax", "Largest modulus in the series");
    box_options(a, c);
    sampler_options(a, c);
  }
  {
    auto [a, c] = leaf(circle, "waring", "circle waring", "Is (Z/p^m)^r the l-fold sum of the image?");
    ideal_options(a, c);
    param<std::uint64_t>(a, c, "-p,--prime", "p", "Prime");
    param<unsigned>(a, c, "-m", "m", "Exponent m");
    param<unsigned>(a, c, "-l", "l", "Number of summands");
    param<std::size_t>(a, c, "--max-missing", "max_missing", "Missing tuples to list");
  }
  auto* jet = app.add_subcommand("jet", "Jet schemes");
  jet->require_subcommand(1);
  {
    auto [a, c] = leaf(jet, "expand", "jet expand", "Coefficients of f(x(t)) mod t^{m+1}");
    ideal_options(a, c);
    param<unsigned>(a, c, "-m", "m", "Jet order");
    param<unsigned>(a, c, "--start", "start", "First jet index (0 or 1)");
  }
  {
    auto [a, c] = leaf(jet, "highpart-check", "jet highpart-check", "Top weighted parts of jet coefficients");
    ideal_options(a, c);
    param<unsigned>(a, c, "-m", "m", "Jet order");
  }
  std::string config_path;
  auto* run = app.add_subcommand("run", "Re-run the config block of a report");
  run->add_option("--config", config_path, "Report or config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (force) {
      std::cerr << "warning: --force ignores the point budget\n";
      iosc::runtime::set_force(true);
    }
    if (run->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw iosc::InvalidInput("cannot read " + config_path);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw iosc::InvalidInput(std::string("malformed config: ") + e.what());
      }
      json config = doc.contains("config") ? doc["config"] : doc;
      if (!config.contains("budget")) config["budget"] = resolve_budget(budget);
      if (!config.contains("threads")) config["threads"] = threads;
      if (!config.contains("format")) config["format"] = format;
      iosc::cli::resolve_ideal(config);
      return emit(config, fault);
    }
    CLI::App* sel = &app;
    while (!sel->get_subcommands().empty()) sel = sel->get_subcommands().front();
    auto it = leaves.find(sel);
    if (it == leaves.end()) throw iosc::InvalidInput("incomplete command");
    const Command& cmd = *it->second;
    json config{{"command", cmd.name}};
    if (cmd.uses_ideal) {
      if (!cmd.ideal_src.empty() && !cmd.gens.empty()) throw iosc::InvalidInput("use either --ideal or --gens");
      if (!cmd.ideal_src.empty()) {
        config["ideal"] = cmd.ideal_src;
      } else if (!cmd.gens.empty()) {
        config["ideal"] = ideal_from_gens(cmd);
      }
      iosc::cli::resolve_ideal(config);
    }
    config["params"] = cmd.params;
    config["budget"] = resolve_budget(budget);
    config["threads"] = threads;
    config["format"] = format;
    return emit(config, fault);
  } catch (const iosc::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const iosc::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise IOSC_BUDGET or pass --force)\n";
    return 3;
  } catch (const iosc::Inconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
