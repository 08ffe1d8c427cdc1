// Command-line front end: simulations, bound tables, label-polytope
// computations, and the stopping-time dual certificate, with reproducible
// seeds and machine-readable output (text, json, csv).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumcode/achievable_code.hpp"
#include "sumcode/converse_toolkit.hpp"
#include "sumcode/core_model.hpp"
#include "sumcode/errors.hpp"
#include "sumcode/polytope.hpp"
#include "sumcode/stopping_analysis.hpp"
#include "sumcode/version.hpp"

namespace {

using nlohmann::json;
using namespace sumcode;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  int k = 4;
  std::vector<int> k_list;
  double eps = 0.05;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  int alphabet = 2;
  int x = 0;
  int y = 0;
  double c = 0.1;
  int u = 2;
  double lambda = 0.0;
  bool lambda_set = false;
  double hn_slack = 0.0;
  std::string input;
  std::string format = "text";
  bool exact = false;
  bool enumerate = false;
  bool exhaustive = false;
  bool k_set = false;
};

void emit_json(const std::string& command, const json& config, const json& results) {
  json out;
  out["command"] = command;
  out["config"] = config;
  out["results"] = results;
  out["version"] = kVersion;
  std::cout << out.dump(2) << "\n";
}

[[noreturn]] void reject_csv(const std::string& command) {
  throw CLI::ValidationError("--format csv is only meaningful for sweep/trace output "
                             "(simulate --k-list, dual); not for '" +
                             command + "'");
}

json rational_strings(const std::vector<Rational>& masses, long long common_den) {
  json arr = json::array();
  for (const Rational& r : masses) arr.push_back(to_fraction_string(r, common_den));
  return arr;
}

json rational_floats(const std::vector<Rational>& masses) {
  json arr = json::array();
  for (const Rational& r : masses) arr.push_back(to_double(r));
  return arr;
}

int run_verify(const Options& opt) {
  const TypicalityParams params = TypicalityParams::make(opt.k, opt.eps);
  const ZeroErrorReport report = verify_zero_error(opt.k, params);
  if (opt.format == "json") {
    json config{{"k", opt.k}, {"eps", opt.eps}};
    json results;
    results["pass"] = report.pass;
    results["tuples"] = report.tuples_checked;
    results["injectivity"] = report.injectivity_ok;
    if (report.counterexample) {
      json ce = json::array();
      for (const MessageVector& v : *report.counterexample) {
        std::string bits;
        for (Bit b : v.bits) bits.push_back(b ? '1' : '0');
        ce.push_back(bits);
      }
      results["counterexample"] = ce;
    } else {
      results["counterexample"] = nullptr;
    }
    emit_json("verify", config, results);
  } else if (opt.format == "text") {
    std::cout << "zero-error: " << (report.pass ? "PASS" : "FAIL") << " ("
              << report.tuples_checked << " tuples)\n";
    std::cout << "per-edge injectivity for fixed x3: "
              << (report.injectivity_ok ? "PASS" : "FAIL") << "\n";
  } else {
    reject_csv("verify");
  }
  return report.pass ? kExitOk : kExitVerificationFailure;
}

json simulate_row(int k, const Options& opt) {
  const TypicalityParams params = TypicalityParams::make(k, opt.eps);
  StoppingEvalMode mode;
  if (opt.exact)
    mode = ExactMode{};
  else
    mode = MonteCarloMode{opt.trials, opt.seed};
  const StoppingTimeEstimate est = expected_stopping_time(k, params, mode);
  json row;
  row["k"] = k;
  row["eps"] = opt.eps;
  row["mode"] = opt.exact ? "exact" : "monte_carlo";
  row["trials"] = opt.exact ? 0 : opt.trials;
  row["seed"] = opt.seed;
  row["expected_n"] = est.expected_n;
  row["rate"] = est.rate;
  row["pr_edge_typical"] = est.pr_edge_typical;
  row["pr_both_typical"] = est.pr_both_typical;
  row["typical_code_len"] = params.typical_code_len;
  row["atypical_code_len"] = params.atypical_code_len;
  return row;
}

int run_simulate(const Options& opt) {
  std::vector<int> ks = opt.k_list;
  if (ks.empty()) ks.push_back(opt.k);
  std::vector<json> rows;
  rows.reserve(ks.size());
  for (int k : ks) rows.push_back(simulate_row(k, opt));

  if (opt.format == "json") {
    json config{{"k_list", ks},   {"eps", opt.eps},   {"trials", opt.trials},
                {"seed", opt.seed}, {"exact", opt.exact}};
    json results = json::array();
    for (const json& row : rows) results.push_back(row);
    emit_json("simulate", config, results);
  } else if (opt.format == "csv") {
    std::cout << "k,eps,mode,trials,seed,expected_n,rate,pr_both_typical\n";
    for (const json& row : rows) {
      std::cout << row["k"] << "," << row["eps"] << "," << row["mode"].get<std::string>()
                << "," << row["trials"] << "," << row["seed"] << ","
                << row["expected_n"] << "," << row["rate"] << ","
                << row["pr_both_typical"] << "\n";
    }
  } else {
    for (const json& row : rows) {
      std::cout << "k=" << row["k"] << " eps=" << row["eps"]
                << " mode=" << row["mode"].get<std::string>()
                << " E[N]=" << row["expected_n"] << " rate=" << row["rate"]
                << " Pr(both typical)=" << row["pr_both_typical"] << "\n";
    }
  }
  return kExitOk;
}

int run_bounds(const Options& opt) {
  const CapacityBounds b = capacity_bounds(opt.alphabet, opt.hn_slack);
  if (opt.format == "json") {
    json config{{"alphabet", opt.alphabet}, {"hn_slack", opt.hn_slack}};
    json results;
    results["lower"] = b.lower ? json(*b.lower) : json(nullptr);
    results["upper"] = b.upper;
    emit_json("bounds", config, results);
  } else if (opt.format == "text") {
    std::cout << std::fixed << std::setprecision(4);
    if (b.lower)
      std::cout << "achievable rate (lower bound): " << *b.lower << "\n";
    else
      std::cout << "achievable rate (lower bound): n/a for this alphabet\n";
    std::cout << "capacity upper bound: " << b.upper << "\n";
  } else {
    reject_csv("bounds");
  }
  return kExitOk;
}

int run_clumpy(const Options& opt) {
  const SumClassConstants consts = sum_class_constants(opt.x, opt.y);
  const ClumpyDistribution dist = clumpy_distribution(opt.x, opt.y);
  const double entropy = clumpy_entropy(opt.x, opt.y);
  const double closed = clumpy_entropy_closed_lower_bound(opt.x, opt.y);
  if (opt.format == "json") {
    json config{{"x", opt.x}, {"y", opt.y}};
    json results;
    results["L"] = consts.L;
    results["M"] = consts.M;
    results["masses"] = rational_strings(dist.masses, consts.M);
    results["masses_float"] = rational_floats(dist.masses);
    results["entropy_bits"] = entropy;
    results["closed_lower_bound_bits"] = closed;
    emit_json("clumpy", config, results);
  } else if (opt.format == "text") {
    std::cout << "masses:";
    for (const Rational& r : dist.masses) std::cout << " " << to_fraction_string(r, consts.M);
    std::cout << "\n" << std::setprecision(10) << "entropy: " << entropy
              << " bits\nclosed-form lower bound: " << closed << " bits\n";
  } else {
    reject_csv("clumpy");
  }
  return kExitOk;
}

int run_family(const Options& opt) {
  const SumClassConstants consts = sum_class_constants(opt.x, opt.y);
  if (opt.format == "csv") reject_csv("family");
  if (opt.enumerate) {
    const auto members = enumerate_family(opt.x, opt.y);
    double min_entropy = 0.0;
    bool first = true;
    for (const auto& m : members) {
      const double h = entropy_bits(m);
      if (first || h < min_entropy) min_entropy = h;
      first = false;
    }
    if (opt.format == "json") {
      json config{{"x", opt.x}, {"y", opt.y}, {"enumerate", true}};
      json results;
      results["distinct_members"] = members.size();
      results["min_entropy_bits"] = min_entropy;
      json list = json::array();
      for (const auto& m : members) list.push_back(rational_strings(m, consts.M));
      results["members"] = list;
      emit_json("family", config, results);
    } else {
      std::cout << members.size() << " distinct members; min entropy "
                << std::setprecision(10) << min_entropy << " bits\n";
      for (const auto& m : members) {
        for (const Rational& r : m) std::cout << to_fraction_string(r, consts.M) << " ";
        std::cout << "\n";
      }
    }
    return kExitOk;
  }
  const LabelFamilyVector member = sample_family_member(opt.x, opt.y, opt.seed);
  const double h = entropy_bits(member.masses);
  const bool dominated = prefix_dominance_check(member);
  if (opt.format == "json") {
    json config{{"x", opt.x}, {"y", opt.y}, {"seed", opt.seed}, {"enumerate", false}};
    json results;
    results["masses"] = rational_strings(member.masses, consts.M);
    results["masses_float"] = rational_floats(member.masses);
    results["entropy_bits"] = h;
    results["prefix_dominated_by_clumpy"] = dominated;
    emit_json("family", config, results);
  } else {
    std::cout << "masses:";
    for (const Rational& r : member.masses) std::cout << " " << to_fraction_string(r, consts.M);
    std::cout << "\n" << std::setprecision(10) << "entropy: " << h << " bits\n"
              << "prefix-dominated by clumpy: " << (dominated ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

int run_oracle(const Options& opt) {
  const SumClassConstants consts = sum_class_constants(opt.x, opt.y);
  const double clumpy = clumpy_entropy(opt.x, opt.y);
  const bool exhaustive = opt.exhaustive || opt.x + opt.y <= 2;
  OracleMode mode;
  if (exhaustive)
    mode = ExhaustiveOracle{};
  else
    mode = SampledOracle{opt.trials, opt.seed};
  const MinEntropyResult result = min_entropy_oracle(opt.x, opt.y, mode);
  if (opt.format == "json") {
    json config{{"x", opt.x},       {"y", opt.y},   {"exhaustive", exhaustive},
                {"trials", opt.trials}, {"seed", opt.seed}};
    json results;
    results["mode"] = exhaustive ? "exhaustive" : "sampled";
    results["candidates"] = result.candidates;
    results["min_entropy_bits"] = result.min_entropy;
    results["argmin"] = rational_strings(result.argmin, consts.M);
    results["argmin_float"] = rational_floats(result.argmin);
    results["clumpy_entropy_bits"] = clumpy;
    results["min_at_or_above_clumpy"] = result.min_entropy >= clumpy - 1e-10;
    emit_json("oracle", config, results);
  } else if (opt.format == "text") {
    std::cout << std::setprecision(10) << (exhaustive ? "exhaustive" : "sampled")
              << " min entropy: " << result.min_entropy << " bits over "
              << result.candidates << " candidates\nclumpy entropy: " << clumpy
              << " bits\nargmin:";
    for (const Rational& r : result.argmin) std::cout << " " << to_fraction_string(r, consts.M);
    std::cout << "\n";
  } else {
    reject_csv("oracle");
  }
  return kExitOk;
}

int run_decompose(const Options& opt) {
  std::ifstream in(opt.input);
  if (!in) throw CLI::ValidationError("cannot open input file '" + opt.input + "'");
  std::vector<Rational> p;
  std::string token;
  while (in >> token) p.push_back(parse_fraction(token));
  const Decomposition dec = decompose_into_permuted_clumpy(p, opt.x, opt.y);
  if (opt.format == "json") {
    json config{{"x", opt.x}, {"y", opt.y}, {"input", opt.input}};
    json results;
    results["iterations"] = dec.iterations;
    results["residual"] = dec.residual;
    json atoms = json::array();
    for (const DecompositionAtom& atom : dec.atoms) {
      json perm = json::array();
      for (std::uint32_t v : atom.permutation) perm.push_back(v + 1);
      atoms.push_back(json{{"weight", atom.weight}, {"perm", perm}});
    }
    results["atoms"] = atoms;
    emit_json("decompose", config, results);
  } else if (opt.format == "text") {
    // One line per atom: weight, then 1-based indices into the clumpy vector.
    std::cout << std::setprecision(17);
    for (const DecompositionAtom& atom : dec.atoms) {
      std::cout << atom.weight;
      for (std::uint32_t v : atom.permutation) std::cout << " " << (v + 1);
      std::cout << "\n";
    }
  } else {
    reject_csv("decompose");
  }
  return kExitOk;
}

int run_floor(const Options& opt) {
  const FloorResult result = min_entropy_floor(opt.c, opt.u);
  if (opt.format == "json") {
    json config{{"c", opt.c}, {"u", opt.u}};
    json results;
    results["masses"] = result.pmf.masses;
    results["entropy_bits"] = result.entropy;
    emit_json("floor", config, results);
  } else if (opt.format == "text") {
    std::cout << "masses:";
    std::cout << std::setprecision(10);
    for (double m : result.pmf.masses) std::cout << " " << m;
    std::cout << "\nentropy: " << result.entropy << " bits\n";
  } else {
    reject_csv("floor");
  }
  return kExitOk;
}

int run_dual(const Options& opt) {
  if (opt.k_set) {
    DualParams params = DualParams::make(opt.k, opt.alphabet, opt.eps);
    if (opt.lambda_set) params.lambda = opt.lambda;
    const double bound = dual_lower_bound(params);
    if (opt.format == "json") {
      json config{{"alphabet", opt.alphabet},
                  {"eps", opt.eps},
                  {"k", opt.k},
                  {"lambda", params.lambda}};
      json results;
      results["c"] = params.c;
      results["delta"] = params.delta;
      results["bound"] = bound;
      results["positive"] = bound > 0.0;
      emit_json("dual", config, results);
    } else if (opt.format == "csv") {
      std::cout << std::setprecision(17) << "k,lambda,dual_lower_bound\n"
                << opt.k << "," << params.lambda << "," << bound << "\n";
    } else {
      std::cout << std::setprecision(10) << "dual lower bound at k=" << opt.k
                << ", lambda=" << params.lambda << ": " << bound << "\n";
    }
    return kExitOk;
  }
  const ThresholdSearch search = hn_en_threshold(opt.alphabet, opt.eps);
  if (opt.format == "json") {
    json config{{"alphabet", opt.alphabet}, {"eps", opt.eps}};
    json results;
    results["k0"] = search.k0;
    results["checked_to"] = search.checked_to;
    emit_json("dual", config, results);
  } else if (opt.format == "csv") {
    std::cout << std::setprecision(17) << "k,lambda,dual_lower_bound\n";
    for (const auto& [k, bound] : search.trace) {
      const DualParams params = DualParams::make(k, opt.alphabet, opt.eps);
      std::cout << k << "," << params.lambda << "," << bound << "\n";
    }
  } else {
    std::cout << "certificate positive for all k in [" << search.k0 << ", "
              << search.checked_to << "]; k0 = " << search.k0 << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"zero-error arithmetic-sum network coding: achievable scheme, "
               "entropy bounds and capacity sandwich"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "exhaustive zero-error check");
  verify->add_option("--k", opt.k, "block length (even)")->required();
  verify->add_option("--eps", opt.eps, "typicality epsilon");
  add_format(verify);

  CLI::App* simulate = app.add_subcommand("simulate", "expected stopping time and rate");
  simulate->add_option("--k", opt.k, "block length (even)");
  simulate->add_option("--k-list", opt.k_list, "comma-separated block lengths")
      ->delimiter(',');
  simulate->add_option("--eps", opt.eps, "typicality epsilon");
  simulate->add_option("--trials", opt.trials, "monte-carlo trials");
  simulate->add_option("--seed", opt.seed, "master seed");
  simulate->add_flag("--exact", opt.exact, "closed-form exact law instead of sampling");
  add_format(simulate);

  CLI::App* bounds = app.add_subcommand("bounds", "capacity sandwich");
  bounds->add_option("--alphabet", opt.alphabet, "code alphabet size");
  bounds->add_option("--hn-slack", opt.hn_slack,
                     "finite-k H(N)/E N allowance added to the upper bound");
  add_format(bounds);

  CLI::App* clumpy = app.add_subcommand("clumpy", "entropy-minimizing label distribution");
  clumpy->add_option("--x", opt.x, "number of 1-components")->required();
  clumpy->add_option("--y", opt.y, "number of 2-components")->required();
  add_format(clumpy);

  CLI::App* family = app.add_subcommand("family", "label-distribution family members");
  family->add_option("--x", opt.x)->required();
  family->add_option("--y", opt.y)->required();
  family->add_option("--seed", opt.seed, "sampling seed");
  family->add_flag("--enumerate", opt.enumerate, "enumerate all members (x+y <= 2)");
  add_format(family);

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force minimum entropy over the family");
  oracle->add_option("--x", opt.x)->required();
  oracle->add_option("--y", opt.y)->required();
  oracle->add_option("--trials", opt.trials, "samples in sampled mode");
  oracle->add_option("--seed", opt.seed);
  oracle->add_flag("--exhaustive", opt.exhaustive, "force exhaustive enumeration");
  add_format(oracle);

  CLI::App* decompose =
      app.add_subcommand("decompose", "convex combination of permuted clumpy vectors");
  decompose->add_option("--x", opt.x)->required();
  decompose->add_option("--y", opt.y)->required();
  decompose->add_option("--input", opt.input, "file with L whitespace-separated rationals")
      ->required();
  add_format(decompose);

  CLI::App* floor_cmd = app.add_subcommand("floor", "minimum entropy under a mass floor");
  floor_cmd->add_option("--c", opt.c, "mass floor")->required();
  floor_cmd->add_option("--u", opt.u, "support size")->required();
  add_format(floor_cmd);

  CLI::App* dual = app.add_subcommand("dual", "stopping-time ratio certificate");
  dual->add_option("--alphabet", opt.alphabet);
  dual->add_option("--eps", opt.eps, "target H(N)/E N bound");
  CLI::Option* dual_k = dual->add_option("--k", opt.k, "evaluate at this k (default: search k0)");
  CLI::Option* dual_lambda = dual->add_option("--lambda", opt.lambda, "dual variable override");
  add_format(dual);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  opt.k_set = dual_k->count() > 0;
  opt.lambda_set = dual_lambda->count() > 0;

  try {
    if (verify->parsed()) return run_verify(opt);
    if (simulate->parsed()) return run_simulate(opt);
    if (bounds->parsed()) return run_bounds(opt);
    if (clumpy->parsed()) return run_clumpy(opt);
    if (family->parsed()) return run_family(opt);
    if (oracle->parsed()) return run_oracle(opt);
    if (decompose->parsed()) return run_decompose(opt);
    if (floor_cmd->parsed()) return run_floor(opt);
    if (dual->parsed()) return run_dual(opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DiagnosticFailure& e) {
    std::cerr << "diagnostic failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
