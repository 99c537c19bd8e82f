// Copyright 2026 The softcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// softcover_cli: batch front-end over the softcover library.
//
//   softcover_cli info      --model m.json [--alpha 1.25,1.5,2]
//   softcover_cli exponent  --model m.json --rate 0.1,0.5 [--n 4]
//   softcover_cli simulate  --model m.json --kind iid --n 2 (--M 4 | --rate 0.5) [--exact]
//   softcover_cli verify    [--suite all]
//   softcover_cli moderate  --model m.json [--t 0.25 --c 1 --n 1e2,1e4,1e6]
//
// Exit codes: 0 ok, 1 invalid input, 2 solver failure, 3 bound or property violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "softcover/softcover.hpp"

namespace {

using namespace softcover;
using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInvalid = 1, kSolver = 2, kViolation = 3 };

struct Common {
  std::string format = "csv";
  bool no_header = false;
  std::uint64_t seed = 0;
};

struct Outcome {
  Table table;
  json config = json::object();
  int code = kOk;
};

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

Cell num(double v) { return Cell(v); }

Cell integer(std::int64_t v) { return Cell(v); }

bool in_open(double a, double lo, double hi) { return a > lo && a < hi; }

// ---------------------------------------------------------------- info

Outcome run_info(const std::string& model_path, const std::vector<double>& alphas, const Common& common) {
  const ModelFile model = load_model(model_path);
  const CqSource& cq = model.source;
  SolverConfig cfg;
  cfg.seed = common.seed;
  Outcome out;
  out.config = {{"model", model_path}, {"alpha", alphas}};
  out.table.columns = {"row", "alpha", "I_star", "I_star_breve", "I_down", "I_down_breve", "converged",
                       "I", "V", "V_breve"};
  bool all_converged = true;
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 2.0) || a == 1.0)
      throw ValidationError("info: alpha must lie in (0, 2] and differ from 1; got " + format_double(a));
    std::optional<double> star, star_breve, down, down_breve;
    bool converged = true;
    if (a > 1.0) {
      const InfoResult r = sandwiched_renyi_info(cq, a, cfg);
      const InfoResult b = sandwiched_augustin_info(cq, a, cfg);
      star = r.value;
      star_breve = b.value;
      converged = r.converged && b.converged;
    }
    if (in_open(a, 0.0, 2.0)) {
      down = petz_down_renyi_info(cq, a).value;
      down_breve = petz_down_augustin_info(cq, a).value;
    }
    if (!converged) {
      all_converged = false;
      out.table.notes.push_back("solver did not converge at alpha = " + format_double(a));
    }
    out.table.add_row({std::string("alpha"), num(a), opt_cell(star), opt_cell(star_breve), opt_cell(down),
                       opt_cell(down_breve), converged, Cell(), Cell(), Cell()});
  }
  const double mi = mutual_information(cq);
  const InformationVariances var = variances(cq);
  out.table.add_row({std::string("summary"), num(1.0), num(mi), num(mi), num(mi), num(mi), true, num(mi),
                     num(var.v), num(var.v_breve)});
  if (!all_converged) out.code = kSolver;
  return out;
}

// ---------------------------------------------------------------- exponent

Outcome run_exponent(const std::string& model_path, const std::vector<double>& rates, std::optional<std::int64_t> n,
                     const Common& common) {
  const ModelFile model = load_model(model_path);
  SolverConfig cfg;
  cfg.seed = common.seed;
  InformationProfile profile(model.source, cfg);
  Outcome out;
  out.config = {{"model", model_path}, {"rate", rates}};
  if (n) out.config["n"] = *n;

  bool cc_ok = true;
  if (n) {
    if (*n < 1) throw ValidationError("exponent: n must be positive");
    try {
      const auto prior = model.source.rational_prior();
      if (!composition_is_integral(prior, *n)) {
        cc_ok = false;
        out.table.notes.push_back("constant-composition columns omitted: n p(x) is not integral for n = " +
                                  std::to_string(*n));
      }
    } catch (const ValidationError& e) {
      cc_ok = false;
      out.table.notes.push_back(std::string("constant-composition columns omitted: ") + e.what());
    }
  }

  out.table.columns = {"rate",           "E_star",          "E_star_alpha",          "E_star_breve",
                       "E_star_breve_alpha", "E_sc_down",   "E_sc_down_alpha",       "E_sc_down_breve",
                       "E_sc_down_breve_alpha", "I",        "V",                     "V_breve"};
  for (double rate : rates) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
      throw ValidationError("exponent: rate must be finite and non-negative; got " + format_double(rate));
    const ExponentReport r = exponent_report(profile, rate);
    auto cc = [&](double v) { return cc_ok ? num(v) : Cell(); };
    out.table.add_row({num(rate), num(r.e_star.value), num(r.e_star.argmax_alpha), cc(r.e_star_breve.value),
                       cc(r.e_star_breve.argmax_alpha), num(r.e_sc_down.value), num(r.e_sc_down.argmax_alpha),
                       cc(r.e_sc_down_breve.value), cc(r.e_sc_down_breve.argmax_alpha), num(r.mutual_information),
                       num(r.v), num(r.v_breve)});
  }
  if (!profile.failed_orders().empty()) {
    std::ostringstream os;
    os << "orders excluded after solver non-convergence:";
    for (double a : profile.failed_orders()) os << ' ' << format_double(a);
    out.table.notes.push_back(os.str());
  }
  return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string model;
  std::string kind = "iid";
  std::int64_t n = 1;
  std::optional<std::int64_t> m;
  std::optional<double> rate;
  std::int64_t samples = 2000;
  bool exact = false;
};

inline constexpr double kExactSlack = 1e-10;

Outcome run_simulate(const SimulateArgs& args, const Common& common) {
  const ModelFile model = load_model(args.model);
  const CodebookKind kind = parse_codebook_kind(args.kind);
  if (args.n < 1) throw ValidationError("simulate: n must be positive");
  if (args.m.has_value() == args.rate.has_value()) throw ValidationError("simulate: give exactly one of --M and --rate");
  double m_real = 0.0;
  if (args.m) {
    if (*args.m < 1) throw ValidationError("simulate: M must be positive");
    m_real = static_cast<double>(*args.m);
  } else {
    if (!(*args.rate >= 0.0)) throw ValidationError("simulate: rate must be non-negative");
    m_real = std::max(1.0, std::ceil(std::exp(static_cast<double>(args.n) * *args.rate)));
    if (m_real > 1e9) throw ValidationError("simulate: rate gives M = " + format_double(m_real) + ", above 1e9");
  }
  if (!args.exact && args.samples < 2) throw ValidationError("simulate: samples must be at least 2");
  const auto m = static_cast<std::size_t>(m_real);

  SolverConfig cfg;
  cfg.seed = common.seed;
  InformationProfile profile(model.source, cfg);
  const ExpectationEstimate est = args.exact ? exact_expected_td(model.source, kind, args.n, m)
                                             : mc_expected_td(model.source, kind, args.n, m, args.samples, common.seed);
  const BoundRecord b = nshot_bounds(profile, args.n, m_real);

  Outcome out;
  out.config = {{"model", args.model}, {"kind", to_string(kind)}, {"n", args.n}, {"M", static_cast<std::int64_t>(m)},
                {"samples", args.exact ? 0 : args.samples}, {"exact", args.exact}};
  out.table.columns = {"kind",       "n",          "M",          "rate",          "mean",          "half_width_95",
                       "samples",    "exact",      "ach_iid",    "ach_iid_tight", "sc_iid",        "ach_cc",
                       "ach_cc_tight", "sc_cc",    "prefactor_cc", "k_p",         "within_bounds"};

  const bool iid = kind == CodebookKind::iid;
  const double upper = iid ? b.ach_iid_tight : b.ach_cc_tight;
  const double lower = iid ? b.sc_iid : b.sc_cc;
  const double slack = est.exact ? kExactSlack : std::max(4.0 * est.half_width_95, 1e-12);
  const bool ok = est.mean <= upper + slack && est.mean >= lower - slack;

  auto cc = [&](double v) { return b.cc_available ? num(v) : Cell(); };
  out.table.add_row({std::string(to_string(kind)), integer(args.n), integer(static_cast<std::int64_t>(m)), num(b.rate),
                     num(est.mean), num(est.half_width_95), integer(est.samples), est.exact, num(b.ach_iid),
                     num(b.ach_iid_tight), num(b.sc_iid), cc(b.ach_cc), cc(b.ach_cc_tight), cc(b.sc_cc),
                     cc(b.prefactor_cc), num(b.k_p), ok});
  if (!b.cc_available) out.table.notes.push_back("constant-composition bounds omitted: " + b.cc_note);
  if (!ok) {
    std::ostringstream os;
    os.precision(17);
    os << "bound violation: mean " << est.mean << " outside [" << lower << ", " << upper << "] with slack " << slack;
    out.table.notes.push_back(os.str());
    out.code = kViolation;
  }
  return out;
}

// ---------------------------------------------------------------- verify

Outcome run_verify(const std::string& suite, const Common& common) {
  std::vector<std::string> names;
  if (suite == "all") names = verify::suite_names();
  else names = {suite};
  Outcome out;
  out.config = {{"suite", suite}};
  out.table.columns = {"suite", "checks", "failures", "margin", "passed", "counterexample"};
  for (const auto& name : names) {
    const SuiteResult r = verify::run_suite(name, common.seed);
    out.table.add_row({r.name, integer(r.checks), integer(r.failures), num(r.margin), r.passed(),
                       r.counterexample.empty() ? Cell() : Cell(r.counterexample)});
    if (!r.passed()) out.code = kViolation;
  }
  return out;
}

// ---------------------------------------------------------------- moderate

Outcome run_moderate(const std::string& model_path, double t, double c, const std::vector<double>& ns,
                     const Common& common) {
  const ModelFile model = load_model(model_path);
  SolverConfig cfg;
  cfg.seed = common.seed;
  InformationProfile profile(model.source, cfg);
  const auto rows = moderate_deviation_scan(profile, t, c, ns);
  Outcome out;
  out.config = {{"model", model_path}, {"t", t}, {"c", c}, {"n", ns}};
  out.table.columns = {"n",        "a_n",       "rate",     "nE_star", "nE_star_breve",
                       "target",   "target_breve", "ratio", "ratio_breve"};
  for (const auto& r : rows)
    out.table.add_row({num(r.n), num(r.a_n), num(r.rate), num(r.n_e_iid), num(r.n_e_cc), num(r.target_iid),
                       num(r.target_cc), num(r.ratio_iid), num(r.ratio_cc)});
  if (!profile.failed_orders().empty()) out.table.notes.push_back("some orders were excluded after solver failure");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softcover: soft-covering exponents, bounds and codebook simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "softcover 1.0.0");

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--no-header", common.no_header, "Omit the timestamp/provenance header");
    sub->add_option("--seed", common.seed, "Seed for every random choice");
  };

  std::string model;
  std::vector<double> alphas{0.75, 1.25, 1.5, 2.0};
  auto* info = app.add_subcommand("info", "Information quantities per order alpha");
  info->add_option("--model", model, "Model file (JSON)")->required()->check(CLI::ExistingFile);
  info->add_option("--alpha", alphas, "Orders, comma separated")->delimiter(',');
  add_common(info);

  std::vector<double> rates;
  std::optional<std::int64_t> block;
  auto* expo = app.add_subcommand("exponent", "The four exponents per rate (nats)");
  expo->add_option("--model", model, "Model file (JSON)")->required()->check(CLI::ExistingFile);
  expo->add_option("--rate", rates, "Rates in nats, comma separated")->required()->delimiter(',');
  expo->add_option("--n", block, "Block length used to check constant-composition feasibility");
  add_common(expo);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Expected trace distance against the n-shot bounds");
  simulate->add_option("--model", sim.model, "Model file (JSON)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--kind", sim.kind, "Codebook kind")->check(CLI::IsMember({"iid", "cc"}));
  simulate->add_option("--n", sim.n, "Block length")->required();
  auto* m_opt = simulate->add_option("--M", sim.m, "Codebook size");
  auto* r_opt = simulate->add_option("--rate", sim.rate, "Rate in nats; M = ceil(exp(n R))");
  m_opt->excludes(r_opt);
  simulate->add_option("--samples", sim.samples, "Monte Carlo codebooks");
  simulate->add_flag("--exact", sim.exact, "Enumerate every codebook instead of sampling");
  add_common(simulate);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Property suites");
  std::vector<std::string> suites{"all"};
  for (const auto& s : verify::suite_names()) suites.push_back(s);
  verify->add_option("--suite", suite, "Suite name or 'all'")->check(CLI::IsMember(suites));
  add_common(verify);

  double t = 0.25, c = 1.0;
  std::vector<double> ns{1e2, 1e4, 1e6};
  auto* moderate = app.add_subcommand("moderate", "Moderate-deviation scan at R_n = I + c n^-t");
  moderate->add_option("--model", model, "Model file (JSON)")->required()->check(CLI::ExistingFile);
  moderate->add_option("--t", t, "Exponent t in (0, 1/2)");
  moderate->add_option("--c", c, "Scale c > 0");
  moderate->add_option("--n", ns, "Block lengths, comma separated")->delimiter(',');
  add_common(moderate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (*info) out = run_info(model, alphas, common);
    else if (*expo) out = run_exponent(model, rates, block, common);
    else if (*simulate) out = run_simulate(sim, common);
    else if (*verify) out = run_verify(suite, common);
    else out = run_moderate(model, t, c, ns, common);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }

  RunInfo run;
  run.command = join_args(argc, argv);
  run.config = out.config;
  run.seed = common.seed;
  run.header = !common.no_header;
  run.timestamp = utc_timestamp();
  run.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (common.format == "json") write_json(std::cout, out.table, run);
  else write_csv(std::cout, out.table, run);
  for (const auto& note : out.table.notes)
    if (out.code != kOk) std::cerr << note << '\n';
  return out.code;
}
