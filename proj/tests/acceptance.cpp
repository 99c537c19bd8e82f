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

// Acceptance gate: twelve end-to-end criteria, one PASS/FAIL line each.
// Exit status is non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "softcover/codebook.hpp"
#include "softcover/exponents.hpp"
#include "softcover/info.hpp"
#include "softcover/oracles.hpp"
#include "softcover/random_models.hpp"
#include "softcover/verify.hpp"

namespace {

using namespace softcover;
using random_models::Rng;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Verdict()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Verdict from_suite(const SuiteResult& r) {
  std::ostringstream os;
  os << r.checks << " checks, " << r.failures << " failures, worst margin " << fmt(r.margin);
  if (!r.passed()) os << "; first counterexample: " << r.counterexample;
  return {r.passed(), os.str()};
}

// ------------------------------------------------------------ codebook sweep

inline constexpr double kMaxOrderedCodebooks = 1e5;
inline constexpr int kMaxSweepBlock = 6;  // d^n <= 64 for qubit outputs

struct Setting {
  std::size_t model;
  CodebookKind kind;
  std::int64_t n;
  std::size_t m;
  double exact;
  double upper;  // tight achievability bound
  double lower;  // unclamped strong-converse bound
};

struct Sweep {
  std::vector<CqSource> models;
  std::vector<Setting> settings;
  double seconds = 0.0;
};

Sweep& sweep() {
  static Sweep s = [] {
    const auto start = std::chrono::steady_clock::now();
    Sweep out;
    out.models.push_back(CqSource(std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
                                  {DensityOperator::diagonal({1.0, 0.0}), DensityOperator::diagonal({0.0, 1.0})}));
    Rng rng(101);
    for (int k = 0; k < 10; ++k) out.models.push_back(random_models::random_cq_source(2, 2, rng));
    for (std::size_t i = 0; i < out.models.size(); ++i) {
      const CqSource& cq = out.models[i];
      InformationProfile profile(cq);
      const double alphabet = static_cast<double>(cq.alphabet_size());
      for (std::int64_t n = 1; n <= kMaxSweepBlock; ++n)
        for (std::size_t m = 1; std::pow(alphabet, static_cast<double>(n * static_cast<std::int64_t>(m))) <=
                                kMaxOrderedCodebooks;
             ++m) {
          const BoundRecord b = nshot_bounds(profile, n, static_cast<double>(m));
          out.settings.push_back({i, CodebookKind::iid, n, m, exact_expected_td(cq, CodebookKind::iid, n, m).mean,
                                  b.ach_iid_tight, b.sc_iid});
          if (b.cc_available)
            out.settings.push_back({i, CodebookKind::constant_composition, n, m,
                                    exact_expected_td(cq, CodebookKind::constant_composition, n, m).mean,
                                    b.ach_cc_tight, b.sc_cc});
        }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }();
  return s;
}

std::string describe(const Setting& s) {
  std::ostringstream os;
  os << "model " << s.model << ", " << to_string(s.kind) << ", n = " << s.n << ", M = " << s.m;
  return os.str();
}

Verdict achievability_sandwich() {
  const Sweep& sw = sweep();
  double worst = kInfinity;
  const Setting* bad = nullptr;
  std::size_t cc = 0;
  for (const auto& s : sw.settings) {
    cc += s.kind == CodebookKind::constant_composition;
    const double slack = s.upper + 1e-10 - s.exact;
    if (slack < worst) worst = slack;
    if (slack < 0 && !bad) bad = &s;
  }
  // Anchor: orthogonal pair, n = 1, M = 2.
  double anchor_exact = -1.0, anchor_bound = -1.0;
  for (const auto& s : sw.settings)
    if (s.model == 0 && s.kind == CodebookKind::iid && s.n == 1 && s.m == 2) {
      anchor_exact = s.exact;
      anchor_bound = s.upper;
    }
  const bool anchor = std::abs(anchor_exact - 0.25) <= 1e-12 && std::abs(anchor_bound - 0.5) <= 1e-3;
  std::ostringstream os;
  os << sw.settings.size() << " settings (" << cc << " constant-composition), worst slack " << fmt(worst)
     << "; anchor exact " << anchor_exact << " vs bound " << fmt(anchor_bound) << "; sweep " << fmt(sw.seconds) << " s";
  if (bad) os << "; violated at " << describe(*bad) << ": " << bad->exact << " > " << bad->upper;
  return {!bad && anchor, os.str()};
}

Verdict converse_sandwich() {
  const Sweep& sw = sweep();
  double worst = kInfinity;
  const Setting* bad = nullptr;
  for (const auto& s : sw.settings) {
    worst = std::min(worst, s.exact - s.lower);
    if (!(s.exact >= s.lower) && !bad) bad = &s;
  }
  std::ostringstream os;
  os << sw.settings.size() << " settings, smallest exact - bound " << fmt(worst);
  if (bad) os << "; violated at " << describe(*bad) << ": " << bad->exact << " < " << bad->lower;
  return {!bad, os.str()};
}

Verdict monte_carlo_consistency() {
  const Sweep& sw = sweep();
  double worst = 0.0;
  const Setting* bad = nullptr;
  std::uint64_t seed = 0;
  for (const auto& s : sw.settings) {
    const ExpectationEstimate mc = mc_expected_td(sw.models[s.model], s.kind, s.n, s.m, 2000, seed++);
    const double tol = std::max(4.0 * mc.half_width_95, 1e-12);
    const double err = std::abs(mc.mean - s.exact);
    worst = std::max(worst, err / tol);
    if (err > tol && !bad) bad = &s;
  }
  std::ostringstream os;
  os << sw.settings.size() << " settings at 2000 samples, worst |error| / (4 half-width) " << fmt(worst);
  if (bad) os << "; outside at " << describe(*bad);
  return {!bad, os.str()};
}

// ------------------------------------------------------------ oracles

Verdict information_oracles() {
  Rng rng(202);
  const std::vector<double> alphas{1.25, 1.5, 2.0};
  double worst_commuting = 0.0, worst_grid = 0.0;
  std::string bad;
  for (int k = 0; k < 20; ++k) {
    const CqSource cq = random_models::random_commuting_source(2 + k % 2, 2 + (k / 2) % 2, rng);
    for (double a : alphas) {
      const double e1 = std::abs(sandwiched_renyi_info(cq, a).value - classical_sibson_closed_form(cq, a));
      const double e2 = std::abs(sandwiched_augustin_info(cq, a).value - classical_augustin_oracle(cq, a));
      worst_commuting = std::max({worst_commuting, e1, e2});
      if (std::max(e1, e2) > 1e-6 && bad.empty())
        bad = "commuting model " + std::to_string(k) + " at alpha " + fmt(a);
    }
  }
  for (int k = 0; k < 20; ++k) {
    const CqSource cq = random_models::random_cq_source(2 + k % 2, 2, rng);
    for (double a : alphas) {
      const BlochGridResult grid = bloch_grid_oracle(cq, a, 200);
      const double e1 = std::abs(sandwiched_renyi_info(cq, a).value - grid.renyi);
      const double e2 = std::abs(sandwiched_augustin_info(cq, a).value - grid.augustin);
      worst_grid = std::max({worst_grid, e1, e2});
      if (std::max(e1, e2) > 1e-4 && bad.empty()) bad = "qubit model " + std::to_string(k) + " at alpha " + fmt(a);
    }
  }
  std::ostringstream os;
  os << "worst commuting discrepancy " << fmt(worst_commuting) << " (tol 1e-6), worst grid discrepancy "
     << fmt(worst_grid) << " (tol 1e-4)";
  if (!bad.empty()) os << "; first failure: " << bad;
  return {bad.empty(), os.str()};
}

// ------------------------------------------------------------ positivity

// Random qubit model whose mutual information leaves room for R = I - 0.05.
CqSource informative_model(Rng& rng) {
  for (;;) {
    CqSource cq = verify::random_nondegenerate_model(rng);
    if (mutual_information(cq) >= 0.1) return cq;
  }
}

Verdict positivity() {
  Rng rng(303);
  std::ostringstream failures;
  int bad = 0;
  double smallest_positive = kInfinity, largest_zero = 0.0;
  for (int k = 0; k < 10; ++k) {
    InformationProfile p(informative_model(rng));
    const double mi = p.mutual_information();
    const double above = mi + 0.05, below = mi - 0.05;
    struct Case {
      const char* name;
      Exponent positive, zero;
    };
    const std::vector<Case> cases{
        {"E_star", achievability_exponent_iid(p, above), achievability_exponent_iid(p, below)},
        {"E_star_breve", achievability_exponent_cc(p, above), achievability_exponent_cc(p, below)},
        {"E_sc", sc_exponent_iid(p, below), sc_exponent_iid(p, above)},
        {"E_sc_breve", sc_exponent_cc(p, below), sc_exponent_cc(p, above)},
    };
    for (const auto& c : cases) {
      smallest_positive = std::min(smallest_positive, c.positive.value);
      largest_zero = std::max(largest_zero, c.zero.value);
      const bool ok = c.positive.value > 1e-4 && c.zero.value == 0.0 && c.zero.clamped;
      if (!ok && bad++ == 0)
        failures << "; model " << k << " " << c.name << ": " << c.positive.value << " / " << c.zero.value;
    }
  }
  std::ostringstream os;
  os << "10 models, smallest positive exponent " << fmt(smallest_positive) << ", largest clamped value "
     << fmt(largest_zero) << failures.str();
  return {bad == 0, os.str()};
}

// ------------------------------------------------------------ moderate deviations

Verdict moderate_trend() {
  InformationProfile p(CqSource(std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
                                {DensityOperator::diagonal({1.0, 0.0}), DensityOperator::diagonal({0.5, 0.5})}));
  const auto rows = moderate_deviation_scan(p, 0.25, 1.0, {1e2, 1e4, 1e6});
  const double r0 = rows[0].ratio_iid, r1 = rows[1].ratio_iid, r2 = rows[2].ratio_iid;
  const bool in_band = r2 >= 0.8 && r2 <= 1.2;
  const bool trend = std::abs(r2 - 1.0) < std::abs(r1 - 1.0) && std::abs(r1 - 1.0) < std::abs(r0 - 1.0);
  std::ostringstream os;
  os << "ratios " << fmt(r0) << ", " << fmt(r1) << ", " << fmt(r2) << " at n = 1e2, 1e4, 1e6";
  return {in_band && trend, os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact expectation below the achievability bound", 120.0, achievability_sandwich},
      {2, "exact expectation above the strong-converse bound", 120.0, converse_sandwich},
      {3, "Monte Carlo agrees with exact enumeration", 120.0, monte_carlo_consistency},
      {4, "theta operator norm bound", 60.0, [] { return from_suite(verify::theta_suite(0)); }},
      {5, "trace inequality", 30.0, [] { return from_suite(verify::trace_inequality_suite(0)); }},
      {6, "information quantities match oracles", 300.0, information_oracles},
      {7, "limits and derivatives at order one", 300.0, [] { return from_suite(verify::derivatives_suite(0)); }},
      {8, "additivity under two-fold products", 120.0, [] { return from_suite(verify::additivity_suite(0)); }},
      {9, "orderings of quantities and exponents", 180.0, [] { return from_suite(verify::orderings_suite(0)); }},
      {10, "exponents positive exactly on the right side of I", 120.0, positivity},
      {11, "type-class probability inside the Stirling bracket", 10.0,
       [] { return from_suite(verify::type_bracket_suite()); }},
      {12, "moderate-deviation ratio approaches one", 60.0, moderate_trend},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // The sweep is shared by criteria 1-3 and charged to criterion 1.
    const bool in_time = seconds <= c.budget_s;
    const bool pass = v.pass && in_time;
    failed += !pass;
    std::printf("%s  C%-2d %s: %s [%.1f s of %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str(),
                seconds, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
