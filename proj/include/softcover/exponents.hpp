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

#ifndef SOFTCOVER_EXPONENTS_HPP
#define SOFTCOVER_EXPONENTS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "softcover/cq_source.hpp"
#include "softcover/errors.hpp"
#include "softcover/info.hpp"
#include "softcover/types.hpp"

namespace softcover {

struct AlphaSearchOptions {
  int grid_points = 64;
  // Distance kept from the open ends of the alpha interval.
  double margin = 1e-4;
  // Golden-section refinement stops once the bracket is this narrow.
  double bracket_tolerance = 1e-9;
  int max_golden_iterations = 80;
};

struct AlphaSup {
  double value = -kInfinity;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> excluded;  // orders at which the objective was unavailable
};

/// sup of f over [lo, hi]: grid search, then golden-section inside the
/// bracket of grid neighbours around the best grid point. f returns nullopt
/// where it cannot be evaluated; such orders are skipped and recorded.
inline AlphaSup maximize_over_alpha(const std::function<std::optional<double>(double)>& f, double lo, double hi,
                                    const AlphaSearchOptions& opt = {}) {
  AlphaSup out;
  const int m = std::max(opt.grid_points, 2);
  std::vector<double> grid(static_cast<std::size_t>(m));
  int best = -1;
  for (int i = 0; i < m; ++i) {
    const double a = lo + (hi - lo) * i / (m - 1);
    grid[static_cast<std::size_t>(i)] = a;
    const auto v = f(a);
    if (!v || !std::isfinite(*v)) {
      out.excluded.push_back(a);
      continue;
    }
    if (*v > out.value) {
      out.value = *v;
      out.alpha = a;
      best = i;
    }
  }
  if (best < 0) return out;

  constexpr double kInvPhi = 0.6180339887498949;
  double a = grid[static_cast<std::size_t>(std::max(best - 1, 0))];
  double b = grid[static_cast<std::size_t>(std::min(best + 1, m - 1))];
  auto eval = [&](double x) {
    const auto v = f(x);
    if (!v || !std::isfinite(*v)) {
      out.excluded.push_back(x);
      return -kInfinity;
    }
    if (*v > out.value) {
      out.value = *v;
      out.alpha = x;
    }
    return *v;
  };
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < opt.max_golden_iterations && b - a > opt.bracket_tolerance; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  return out;
}

/// Order-indexed information quantities of one source, memoized so that
/// several exponents and rates share solver work.
class InformationProfile {
 public:
  explicit InformationProfile(CqSource cq, SolverConfig cfg = {}) : cq_(std::move(cq)), cfg_(cfg) {
    mutual_information_ = softcover::mutual_information(cq_);
    variances_ = softcover::variances(cq_);
  }

  [[nodiscard]] const CqSource& source() const { return cq_; }
  [[nodiscard]] const SolverConfig& config() const { return cfg_; }
  [[nodiscard]] double mutual_information() const { return mutual_information_; }
  [[nodiscard]] const InformationVariances& variances() const { return variances_; }

  /// I*_alpha, or nullopt when the solver did not converge.
  std::optional<double> sandwiched_renyi(double alpha) { return solve(renyi_, alpha, SandwichedObjective::renyi); }
  /// Ĭ*_alpha, or nullopt when the solver did not converge.
  std::optional<double> sandwiched_augustin(double alpha) {
    return solve(augustin_, alpha, SandwichedObjective::augustin);
  }
  /// I^down_{2 - 1/alpha}.
  double petz_renyi_converse(double alpha) { return petz_down_renyi_info(cq_, 2.0 - 1.0 / alpha).value; }
  /// Ĭ^down_{2 - 1/alpha}.
  double petz_augustin_converse(double alpha) { return petz_down_augustin_info(cq_, 2.0 - 1.0 / alpha).value; }

  [[nodiscard]] const std::vector<double>& failed_orders() const { return failed_; }

 private:
  std::optional<double> solve(std::map<double, std::optional<double>>& cache, double alpha,
                              SandwichedObjective kind) {
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
    const InfoResult r = kind == SandwichedObjective::renyi ? sandwiched_renyi_info(cq_, alpha, cfg_)
                                                            : sandwiched_augustin_info(cq_, alpha, cfg_);
    std::optional<double> v;
    if (r.converged) v = r.value;
    else failed_.push_back(alpha);
    cache.emplace(alpha, v);
    return v;
  }

  CqSource cq_;
  SolverConfig cfg_;
  double mutual_information_ = 0.0;
  InformationVariances variances_;
  std::map<double, std::optional<double>> renyi_;
  std::map<double, std::optional<double>> augustin_;
  std::vector<double> failed_;
};

namespace detail {

inline void require_codebook_size(double m, const char* who) {
  if (!(m >= 1.0) || std::floor(m) != m) {
    std::ostringstream os;
    os << who << ": codebook size M = " << m << " must be a positive integer";
    throw ValidationError(os.str());
  }
}

inline void require_open_order(double alpha, double lo, double hi, const char* who) {
  if (!(alpha > lo && alpha < hi)) {
    std::ostringstream os;
    os << who << ": alpha = " << alpha << " outside (" << lo << ", " << hi << ")";
    throw ValidationError(os.str());
  }
}

}  // namespace detail

/// 2^{2/alpha - 2} exp((alpha-1)/alpha (I*_alpha - ln M)) for a given I*_alpha.
inline double one_shot_achievability_bound_from(double info, double m, double alpha) {
  detail::require_open_order(alpha, 1.0, 2.0, "one_shot_achievability_bound");
  detail::require_codebook_size(m, "one_shot_achievability_bound");
  return std::exp((2.0 / alpha - 2.0) * std::numbers::ln2 + (alpha - 1.0) / alpha * (info - std::log(m)));
}

inline double one_shot_achievability_bound(const CqSource& cq, double m, double alpha, const SolverConfig& cfg = {}) {
  detail::require_open_order(alpha, 1.0, 2.0, "one_shot_achievability_bound");
  const InfoResult r = sandwiched_renyi_info(cq, alpha, cfg);
  if (!r.converged) throw SolverError("one_shot_achievability_bound: sigma minimization did not converge");
  return one_shot_achievability_bound_from(r.value, m, alpha);
}

/// 1 - 4 exp((alpha-1)/alpha (I^down_{2-1/alpha} - ln M)), unclamped.
inline double one_shot_sc_bound(const CqSource& cq, double m, double alpha) {
  detail::require_open_order(alpha, 0.5, 1.0, "one_shot_sc_bound");
  detail::require_codebook_size(m, "one_shot_sc_bound");
  const double info = petz_down_renyi_info(cq, 2.0 - 1.0 / alpha).value;
  return 1.0 - 4.0 * std::exp((alpha - 1.0) / alpha * (info - std::log(m)));
}

struct Exponent {
  double value = 0.0;
  double argmax_alpha = std::numeric_limits<double>::quiet_NaN();
  bool clamped = false;  // supremum was <= 0 and the trivial value 0 is reported
  std::vector<double> excluded_alphas;
};

enum class ExponentKind { achievability_iid, achievability_cc, sc_iid, sc_cc };

inline const char* to_string(ExponentKind k) {
  switch (k) {
    case ExponentKind::achievability_iid: return "E_star";
    case ExponentKind::achievability_cc: return "E_star_breve";
    case ExponentKind::sc_iid: return "E_sc_down";
    case ExponentKind::sc_cc: return "E_sc_down_breve";
  }
  return "?";
}

inline Exponent exponent(InformationProfile& profile, ExponentKind kind, double rate,
                         const AlphaSearchOptions& opt = {}) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw ValidationError("exponent: rate must be finite and non-negative");
  std::function<std::optional<double>(double)> f;
  const bool achievability = kind == ExponentKind::achievability_iid || kind == ExponentKind::achievability_cc;
  switch (kind) {
    case ExponentKind::achievability_iid:
      f = [&](double a) -> std::optional<double> {
        const auto i = profile.sandwiched_renyi(a);
        if (!i) return std::nullopt;
        return (1.0 - a) / a * (*i - rate);
      };
      break;
    case ExponentKind::achievability_cc:
      f = [&](double a) -> std::optional<double> {
        const auto i = profile.sandwiched_augustin(a);
        if (!i) return std::nullopt;
        return (1.0 - a) / a * (*i - rate);
      };
      break;
    case ExponentKind::sc_iid:
      f = [&](double a) -> std::optional<double> { return (1.0 - a) / a * (profile.petz_renyi_converse(a) - rate); };
      break;
    case ExponentKind::sc_cc:
      f = [&](double a) -> std::optional<double> {
        return (1.0 - a) / a * (profile.petz_augustin_converse(a) - rate);
      };
      break;
  }
  const double lo = achievability ? 1.0 + opt.margin : 0.5 + opt.margin;
  const double hi = achievability ? 2.0 - opt.margin : 1.0 - opt.margin;
  const AlphaSup sup = maximize_over_alpha(f, lo, hi, opt);
  if (std::isnan(sup.alpha)) throw SolverError(std::string(to_string(kind)) + ": objective unavailable at every order");
  Exponent out;
  out.excluded_alphas = sup.excluded;
  if (sup.value > 0.0) {
    out.value = sup.value;
    out.argmax_alpha = sup.alpha;
  } else {
    // The objective tends to 0 as alpha -> 1; report that end.
    out.clamped = true;
    out.argmax_alpha = achievability ? lo : hi;
  }
  return out;
}

inline Exponent achievability_exponent_iid(InformationProfile& p, double rate, const AlphaSearchOptions& o = {}) {
  return exponent(p, ExponentKind::achievability_iid, rate, o);
}
inline Exponent achievability_exponent_cc(InformationProfile& p, double rate, const AlphaSearchOptions& o = {}) {
  return exponent(p, ExponentKind::achievability_cc, rate, o);
}
inline Exponent sc_exponent_iid(InformationProfile& p, double rate, const AlphaSearchOptions& o = {}) {
  return exponent(p, ExponentKind::sc_iid, rate, o);
}
inline Exponent sc_exponent_cc(InformationProfile& p, double rate, const AlphaSearchOptions& o = {}) {
  return exponent(p, ExponentKind::sc_cc, rate, o);
}

struct ExponentReport {
  double rate = 0.0;
  Exponent e_star, e_star_breve, e_sc_down, e_sc_down_breve;
  double mutual_information = 0.0;
  double v = 0.0, v_breve = 0.0;
};

inline ExponentReport exponent_report(InformationProfile& p, double rate, const AlphaSearchOptions& o = {}) {
  ExponentReport r;
  r.rate = rate;
  r.e_star = achievability_exponent_iid(p, rate, o);
  r.e_star_breve = achievability_exponent_cc(p, rate, o);
  r.e_sc_down = sc_exponent_iid(p, rate, o);
  r.e_sc_down_breve = sc_exponent_cc(p, rate, o);
  r.mutual_information = p.mutual_information();
  r.v = p.variances().v;
  r.v_breve = p.variances().v_breve;
  return r;
}

struct BoundRecord {
  std::int64_t n = 1;
  double m = 1.0;       // codebook size M
  double rate = 0.0;    // ln M / n
  // exp(-n E*(R)) and the same with Ĭ*.
  double ach_iid = 1.0, ach_cc = kInfinity;
  // min over alpha of 2^{2/alpha-2} exp(-n (alpha-1)/alpha (R - I*_alpha)); tighter than ach_iid.
  double ach_iid_tight = 1.0, ach_cc_tight = kInfinity;
  double ach_iid_alpha = 0.0, ach_cc_alpha = 0.0;
  // 1 - 4 exp(-n E_sc(R)), unclamped, with the clamped companion.
  double sc_iid = -3.0, sc_iid_clamped = 0.0;
  double sc_iid_alpha = 0.0;
  // Exact-prefactor constant-composition converse
  // sup_alpha 1 - 4 M^s e^{-s n Ĭ^down_{1-s}} P(T)^{-s}, s = (1-alpha)/alpha.
  double sc_cc = -kInfinity, sc_cc_clamped = 0.0;
  double sc_cc_alpha = 0.0;
  double prefactor_cc = 0.0;  // p^{(x)n}(T_p^n)
  double k_p = 0.0;
  bool cc_available = false;
  std::string cc_note;
};

/// All four n-shot bounds for a codebook of size M (rate ln M / n).
inline BoundRecord nshot_bounds(InformationProfile& profile, std::int64_t n, double m,
                                const AlphaSearchOptions& opt = {}) {
  if (n < 1) throw ValidationError("nshot_bounds: n must be positive");
  detail::require_codebook_size(m, "nshot_bounds");
  const CqSource& cq = profile.source();
  const double nn = static_cast<double>(n);
  const double log_m = std::log(m);
  BoundRecord r;
  r.n = n;
  r.m = m;
  r.rate = log_m / nn;
  r.k_p = type_constant_k(cq.prior());

  const Exponent e_iid = achievability_exponent_iid(profile, r.rate, opt);
  r.ach_iid = std::exp(-nn * e_iid.value);
  auto tight = [&](auto info) {
    return maximize_over_alpha(
        [&](double a) -> std::optional<double> {
          const auto i = info(a);
          if (!i) return std::nullopt;
          return -((2.0 / a - 2.0) * std::numbers::ln2 + (a - 1.0) / a * (nn * *i - log_m));
        },
        1.0 + opt.margin, 2.0 - opt.margin, opt);
  };
  const AlphaSup t_iid = tight([&](double a) { return profile.sandwiched_renyi(a); });
  r.ach_iid_tight = std::exp(-t_iid.value);
  r.ach_iid_alpha = t_iid.alpha;

  const Exponent s_iid = sc_exponent_iid(profile, r.rate, opt);
  r.sc_iid = 1.0 - 4.0 * std::exp(-nn * s_iid.value);
  r.sc_iid_clamped = std::max(r.sc_iid, 0.0);
  r.sc_iid_alpha = s_iid.argmax_alpha;

  std::vector<Rational> prior;
  try {
    prior = cq.rational_prior();
  } catch (const ValidationError& e) {
    r.cc_note = e.what();
    return r;
  }
  if (!composition_is_integral(prior, n)) {
    std::ostringstream os;
    os << "n p(x) is not integral for n = " << n;
    r.cc_note = os.str();
    return r;
  }
  r.cc_available = true;
  const TypeClassProbability tp = type_class_probability(prior, n);
  r.prefactor_cc = tp.exact;

  const Exponent e_cc = achievability_exponent_cc(profile, r.rate, opt);
  r.ach_cc = std::exp(-nn * e_cc.value);
  const AlphaSup t_cc = tight([&](double a) { return profile.sandwiched_augustin(a); });
  r.ach_cc_tight = std::exp(-t_cc.value);
  r.ach_cc_alpha = t_cc.alpha;

  // ln M - ln P(T) plays the role of n R in the converse exponent.
  const Exponent s_cc = sc_exponent_cc(profile, (log_m - tp.log_exact) / nn, opt);
  r.sc_cc = 1.0 - 4.0 * std::exp(-nn * s_cc.value);
  r.sc_cc_clamped = std::max(r.sc_cc, 0.0);
  r.sc_cc_alpha = s_cc.argmax_alpha;
  return r;
}

/// Bounds at rate R with M = ceil(e^{nR}).
inline BoundRecord nshot_bounds_at_rate(InformationProfile& profile, std::int64_t n, double rate,
                                        const AlphaSearchOptions& opt = {}) {
  if (!(rate >= 0.0)) throw ValidationError("nshot_bounds: rate must be non-negative");
  return nshot_bounds(profile, n, std::max(1.0, std::ceil(std::exp(static_cast<double>(n) * rate))), opt);
}

struct ModerateRow {
  double n = 0.0;
  double a_n = 0.0;
  double rate = 0.0;      // I + a_n
  double n_e_iid = 0.0;   // n E*(R_n)
  double n_e_cc = 0.0;    // n Ĕ*(R_n)
  double target_iid = 0.0;  // n a_n^2 / (2V)
  double target_cc = 0.0;   // n a_n^2 / (2V_breve)
  double ratio_iid = 0.0;
  double ratio_cc = 0.0;
};

inline constexpr double kVarianceFloor = 1e-6;

/// n E*(I + c n^{-t}) against its second-order prediction n a_n^2 / (2V).
/// Rows are reported as computed; nothing about the ratios is asserted.
/// Constant-composition columns are NaN when V_breve is degenerate.
inline std::vector<ModerateRow> moderate_deviation_scan(InformationProfile& profile, double t, double c,
                                                        const std::vector<double>& n_list,
                                                        const AlphaSearchOptions& opt = {}) {
  if (!(t > 0.0 && t < 0.5)) throw ValidationError("moderate_deviation_scan: t must lie in (0, 1/2)");
  if (!(c > 0.0)) throw ValidationError("moderate_deviation_scan: c must be positive");
  const auto var = profile.variances();
  if (!(var.v > kVarianceFloor)) {
    std::ostringstream os;
    os << "moderate_deviation_scan: requires V(X:B) > 0; got V = " << var.v;
    throw ValidationError(os.str());
  }
  const bool cc = var.v_breve > kVarianceFloor;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ModerateRow> rows;
  for (double n : n_list) {
    if (!(n >= 1.0)) throw ValidationError("moderate_deviation_scan: n must be at least 1");
    ModerateRow row;
    row.n = n;
    row.a_n = c * std::pow(n, -t);
    row.rate = profile.mutual_information() + row.a_n;
    row.n_e_iid = n * achievability_exponent_iid(profile, row.rate, opt).value;
    row.target_iid = n * row.a_n * row.a_n / (2.0 * var.v);
    row.ratio_iid = row.n_e_iid / row.target_iid;
    if (cc) {
      row.n_e_cc = n * achievability_exponent_cc(profile, row.rate, opt).value;
      row.target_cc = n * row.a_n * row.a_n / (2.0 * var.v_breve);
      row.ratio_cc = row.n_e_cc / row.target_cc;
    } else {
      row.n_e_cc = row.target_cc = row.ratio_cc = nan;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace softcover

#endif  // SOFTCOVER_EXPONENTS_HPP
