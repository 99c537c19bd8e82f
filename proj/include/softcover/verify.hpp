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

#ifndef SOFTCOVER_VERIFY_HPP
#define SOFTCOVER_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "softcover/exponents.hpp"
#include "softcover/info.hpp"
#include "softcover/random_models.hpp"
#include "softcover/theta.hpp"
#include "softcover/types.hpp"

namespace softcover {

/// Outcome of one property suite. `margin` is the smallest slack seen over
/// all checks (negative means a violation); `counterexample` describes the
/// first failing instance.
struct SuiteResult {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  double margin = kInfinity;
  std::string counterexample;

  [[nodiscard]] bool passed() const { return failures == 0; }

  void record(double slack, const std::function<std::string()>& describe) {
    ++checks;
    margin = std::min(margin, slack);
    if (!(slack >= 0.0)) {
      if (failures == 0) counterexample = describe();
      ++failures;
    }
  }
};

namespace verify {

using random_models::Rng;

inline std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).real() << "+" << m(i, j).imag() << "i";
  }
  os << "]";
  return os.str();
}

inline OperatorField random_field(Rng& rng, std::size_t points, Eigen::Index d) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<double> w(points);
  double total = 0.0;
  for (double& v : w) total += (v = unif(rng));
  for (double& v : w) v /= total;
  std::vector<Matrix> values;
  for (std::size_t i = 0; i < points; ++i) values.push_back(random_models::random_hermitian(d, rng));
  return OperatorField(std::move(w), std::move(values));
}

/// Theta norm bound on `fields` random fields (|Omega| in {2,3}, d in {1,2},
/// M in {1..4}, p on the grid), its p = 2 tightness on the Rademacher field,
/// and the structural facts used in its proof.
inline SuiteResult theta_suite(std::uint64_t seed, int fields = 100) {
  SuiteResult r{"theta_bound"};
  Rng rng(seed);
  const std::vector<double> ps{1.0, 1.25, 1.5, 1.75, 2.0};
  for (int t = 0; t < fields; ++t) {
    const std::size_t points = 2 + static_cast<std::size_t>(t % 2);
    const Eigen::Index d = 1 + (t / 2) % 2;
    const int m = 1 + (t / 4) % 4;
    const OperatorField f = random_field(rng, points, d);
    for (double p : ps) {
      const ThetaBoundCheck c = verify_theta_bound(f, m, p);
      r.record(c.rhs + 1e-9 - c.lhs, [&] {
        std::ostringstream os;
        os << "field " << t << " (|Omega| = " << points << ", d = " << d << ", M = " << m << ", p = " << p
           << "): lhs " << c.lhs << " > rhs " << c.rhs;
        return os.str();
      });
    }
    // pi_i is an isometry, E a contraction, centred embeddings orthogonal.
    const double p = 1.5;
    const double norm = lp_norm(f, p);
    for (int i = 0; i < m; ++i) {
      const double e = lp_norm(embed(f, i, m), p);
      r.record(1e-12 * std::max(1.0, norm) - std::abs(e - norm), [&] { return "isometry fails for field " + std::to_string(t); });
    }
    r.record(norm + 1e-12 - lp_norm(OperatorField::constant(expectation(f)), p),
             [&] { return "expectation is not a contraction for field " + std::to_string(t); });
    if (m >= 2) {
      std::vector<Matrix> centred;
      const Matrix mean = expectation(f);
      for (const auto& v : f.values()) centred.push_back(v - mean);
      const OperatorField g(f.weights(), centred);
      const Complex ip = inner_product(embed(g, 0, m), embed(g, 1, m));
      r.record(1e-12 - std::abs(ip), [&] { return "centred embeddings not orthogonal for field " + std::to_string(t); });
    }
  }
  const OperatorField rademacher({0.5, 0.5}, {Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, -1.0)});
  for (int m = 1; m <= 8; ++m) {
    const ThetaBoundCheck c = verify_theta_bound(rademacher, m, 2.0);
    const double target = 1.0 / std::sqrt(static_cast<double>(m));
    r.record(1e-12 - std::max(std::abs(c.lhs - target), std::abs(c.rhs - target)), [&] {
      std::ostringstream os;
      os.precision(17);
      os << "Rademacher M = " << m << ": lhs " << c.lhs << ", rhs " << c.rhs << ", expected " << target;
      return os.str();
    });
  }
  return r;
}

/// Tr[K (K+L)^{-1/2} L (K+L)^{-1/2}] for PSD K, L, inverse taken on the support.
inline double trace_inequality_lhs(const Matrix& k, const Matrix& l) {
  const Matrix s = matrix_power(hermitian_part(k + l), -0.5);
  return trace_of_product(k, s * l * s).real();
}

/// Tr[K^{1-s} L^s].
inline double trace_inequality_rhs(const Matrix& k, const Matrix& l, double s) {
  return trace_of_product(matrix_power(k, 1.0 - s), matrix_power(l, s)).real();
}

/// The trace inequality on `pairs` random PSD pairs (d <= 4, some rank
/// deficient) for s = 0.1, ..., 0.9, plus the K = L case.
inline SuiteResult trace_inequality_suite(std::uint64_t seed, int pairs = 200) {
  SuiteResult r{"trace_inequality"};
  Rng rng(seed);
  for (int t = 0; t < pairs; ++t) {
    const Eigen::Index d = 1 + t % 4;
    const Eigen::Index rank_k = t % 5 == 0 ? std::max<Eigen::Index>(1, d - 1) : d;
    const Eigen::Index rank_l = t % 7 == 0 ? std::max<Eigen::Index>(1, d - 1) : d;
    const Matrix k = random_models::random_psd(d, rng, rank_k);
    const Matrix l = random_models::random_psd(d, rng, rank_l);
    const double lhs = trace_inequality_lhs(k, l);
    for (int j = 1; j <= 9; ++j) {
      const double s = 0.1 * j;
      const double rhs = trace_inequality_rhs(k, l, s);
      r.record(rhs - lhs + 1e-10, [&] {
        std::ostringstream os;
        os.precision(17);
        os << "s = " << s << ", lhs " << lhs << " > rhs " << rhs << ", K = " << matrix_text(k)
           << ", L = " << matrix_text(l);
        return os.str();
      });
    }
    // K = L: lhs = Tr K / 2 and rhs = Tr K.
    const double half = trace_inequality_lhs(k, k);
    const double tr = k.trace().real();
    r.record(1e-10 * std::max(1.0, tr) - std::abs(half - tr / 2.0),
             [&] { return "K = L does not give Tr K / 2 for pair " + std::to_string(t); });
    r.record(trace_inequality_rhs(k, k, 0.5) - half + 1e-10, [&] { return "K = L violates the bound"; });
  }
  return r;
}

/// Qubit or qutrit model with both information variances at least `floor`.
inline CqSource random_nondegenerate_model(Rng& rng, double floor = 0.05) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::size_t alphabet = 2 + static_cast<std::size_t>(attempt % 2);
    CqSource cq = random_models::random_cq_source(alphabet, 2, rng, 4, 0.0, 0.3);
    const auto v = variances(cq);
    if (v.v >= floor && v.v_breve >= floor) return cq;
  }
  throw SolverError("random_nondegenerate_model: no model with large enough variances found");
}

/// Orderings between the information quantities and between the exponents.
inline SuiteResult orderings_suite(std::uint64_t seed, int models = 10, int rates = 5) {
  SuiteResult r{"orderings"};
  Rng rng(seed);
  for (int t = 0; t < models; ++t) {
    InformationProfile p(random_models::random_cq_source(2 + static_cast<std::size_t>(t % 2), 2, rng));
    for (double a : {1.1, 1.25, 1.5, 1.75, 1.9}) {
      const auto i = p.sandwiched_renyi(a);
      const auto ib = p.sandwiched_augustin(a);
      if (!i || !ib) {
        r.record(-1.0, [&] { return "solver did not converge at alpha = " + std::to_string(a); });
        continue;
      }
      r.record(*i - *ib + 1e-8, [&] { return "Augustin above Renyi at alpha = " + std::to_string(a); });
    }
    for (double a : {0.55, 0.65, 0.75, 0.85, 0.95}) {
      const double lo = petz_down_renyi_info(p.source(), a).value;
      const double hi = petz_down_augustin_info(p.source(), a).value;
      r.record(hi - lo + 1e-8, [&] { return "Petz Augustin below Petz Renyi at alpha = " + std::to_string(a); });
    }
    const double mi = p.mutual_information();
    for (int k = 0; k < rates; ++k) {
      const double rate = mi * (0.4 + 0.3 * k);
      const double e = achievability_exponent_iid(p, rate).value, eb = achievability_exponent_cc(p, rate).value;
      const double s = sc_exponent_iid(p, rate).value, sb = sc_exponent_cc(p, rate).value;
      r.record(eb - e + 1e-6, [&] { return "E_star_breve < E_star at R = " + std::to_string(rate); });
      r.record(sb - s + 1e-6, [&] { return "E_sc_breve < E_sc at R = " + std::to_string(rate); });
    }
  }
  return r;
}

/// Forward-difference slopes at order 1 from h = 1e-2 and 1e-3, combined by
/// Richardson extrapolation.
inline double richardson_slope(const std::function<double(double)>& f, double f1) {
  const double h1 = 1e-2, h2 = 1e-3;
  const double s1 = (f(1.0 + h1) - f1) / h1;
  const double s2 = (f(1.0 + h2) - f1) / h2;
  return s2 - h2 * (s1 - s2) / (h1 - h2);
}

/// Limit and first derivative of the order-indexed quantities at order 1.
inline SuiteResult derivatives_suite(std::uint64_t seed, int models = 10) {
  SuiteResult r{"derivatives"};
  Rng rng(seed);
  for (int t = 0; t < models; ++t) {
    const CqSource cq = random_nondegenerate_model(rng);
    const double mi = mutual_information(cq);
    const auto v = variances(cq);
    const double h = 1e-3;
    const double gap = std::abs(sandwiched_renyi_info(cq, 1.0 + h).value - mi);
    r.record(2.0 * h * v.v - gap, [&] { return "I*_{1+h} too far from I for model " + std::to_string(t); });
    struct Slope {
      const char* name;
      std::function<double(double)> f;
      double target;
    };
    const std::vector<Slope> slopes{
        {"I_star", [&](double a) { return sandwiched_renyi_info(cq, a).value; }, v.v / 2.0},
        {"I_star_breve", [&](double a) { return sandwiched_augustin_info(cq, a).value; }, v.v_breve / 2.0},
        {"I_down(2-1/alpha)", [&](double a) { return petz_down_renyi_info(cq, 2.0 - 1.0 / a).value; }, v.v / 2.0},
        {"I_down_breve(2-1/alpha)", [&](double a) { return petz_down_augustin_info(cq, 2.0 - 1.0 / a).value; },
         v.v_breve / 2.0},
    };
    for (const auto& s : slopes) {
      const double slope = richardson_slope(s.f, mi);
      r.record(0.05 * s.target - std::abs(slope - s.target), [&] {
        std::ostringstream os;
        os << s.name << " slope " << slope << " vs " << s.target << " for model " << t;
        return os.str();
      });
    }
  }
  return r;
}

/// I*_alpha of the two-fold product source against twice the single copy.
inline SuiteResult additivity_suite(std::uint64_t seed, int models = 5) {
  SuiteResult r{"additivity"};
  Rng rng(seed);
  for (int t = 0; t < models; ++t) {
    const CqSource cq = random_models::random_cq_source(2, 2, rng);
    const CqSource twice = product_source(cq, cq);
    for (double a : {1.5, 2.0}) {
      const double one = sandwiched_renyi_info(cq, a).value;
      const double two = sandwiched_renyi_info(twice, a).value;
      r.record(1e-6 - std::abs(two - 2.0 * one), [&] {
        std::ostringstream os;
        os.precision(12);
        os << "model " << t << ", alpha " << a << ": product " << two << " vs 2 x " << one;
        return os.str();
      });
    }
  }
  return r;
}

/// Exact type-class probability against its Stirling bracket.
inline SuiteResult type_bracket_suite() {
  SuiteResult r{"type_class_bracket"};
  const std::vector<std::vector<Rational>> priors{
      {Rational(1, 2), Rational(1, 2)},
      {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
      {Rational(3, 4), Rational(1, 4)},
  };
  for (std::size_t k = 0; k < priors.size(); ++k)
    for (std::int64_t n : {4, 8, 16, 32}) {
      const TypeClassProbability tp = type_class_probability(priors[k], n);
      const auto describe = [&] {
        std::ostringstream os;
        os << "prior " << k << ", n = " << n << ": exact " << tp.exact << " outside [" << tp.stirling_lo << ", "
           << tp.stirling_hi << "]";
        return os.str();
      };
      r.record(tp.exact - tp.stirling_lo, describe);
      r.record(tp.stirling_hi - tp.exact, describe);
    }
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theta", "trace", "orderings", "derivatives", "additivity", "types"};
  return names;
}

inline SuiteResult run_suite(std::string_view name, std::uint64_t seed) {
  if (name == "theta") return theta_suite(seed);
  if (name == "trace") return trace_inequality_suite(seed);
  if (name == "orderings") return orderings_suite(seed);
  if (name == "derivatives") return derivatives_suite(seed);
  if (name == "additivity") return additivity_suite(seed);
  if (name == "types") return type_bracket_suite();
  throw ValidationError("unknown verify suite '" + std::string(name) + "'");
}

}  // namespace verify
}  // namespace softcover

#endif  // SOFTCOVER_VERIFY_HPP
