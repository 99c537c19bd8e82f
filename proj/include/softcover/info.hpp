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

#ifndef SOFTCOVER_INFO_HPP
#define SOFTCOVER_INFO_HPP

// Information quantities of a c-q source: mutual information, the two
// information variances, the Petz-type quantities (closed form) and the
// sandwiched Renyi / Augustin informations (minimized over sigma_B).

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "softcover/cq_source.hpp"
#include "softcover/divergences.hpp"
#include "softcover/errors.hpp"
#include "softcover/linalg.hpp"
#include "softcover/minimize.hpp"

namespace softcover {

struct SolverConfig {
  double tolerance = 1e-11;
  int max_iters = 5000;
  std::uint64_t seed = 0;
  // Extra random starts besides sigma_0 = rho_B.
  int restarts = 0;
};

struct InfoResult {
  double value = 0.0;  // nats
  double alpha = 1.0;
  std::optional<DensityOperator> optimizer;
  int iterations = 0;
  // Spread of the objective across starts; +inf when the solver did not converge.
  double gap_estimate = 0.0;
  bool converged = true;
};

inline double mutual_information(const CqSource& cq) {
  const Eigensystem& rb = cq.marginal().spectrum();
  double total = 0.0;
  for (std::size_t x = 0; x < cq.alphabet_size(); ++x)
    if (cq.prior(x) > 0.0) total += cq.prior(x) * relative_entropy(cq.state(x), rb).value;
  return total;
}

struct InformationVariances {
  double v = 0.0;        // V(rho_XB || rho_X (x) rho_B)
  double v_breve = 0.0;  // E_x V(rho_x || rho_B)
};

/// Both variances from the per-letter log-likelihood moments. With
/// L_x = ln rho_x - ln rho_B, m1_x = Tr[rho_x L_x], m2_x = Tr[rho_x L_x^2]:
/// V = E m2 - (E m1)^2 and V_breve = E (m2 - m1^2).
inline InformationVariances variances(const CqSource& cq) {
  const Matrix log_b = matrix_log(cq.marginal().spectrum());
  double e_m1 = 0.0, e_m2 = 0.0, e_m1sq = 0.0;
  for (std::size_t x = 0; x < cq.alphabet_size(); ++x) {
    const double p = cq.prior(x);
    if (p <= 0.0) continue;
    const DensityOperator& r = cq.state(x);
    const Matrix diff = matrix_log(r.spectrum()) - log_b;
    const double m1 = trace_of_product(r.matrix(), diff).real();
    const double m2 = (diff * matrix_power(r.spectrum(), 0.5)).squaredNorm();
    e_m1 += p * m1;
    e_m2 += p * m2;
    e_m1sq += p * m1 * m1;
  }
  return {std::max(0.0, e_m2 - e_m1 * e_m1), std::max(0.0, e_m2 - e_m1sq)};
}

namespace detail {

inline void require_petz_info_order(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0) {
    std::ostringstream os;
    os << who << ": alpha = " << alpha << " outside (0, 2] \\ {1}";
    throw ValidationError(os.str());
  }
}

inline void require_starred_order(double alpha, const char* who) {
  if (!(alpha > 1.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << who << ": alpha = " << alpha << " outside (1, 2]";
    throw ValidationError(os.str());
  }
}

}  // namespace detail

/// I^down_alpha = D_alpha(rho_XB || rho_X (x) rho_B)
///             = ln sum_x p(x) Tr[rho_x^alpha rho_B^(1-alpha)] / (alpha - 1).
inline InfoResult petz_down_renyi_info(const CqSource& cq, double alpha) {
  detail::require_petz_info_order(alpha, "petz_down_renyi_info");
  const Eigensystem& rb = cq.marginal().spectrum();
  double q = 0.0;
  for (std::size_t x = 0; x < cq.alphabet_size(); ++x)
    if (cq.prior(x) > 0.0) q += cq.prior(x) * detail::petz_overlap(cq.state(x).spectrum(), rb, alpha);
  InfoResult out;
  out.alpha = alpha;
  out.value = std::log(q) / (alpha - 1.0);
  return out;
}

/// Augustin variant sum_x p(x) D_alpha(rho_x || rho_B).
inline InfoResult petz_down_augustin_info(const CqSource& cq, double alpha) {
  detail::require_petz_info_order(alpha, "petz_down_augustin_info");
  const Eigensystem& rb = cq.marginal().spectrum();
  double total = 0.0;
  for (std::size_t x = 0; x < cq.alphabet_size(); ++x)
    if (cq.prior(x) > 0.0) total += cq.prior(x) * petz_renyi(cq.state(x), rb, alpha).value;
  InfoResult out;
  out.alpha = alpha;
  out.value = total;
  return out;
}

enum class SandwichedObjective { renyi, augustin };

/// The sigma-objective of I*_alpha / Ĭ*_alpha restricted to supp(rho_B) and
/// parameterized as sigma = exp(H) / Tr exp(H), H traceless Hermitian.
class SandwichedProblem {
 public:
  SandwichedProblem(const CqSource& cq, double alpha, SandwichedObjective kind)
      : alpha_(alpha), kind_(kind), gamma_((1.0 - alpha) / (2.0 * alpha)) {
    const Eigensystem& rb = cq.marginal().spectrum();
    basis_ = rb.support_basis();
    dim_ = basis_.cols();
    for (std::size_t x = 0; x < cq.alphabet_size(); ++x) {
      if (cq.prior(x) <= 0.0) continue;
      weights_.push_back(cq.prior(x));
      compressed_.push_back(hermitian_part(basis_.adjoint() * cq.state(x).matrix() * basis_));
    }
    RealVector log_l(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) log_l(i) = std::log(rb.values(i));
    log_l.array() -= log_l.mean();
    start_ = Eigen::VectorXd::Zero(parameter_count());
    for (Eigen::Index i = 0; i + 1 < dim_; ++i) start_(i) = log_l(i);
  }

  [[nodiscard]] Eigen::Index parameter_count() const { return dim_ * dim_ - 1; }
  [[nodiscard]] const Eigen::VectorXd& start() const { return start_; }

  [[nodiscard]] Matrix generator(const Eigen::VectorXd& theta) const {
    Matrix h = Matrix::Zero(dim_, dim_);
    double trace = 0.0;
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i + 1 < dim_; ++i, ++k) {
      h(i, i) = theta(k);
      trace += theta(k);
    }
    h(dim_ - 1, dim_ - 1) = -trace;
    for (Eigen::Index i = 0; i < dim_; ++i)
      for (Eigen::Index j = i + 1; j < dim_; ++j, k += 2) {
        h(i, j) = Complex(theta(k), theta(k + 1));
        h(j, i) = std::conj(h(i, j));
      }
    return h;
  }

  // sigma in the support coordinates.
  [[nodiscard]] Matrix sigma_compressed(const Eigen::VectorXd& theta) const {
    const Eigensystem es = detail::eigh_impl(generator(theta));
    const RealVector logs = log_normalized(es.values);
    return es.vectors * logs.array().exp().matrix().cast<Complex>().asDiagonal() * es.vectors.adjoint();
  }

  [[nodiscard]] Matrix sigma_full(const Eigen::VectorXd& theta) const {
    return basis_ * sigma_compressed(theta) * basis_.adjoint();
  }

  [[nodiscard]] double operator()(const Eigen::VectorXd& theta) const {
    const Eigensystem es = detail::eigh_impl(generator(theta));
    const RealVector logs = log_normalized(es.values);
    const Eigen::VectorXcd scale = (gamma_ * logs.array()).exp().matrix().cast<Complex>();
    const Matrix s = es.vectors * scale.asDiagonal() * es.vectors.adjoint();
    double renyi_sum = 0.0;
    double augustin_sum = 0.0;
    for (std::size_t x = 0; x < compressed_.size(); ++x) {
      const RealVector ev = eigvalsh(s * compressed_[x] * s);
      double q = 0.0;
      for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0.0) q += std::pow(ev(i), alpha_);
      renyi_sum += weights_[x] * q;
      augustin_sum += weights_[x] * std::log(q);
    }
    const double num = kind_ == SandwichedObjective::renyi ? std::log(renyi_sum) : augustin_sum;
    return num / (alpha_ - 1.0);
  }

 private:
  static RealVector log_normalized(const RealVector& h) {
    const double top = h.maxCoeff();
    const double log_z = top + std::log((h.array() - top).exp().sum());
    return (h.array() - log_z).matrix();
  }

  double alpha_;
  SandwichedObjective kind_;
  double gamma_;
  Matrix basis_;
  Eigen::Index dim_ = 0;
  std::vector<double> weights_;
  std::vector<Matrix> compressed_;
  Eigen::VectorXd start_;
};

namespace detail {

inline InfoResult minimize_sandwiched(const CqSource& cq, double alpha, const SolverConfig& cfg,
                                      SandwichedObjective kind) {
  const SandwichedProblem problem(cq, alpha, kind);
  MinimizeOptions opt;
  opt.tolerance = cfg.tolerance;
  opt.max_iters = cfg.max_iters;

  InfoResult out;
  out.alpha = alpha;
  MinimizeResult best = minimize_bfgs(problem, problem.start(), opt);
  out.iterations = best.iterations;
  out.converged = best.converged;
  double lowest = best.value;
  double highest = best.value;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int r = 0; r < cfg.restarts; ++r) {
    Eigen::VectorXd x0 = problem.start();
    for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) += normal(rng);
    MinimizeResult run = minimize_bfgs(problem, x0, opt);
    out.iterations += run.iterations;
    out.converged = out.converged && run.converged;
    lowest = std::min(lowest, run.value);
    highest = std::max(highest, run.value);
    if (run.value < best.value) best = std::move(run);
  }
  out.value = best.value;
  out.gap_estimate = out.converged ? std::max(highest - lowest, best.last_improvement) : kInfinity;
  out.optimizer.emplace(hermitian_part(problem.sigma_full(best.x)));
  return out;
}

}  // namespace detail

/// I*_alpha = inf_sigma D*_alpha(rho_XB || p_X (x) sigma), alpha in (1, 2].
inline InfoResult sandwiched_renyi_info(const CqSource& cq, double alpha, const SolverConfig& cfg = {}) {
  detail::require_starred_order(alpha, "sandwiched_renyi_info");
  return detail::minimize_sandwiched(cq, alpha, cfg, SandwichedObjective::renyi);
}

/// Ĭ*_alpha = inf_sigma sum_x p(x) D*_alpha(rho_x || sigma), alpha in (1, 2].
/// The optimizer is the order-alpha Augustin mean.
inline InfoResult sandwiched_augustin_info(const CqSource& cq, double alpha, const SolverConfig& cfg = {}) {
  detail::require_starred_order(alpha, "sandwiched_augustin_info");
  return detail::minimize_sandwiched(cq, alpha, cfg, SandwichedObjective::augustin);
}

}  // namespace softcover

#endif  // SOFTCOVER_INFO_HPP
