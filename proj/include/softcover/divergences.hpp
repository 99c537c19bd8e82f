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

#ifndef SOFTCOVER_DIVERGENCES_HPP
#define SOFTCOVER_DIVERGENCES_HPP

// Petz-Renyi, sandwiched Renyi, Umegaki relative entropy and relative
// entropy variance. All logarithms are natural. A violated support
// condition yields +inf rather than an exception.

#include <cmath>
#include <sstream>

#include "softcover/errors.hpp"
#include "softcover/linalg.hpp"

namespace softcover {

enum class DivergenceKind { petz, sandwiched, umegaki, variance };

inline const char* to_string(DivergenceKind k) {
  switch (k) {
    case DivergenceKind::petz: return "petz";
    case DivergenceKind::sandwiched: return "sandwiched";
    case DivergenceKind::umegaki: return "umegaki";
    case DivergenceKind::variance: return "variance";
  }
  return "?";
}

struct DivergenceValue {
  double value = 0.0;
  double alpha = 1.0;
  DivergenceKind kind = DivergenceKind::umegaki;
  // Set exactly when value is +inf.
  bool support_violated = false;

  [[nodiscard]] bool is_finite() const { return !support_violated; }
};

// Below this, Tr[rho^a sigma^(1-a)]-type overlaps count as orthogonal supports.
inline constexpr double kOverlapFloor = 1e-14;

/// Weight of rho outside supp(sigma): Tr[rho] - Tr[P_sigma rho].
inline double support_leak(const Matrix& rho, const Eigensystem& sigma) {
  const Matrix basis = sigma.support_basis();
  const double inside = (basis.adjoint() * rho * basis).trace().real();
  return rho.trace().real() - inside;
}

inline bool support_contained(const Matrix& rho, const Eigensystem& sigma) {
  return support_leak(rho, sigma) <= kPsdTolerance;
}

namespace detail {

inline void require_renyi_order(double alpha, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << who << ": order alpha = " << alpha << " must lie in (0, inf)";
    throw ValidationError(os.str());
  }
  if (alpha == 1.0) {
    std::ostringstream os;
    os << who << ": alpha = 1 is not a Renyi order; use relative_entropy";
    throw ValidationError(os.str());
  }
}

inline Eigensystem psd_spectrum(const Matrix& sigma, const char* who) {
  Eigensystem es = eigh(sigma);
  require_psd(es, who);
  return es;
}

inline DivergenceValue infinite(double alpha, DivergenceKind kind) {
  return {kInfinity, alpha, kind, true};
}

// Tr[rho^alpha sigma^(1-alpha)] with support-restricted powers.
inline double petz_overlap(const Eigensystem& rho, const Eigensystem& sigma, double alpha) {
  const Matrix ra = matrix_power(rho, alpha);
  const Matrix sa = matrix_power(sigma, 1.0 - alpha);
  return trace_of_product(ra, sa).real();
}

// Tr[(sigma^g rho sigma^g)^alpha], g = (1 - alpha) / (2 alpha).
inline double sandwiched_overlap(const Matrix& rho, const Eigensystem& sigma, double alpha) {
  const Matrix s = matrix_power(sigma, (1.0 - alpha) / (2.0 * alpha));
  const RealVector ev = eigvalsh(s * rho * s);
  double q = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0) q += std::pow(ev(i), alpha);
  return q;
}

inline DivergenceValue renyi_from_overlap(double q, double alpha, DivergenceKind kind) {
  if (!(q > kOverlapFloor)) return infinite(alpha, kind);
  return {std::log(q) / (alpha - 1.0), alpha, kind, false};
}

}  // namespace detail

/// D_alpha(rho||sigma) = ln Tr[rho^alpha sigma^(1-alpha)] / (alpha - 1).
inline DivergenceValue petz_renyi(const DensityOperator& rho, const Eigensystem& sigma, double alpha) {
  detail::require_renyi_order(alpha, "petz_renyi");
  require_same_dim(rho.dim(), sigma.dim(), "petz_renyi");
  if (alpha > 1.0 && !support_contained(rho.matrix(), sigma))
    return detail::infinite(alpha, DivergenceKind::petz);
  return detail::renyi_from_overlap(detail::petz_overlap(rho.spectrum(), sigma, alpha), alpha,
                                    DivergenceKind::petz);
}

inline DivergenceValue petz_renyi(const DensityOperator& rho, const Matrix& sigma, double alpha) {
  return petz_renyi(rho, detail::psd_spectrum(sigma, "petz_renyi"), alpha);
}

/// D*_alpha(rho||sigma) = ln ||sigma^g rho sigma^g||_alpha^alpha / (alpha - 1).
inline DivergenceValue sandwiched_renyi(const DensityOperator& rho, const Eigensystem& sigma, double alpha) {
  detail::require_renyi_order(alpha, "sandwiched_renyi");
  require_same_dim(rho.dim(), sigma.dim(), "sandwiched_renyi");
  if (alpha > 1.0 && !support_contained(rho.matrix(), sigma))
    return detail::infinite(alpha, DivergenceKind::sandwiched);
  return detail::renyi_from_overlap(detail::sandwiched_overlap(rho.matrix(), sigma, alpha), alpha,
                                    DivergenceKind::sandwiched);
}

inline DivergenceValue sandwiched_renyi(const DensityOperator& rho, const Matrix& sigma, double alpha) {
  return sandwiched_renyi(rho, detail::psd_spectrum(sigma, "sandwiched_renyi"), alpha);
}

/// D(rho||sigma) = Tr[rho (ln rho - ln sigma)].
inline DivergenceValue relative_entropy(const DensityOperator& rho, const Eigensystem& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "relative_entropy");
  if (!support_contained(rho.matrix(), sigma)) return detail::infinite(1.0, DivergenceKind::umegaki);
  const Eigensystem& r = rho.spectrum();
  double rho_log_rho = 0.0;
  for (Eigen::Index i = 0; i < r.dim(); ++i)
    if (r.in_support(i)) rho_log_rho += r.values(i) * std::log(r.values(i));
  const double rho_log_sigma = trace_of_product(rho.matrix(), matrix_log(sigma)).real();
  return {rho_log_rho - rho_log_sigma, 1.0, DivergenceKind::umegaki, false};
}

inline DivergenceValue relative_entropy(const DensityOperator& rho, const Matrix& sigma) {
  return relative_entropy(rho, detail::psd_spectrum(sigma, "relative_entropy"));
}

/// V(rho||sigma) = Tr[rho (ln rho - ln sigma)^2] - D(rho||sigma)^2.
inline DivergenceValue relative_entropy_variance(const DensityOperator& rho, const Eigensystem& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "relative_entropy_variance");
  if (!support_contained(rho.matrix(), sigma)) return detail::infinite(1.0, DivergenceKind::variance);
  const Matrix diff = matrix_log(rho.spectrum()) - matrix_log(sigma);
  const Matrix half = matrix_power(rho.spectrum(), 0.5);
  const Matrix w = diff * half;
  const double second = w.squaredNorm();
  const double first = trace_of_product(rho.matrix(), diff).real();
  return {second - first * first, 1.0, DivergenceKind::variance, false};
}

inline DivergenceValue relative_entropy_variance(const DensityOperator& rho, const Matrix& sigma) {
  return relative_entropy_variance(rho, detail::psd_spectrum(sigma, "relative_entropy_variance"));
}

}  // namespace softcover

#endif  // SOFTCOVER_DIVERGENCES_HPP
