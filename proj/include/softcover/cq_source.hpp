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

#ifndef SOFTCOVER_CQ_SOURCE_HPP
#define SOFTCOVER_CQ_SOURCE_HPP

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "softcover/errors.hpp"
#include "softcover/linalg.hpp"

namespace softcover {

using Rational = boost::rational<std::int64_t>;

inline constexpr double kPriorTolerance = 1e-12;
inline constexpr std::int64_t kMaxPriorDenominator = 1000000;

/// Best rational approximation of x with denominator <= max_den, accepted
/// only when it lies within tol of x.
inline std::optional<Rational> approximate_rational(double x, std::int64_t max_den = kMaxPriorDenominator,
                                                    double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents h/k.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(r);
    if (std::abs(a_real) > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= 1e-15) break;
    const double frac = r - a_real;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return std::nullopt;
  if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) > tol) return std::nullopt;
  return Rational(h1, k1);
}

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

/// Classical-quantum source: prior p_X over a finite alphabet and the channel
/// x -> rho_B^x. Immutable after construction.
class CqSource {
 public:
  CqSource(std::vector<double> prior, std::vector<DensityOperator> states,
           std::vector<std::string> labels = {})
      : prior_(std::move(prior)), states_(std::move(states)), labels_(std::move(labels)) {
    validate();
  }

  CqSource(const std::vector<Rational>& prior, std::vector<DensityOperator> states,
           std::vector<std::string> labels = {})
      : exact_prior_(prior), states_(std::move(states)), labels_(std::move(labels)) {
    Rational total(0);
    for (const auto& q : prior) {
      if (q < Rational(0)) throw ValidationError("CqSource: negative prior entry");
      total += q;
      prior_.push_back(to_double(q));
    }
    if (total != Rational(1)) throw ValidationError("CqSource: rational prior does not sum to 1");
    validate();
  }

  [[nodiscard]] std::size_t alphabet_size() const { return prior_.size(); }
  [[nodiscard]] const std::vector<double>& prior() const { return prior_; }
  [[nodiscard]] double prior(std::size_t x) const { return prior_[x]; }
  [[nodiscard]] const std::vector<DensityOperator>& states() const { return states_; }
  [[nodiscard]] const DensityOperator& state(std::size_t x) const { return states_[x]; }
  [[nodiscard]] Eigen::Index output_dim() const { return states_.front().dim(); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::optional<std::vector<Rational>>& exact_prior() const { return exact_prior_; }

  /// rho_B = sum_x p(x) rho_B^x.
  [[nodiscard]] const DensityOperator& marginal() const { return *marginal_; }

  /// Prior as rationals: the exact prior when given, otherwise each entry
  /// rounded to a rational with denominator <= 1e6 within 1e-9.
  [[nodiscard]] std::vector<Rational> rational_prior() const {
    if (exact_prior_) return *exact_prior_;
    std::vector<Rational> out;
    for (std::size_t x = 0; x < prior_.size(); ++x) {
      auto q = approximate_rational(prior_[x]);
      if (!q) {
        std::ostringstream os;
        os << "prior entry for letter " << x << " (" << prior_[x]
           << ") has no rational form with denominator <= " << kMaxPriorDenominator;
        throw ValidationError(os.str());
      }
      out.push_back(*q);
    }
    return out;
  }

 private:
  void validate() {
    if (prior_.empty()) throw ValidationError("CqSource: empty alphabet");
    if (prior_.size() != states_.size()) {
      std::ostringstream os;
      os << "CqSource: " << prior_.size() << " prior entries but " << states_.size() << " states";
      throw ValidationError(os.str());
    }
    if (!labels_.empty() && labels_.size() != prior_.size())
      throw ValidationError("CqSource: label count does not match alphabet size");
    double total = 0.0;
    for (std::size_t x = 0; x < prior_.size(); ++x) {
      if (!(prior_[x] >= 0.0)) {
        std::ostringstream os;
        os << "CqSource: prior entry " << x << " is negative or NaN";
        throw ValidationError(os.str());
      }
      total += prior_[x];
    }
    if (!(std::abs(total - 1.0) <= kPriorTolerance)) {
      std::ostringstream os;
      os << "CqSource: prior sums to " << total << ", expected 1";
      throw ValidationError(os.str());
    }
    const Eigen::Index d = states_.front().dim();
    for (std::size_t x = 0; x < states_.size(); ++x) require_same_dim(states_[x].dim(), d, "CqSource");
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t x = 0; x < states_.size(); ++x) m += prior_[x] * states_[x].matrix();
    m /= m.trace().real();
    marginal_.emplace(hermitian_part(m));
  }

  std::optional<std::vector<Rational>> exact_prior_;
  std::vector<double> prior_;
  std::vector<DensityOperator> states_;
  std::vector<std::string> labels_;
  std::optional<DensityOperator> marginal_;
};

inline const DensityOperator& marginal(const CqSource& cq) { return cq.marginal(); }

/// The c-q state rho_XB = sum_x p(x) |x><x| (x) rho_x as a block-diagonal matrix.
inline Matrix joint_state(const CqSource& cq) {
  const Eigen::Index d = cq.output_dim();
  const auto k = static_cast<Eigen::Index>(cq.alphabet_size());
  Matrix out = Matrix::Zero(k * d, k * d);
  for (Eigen::Index x = 0; x < k; ++x)
    out.block(x * d, x * d, d, d) = cq.prior(static_cast<std::size_t>(x)) * cq.state(static_cast<std::size_t>(x)).matrix();
  return out;
}

/// rho_X (x) rho_B as a block-diagonal matrix.
inline Matrix product_of_marginals(const CqSource& cq) {
  const Eigen::Index d = cq.output_dim();
  const auto k = static_cast<Eigen::Index>(cq.alphabet_size());
  Matrix out = Matrix::Zero(k * d, k * d);
  for (Eigen::Index x = 0; x < k; ++x)
    out.block(x * d, x * d, d, d) = cq.prior(static_cast<std::size_t>(x)) * cq.marginal().matrix();
  return out;
}

/// Source on the product alphabet with prior p_a (x) p_b and states rho_a (x) rho_b.
inline CqSource product_source(const CqSource& a, const CqSource& b) {
  std::vector<double> prior;
  std::vector<DensityOperator> states;
  for (std::size_t x = 0; x < a.alphabet_size(); ++x)
    for (std::size_t y = 0; y < b.alphabet_size(); ++y) {
      prior.push_back(a.prior(x) * b.prior(y));
      states.emplace_back(kron(a.state(x).matrix(), b.state(y).matrix()));
    }
  double total = 0.0;
  for (double p : prior) total += p;
  for (double& p : prior) p /= total;
  return CqSource(std::move(prior), std::move(states));
}

}  // namespace softcover

#endif  // SOFTCOVER_CQ_SOURCE_HPP
