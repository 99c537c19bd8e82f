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

#ifndef SOFTCOVER_THETA_HPP
#define SOFTCOVER_THETA_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "softcover/errors.hpp"
#include "softcover/linalg.hpp"

namespace softcover {

inline constexpr double kWeightTolerance = 1e-12;
inline constexpr double kMaxProductPoints = 1e6;

/// Hermitian-matrix-valued function on a finite probability space.
class OperatorField {
 public:
  OperatorField(std::vector<double> weights, std::vector<Matrix> values, double weight_tolerance = kWeightTolerance)
      : weights_(std::move(weights)), values_(std::move(values)) {
    if (weights_.empty()) throw ValidationError("OperatorField: empty space");
    if (weights_.size() != values_.size()) throw ValidationError("OperatorField: weight/value count mismatch");
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0)) throw ValidationError("OperatorField: negative weight");
      total += w;
    }
    if (std::abs(total - 1.0) > weight_tolerance) {
      std::ostringstream os;
      os << "OperatorField: weights sum to " << total;
      throw ValidationError(os.str());
    }
    for (const auto& v : values_) {
      require_hermitian(v, "OperatorField");
      if (v.rows() != values_.front().rows()) throw ValidationError("OperatorField: values differ in dimension");
    }
  }

  /// The field equal to `value` on a one-point space.
  static OperatorField constant(const Matrix& value) { return OperatorField({1.0}, {value}); }

  [[nodiscard]] std::size_t size() const { return weights_.size(); }
  [[nodiscard]] Eigen::Index dim() const { return values_.front().rows(); }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] const std::vector<Matrix>& values() const { return values_; }
  [[nodiscard]] double weight(std::size_t w) const { return weights_[w]; }
  [[nodiscard]] const Matrix& value(std::size_t w) const { return values_[w]; }

 private:
  std::vector<double> weights_;
  std::vector<Matrix> values_;
};

/// (sum_w mu(w) ||f(w)||_p^p)^(1/p).
inline double lp_norm(const OperatorField& f, double p) {
  if (!(p >= 1.0)) throw ValidationError("lp_norm: p must be at least 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t w = 0; w < f.size(); ++w)
      if (f.weight(w) > 0.0) m = std::max(m, schatten_norm_hermitian(f.value(w), p));
    return m;
  }
  double s = 0.0;
  for (std::size_t w = 0; w < f.size(); ++w) s += f.weight(w) * std::pow(schatten_norm_hermitian(f.value(w), p), p);
  return std::pow(s, 1.0 / p);
}

/// E f = sum_w mu(w) f(w).
inline Matrix expectation(const OperatorField& f) {
  Matrix m = Matrix::Zero(f.dim(), f.dim());
  for (std::size_t w = 0; w < f.size(); ++w) m += f.weight(w) * f.value(w);
  return m;
}

/// sum_w mu(w) Tr[f(w)^dagger g(w)] on a common space.
inline Complex inner_product(const OperatorField& f, const OperatorField& g) {
  if (f.size() != g.size() || f.dim() != g.dim()) throw ValidationError("inner_product: fields on different spaces");
  Complex s = 0.0;
  for (std::size_t w = 0; w < f.size(); ++w) s += f.weight(w) * trace_of_product(f.value(w).adjoint(), g.value(w));
  return s;
}

namespace detail {

inline std::size_t product_space_size(std::size_t points, int m, const char* who) {
  if (m < 1) throw ValidationError(std::string(who) + ": M must be positive");
  const double total = std::pow(static_cast<double>(points), m);
  if (total > kMaxProductPoints) {
    std::ostringstream os;
    os << who << ": product space has " << total << " points, above the limit " << kMaxProductPoints;
    throw ValidationError(os.str());
  }
  return static_cast<std::size_t>(total);
}

// Mixed-radix digits of a product-space point, most significant first.
inline void decode(std::size_t index, std::size_t radix, std::vector<std::size_t>& digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = index % radix;
    index /= radix;
  }
}

template <class Value>
OperatorField product_field(const OperatorField& f, int m, const char* who, Value&& value) {
  const std::size_t total = product_space_size(f.size(), m, who);
  std::vector<double> weights(total);
  std::vector<Matrix> values(total);
  std::vector<std::size_t> digits(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < total; ++k) {
    decode(k, f.size(), digits);
    double w = 1.0;
    for (std::size_t d : digits) w *= f.weight(d);
    weights[k] = w;
    values[k] = value(digits);
  }
  // Summation rounding grows with the number of points.
  const double tol = std::max(kWeightTolerance, 4.0 * static_cast<double>(total) * 0x1.0p-52);
  return OperatorField(std::move(weights), std::move(values), tol);
}

}  // namespace detail

/// pi_i(f): f read off the i-th coordinate of the M-fold product space.
inline OperatorField embed(const OperatorField& f, int i, int m) {
  if (i < 0 || i >= m) throw ValidationError("embed: coordinate out of range");
  return detail::product_field(f, m, "embed",
                               [&](const std::vector<std::size_t>& d) { return f.value(d[static_cast<std::size_t>(i)]); });
}

/// Theta(f) = (1/M) sum_i pi_i(f) - E f on the M-fold product space.
inline OperatorField theta_apply(const OperatorField& f, int m) {
  const Matrix mean = expectation(f);
  return detail::product_field(f, m, "theta_apply", [&](const std::vector<std::size_t>& d) {
    Matrix v = -mean;
    for (std::size_t j : d) v += f.value(j) / static_cast<double>(d.size());
    return Matrix(hermitian_part(v));
  });
}

struct ThetaBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// ||Theta(f)||_p <= 2^{2/p - 1} M^{(1-p)/p} ||f||_p, p in [1, 2].
inline ThetaBoundCheck verify_theta_bound(const OperatorField& f, int m, double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw ValidationError("verify_theta_bound: p must lie in [1, 2]");
  ThetaBoundCheck c;
  c.lhs = lp_norm(theta_apply(f, m), p);
  c.rhs = std::pow(2.0, 2.0 / p - 1.0) * std::pow(static_cast<double>(m), (1.0 - p) / p) * lp_norm(f, p);
  c.holds = c.lhs <= c.rhs + 1e-9;
  return c;
}

}  // namespace softcover

#endif  // SOFTCOVER_THETA_HPP
