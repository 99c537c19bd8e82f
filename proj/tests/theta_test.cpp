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

#include "softcover/theta.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

namespace softcover {
namespace {

OperatorField rademacher() {
  return OperatorField({0.5, 0.5}, {Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, -1.0)});
}

OperatorField random_qubit_field(std::mt19937_64& rng, std::size_t points) {
  std::vector<double> w(points, 1.0 / static_cast<double>(points));
  std::vector<Matrix> v;
  for (std::size_t i = 0; i < points; ++i) v.push_back(random_models::random_hermitian(2, rng));
  return OperatorField(w, v);
}

TEST(OperatorField, Validation) {
  EXPECT_THROW(OperatorField({0.5, 0.6}, {diag({1}), diag({1})}), ValidationError);
  EXPECT_THROW(OperatorField({0.5}, {diag({1}), diag({1})}), ValidationError);
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  EXPECT_THROW(OperatorField::constant(skew), ValidationError);
}

TEST(LpNorm, ConstantFieldIsSchattenNorm) {
  std::mt19937_64 rng(1);
  const Matrix a = random_models::random_hermitian(3, rng);
  for (double p : {1.0, 1.5, 2.0, 3.0})
    EXPECT_NEAR(lp_norm(OperatorField::constant(a), p), schatten_norm(a, p), 1e-12);
}

TEST(LpNorm, RademacherHasUnitNorm) {
  for (double p : {1.0, 1.3, 2.0, 5.0}) EXPECT_NEAR(lp_norm(rademacher(), p), 1.0, 1e-15);
}

TEST(LpNorm, OneNormIsWeightedTraceNorm) {
  std::mt19937_64 rng(2);
  const OperatorField f = random_qubit_field(rng, 3);
  double expected = 0.0;
  for (std::size_t w = 0; w < 3; ++w) expected += f.weight(w) * eigvalsh(f.value(w)).cwiseAbs().sum();
  EXPECT_NEAR(lp_norm(f, 1.0), expected, 1e-12);
  EXPECT_THROW((void)lp_norm(f, 0.5), ValidationError);
}

TEST(ThetaApply, AnnihilatesConstants) {
  std::mt19937_64 rng(3);
  const Matrix a = random_models::random_hermitian(2, rng);
  const OperatorField f({0.25, 0.75}, {a, a});
  const OperatorField t = theta_apply(f, 3);
  EXPECT_EQ(t.size(), 8u);
  for (const auto& v : t.values()) EXPECT_LT(v.norm(), 1e-14);
}

TEST(ThetaApply, SingleCopyCentres) {
  std::mt19937_64 rng(4);
  const OperatorField f = random_qubit_field(rng, 3);
  const OperatorField t = theta_apply(f, 1);
  const Matrix mean = expectation(f);
  for (std::size_t w = 0; w < 3; ++w) EXPECT_LT((t.value(w) - (f.value(w) - mean)).norm(), 1e-14);
}

TEST(ThetaApply, MeanIsZero) {
  std::mt19937_64 rng(5);
  const OperatorField f = random_qubit_field(rng, 3);
  for (int m : {2, 3, 4}) EXPECT_LT(expectation(theta_apply(f, m)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ThetaApply, ProductSpaceGuard) {
  std::mt19937_64 rng(6);
  const OperatorField f = random_qubit_field(rng, 10);
  EXPECT_THROW((void)theta_apply(f, 7), ValidationError);
}

TEST(Embedding, IsometryAndOrthogonality) {
  std::mt19937_64 rng(7);
  const OperatorField f = random_qubit_field(rng, 3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(lp_norm(embed(f, i, 3), 1.5), lp_norm(f, 1.5), 1e-12);
  EXPECT_LE(lp_norm(OperatorField::constant(expectation(f)), 1.5), lp_norm(f, 1.5) + 1e-12);
  const Matrix mean = expectation(f);
  std::vector<Matrix> c;
  for (const auto& v : f.values()) c.push_back(v - mean);
  const OperatorField g(f.weights(), c);
  EXPECT_LT(std::abs(inner_product(embed(g, 0, 3), embed(g, 2, 3))), 1e-12);
  EXPECT_THROW((void)embed(f, 3, 3), ValidationError);
}

TEST(ThetaBound, RademacherIsTightAtTwo) {
  for (int m = 1; m <= 6; ++m) {
    const ThetaBoundCheck c = verify_theta_bound(rademacher(), m, 2.0);
    EXPECT_NEAR(c.lhs, 1.0 / std::sqrt(m), 1e-12);
    EXPECT_NEAR(c.rhs, 1.0 / std::sqrt(m), 1e-12);
    EXPECT_TRUE(c.holds);
  }
}

TEST(ThetaBound, ConstantFieldHasZeroLeftSide) {
  const ThetaBoundCheck c = verify_theta_bound(OperatorField::constant(diag({0.3, -1.0})), 3, 1.5);
  EXPECT_NEAR(c.lhs, 0.0, 1e-15);
  EXPECT_TRUE(c.holds);
}

TEST(ThetaBound, HoldsOnRandomQubitFields) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const OperatorField f = random_qubit_field(rng, 2 + static_cast<std::size_t>(t % 2));
    for (int m : {2, 3, 4})
      for (double p : {1.0, 1.5, 2.0}) EXPECT_TRUE(verify_theta_bound(f, m, p).holds) << t << " " << m << " " << p;
  }
}

TEST(ThetaBound, RejectsOrderOutsideRange) {
  EXPECT_THROW((void)verify_theta_bound(rademacher(), 2, 2.5), ValidationError);
  EXPECT_THROW((void)verify_theta_bound(rademacher(), 2, 0.9), ValidationError);
}

}  // namespace
}  // namespace softcover
