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

#include "softcover/divergences.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "softcover/cq_source.hpp"
#include "test_util.hpp"

namespace softcover {
namespace {

using testing_util::classical_kl;
using testing_util::classical_kl_variance;
using testing_util::classical_renyi;

const DensityOperator kHalf = DensityOperator::diagonal({0.5, 0.5});
const Matrix kSkew = diag({0.75, 0.25});

TEST(PetzRenyi, IdenticalArgumentsGiveZero) {
  std::mt19937_64 rng(1);
  const auto rho = testing_util::random_density(3, rng);
  for (double a : {0.5, 1.5, 2.0}) EXPECT_NEAR(petz_renyi(rho, rho.matrix(), a).value, 0.0, 1e-12);
}

TEST(PetzRenyi, CommutingPairMatchesScalarFormula) {
  const double oracle = classical_renyi({0.5, 0.5}, {0.75, 0.25}, 2.0);
  EXPECT_NEAR(oracle, 0.28768207245178085, 1e-15);
  EXPECT_NEAR(petz_renyi(kHalf, kSkew, 2.0).value, oracle, 1e-13);
}

TEST(PetzRenyi, SupportViolationIsInfinite) {
  const DensityOperator zero = DensityOperator::diagonal({1, 0});
  const DivergenceValue d = petz_renyi(zero, diag({0, 1}), 2.0);
  EXPECT_TRUE(d.support_violated);
  EXPECT_TRUE(std::isinf(d.value));
}

TEST(PetzRenyi, OrthogonalSupportsBelowOneAreInfinite) {
  const DivergenceValue d = petz_renyi(DensityOperator::diagonal({1, 0}), diag({0, 1}), 0.5);
  EXPECT_TRUE(d.support_violated);
}

TEST(PetzRenyi, PartialOverlapBelowOneIsFinite) {
  const DivergenceValue d = petz_renyi(DensityOperator::diagonal({0.5, 0.5}), diag({1, 0}), 0.5);
  EXPECT_FALSE(d.support_violated);
  EXPECT_NEAR(d.value, classical_renyi({0.5, 0.5}, {1.0, 0.0}, 0.5), 1e-13);
}

TEST(PetzRenyi, RejectsOrderOne) { EXPECT_THROW((void)petz_renyi(kHalf, kSkew, 1.0), ValidationError); }

TEST(SandwichedRenyi, CommutingPairEqualsPetz) {
  for (double a : {0.5, 0.75, 1.5, 2.0})
    EXPECT_NEAR(sandwiched_renyi(kHalf, kSkew, a).value, petz_renyi(kHalf, kSkew, a).value, 1e-10);
}

TEST(SandwichedRenyi, IdenticalArgumentsGiveZero) {
  std::mt19937_64 rng(2);
  const auto rho = testing_util::random_density(3, rng);
  for (double a : {0.5, 1.5, 2.0}) EXPECT_NEAR(sandwiched_renyi(rho, rho.matrix(), a).value, 0.0, 1e-12);
}

TEST(SandwichedRenyi, BelowPetzOnRandomQubits) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto rho = testing_util::random_density(2, rng);
    const auto sigma = testing_util::random_density(2, rng);
    EXPECT_LE(sandwiched_renyi(rho, sigma.matrix(), 1.5).value, petz_renyi(rho, sigma.matrix(), 1.5).value + 1e-10);
  }
}

TEST(SandwichedRenyi, SupportViolationIsInfinite) {
  EXPECT_TRUE(sandwiched_renyi(DensityOperator::diagonal({1, 0}), diag({0, 1}), 1.5).support_violated);
}

TEST(RelativeEntropy, IdenticalArgumentsGiveZero) {
  std::mt19937_64 rng(4);
  const auto rho = testing_util::random_density(3, rng);
  EXPECT_NEAR(relative_entropy(rho, rho.matrix()).value, 0.0, 1e-12);
}

TEST(RelativeEntropy, CommutingPairMatchesKl) {
  const double oracle = classical_kl({0.5, 0.5}, {0.75, 0.25});
  EXPECT_NEAR(oracle, 0.14384103622589042, 1e-15);
  EXPECT_NEAR(relative_entropy(kHalf, kSkew).value, oracle, 1e-13);
}

TEST(RelativeEntropy, RenyiLimit) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_models::random_mixed_density(3, rng);
    const auto sigma = random_models::random_mixed_density(3, rng);
    const double d = relative_entropy(rho, sigma.matrix()).value;
    for (double a : {1.0 - 1e-4, 1.0 + 1e-4}) {
      EXPECT_LE(std::abs(petz_renyi(rho, sigma.matrix(), a).value - d), 1e-3);
      EXPECT_LE(std::abs(sandwiched_renyi(rho, sigma.matrix(), a).value - d), 1e-3);
    }
  }
}

TEST(RelativeEntropy, NonNegativeAndZeroOnlyOnEquality) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    const auto rho = testing_util::random_density(3, rng);
    const auto sigma = random_models::random_mixed_density(3, rng);
    const double d = relative_entropy(rho, sigma.matrix()).value;
    EXPECT_GE(d, 0.0);
    if (trace_distance(rho, sigma) > 1e-3) EXPECT_GT(d, 0.0);
  }
}

TEST(RelativeEntropy, SupportViolationIsInfinite) {
  EXPECT_TRUE(relative_entropy(DensityOperator::diagonal({0.5, 0.5}), diag({1, 0})).support_violated);
}

TEST(RelativeEntropyVariance, IdenticalArgumentsGiveZero) {
  std::mt19937_64 rng(7);
  const auto rho = testing_util::random_density(3, rng);
  EXPECT_NEAR(relative_entropy_variance(rho, rho.matrix()).value, 0.0, 1e-12);
}

TEST(RelativeEntropyVariance, CommutingPairMatchesScalarVariance) {
  const double oracle = classical_kl_variance({0.5, 0.5}, {0.75, 0.25});
  EXPECT_NEAR(oracle, 0.3017372402031455, 1e-15);
  EXPECT_NEAR(relative_entropy_variance(kHalf, kSkew).value, oracle, 1e-13);
}

TEST(RelativeEntropyVariance, OrthogonalPureJointStateHasZeroVariance) {
  const CqSource cq = testing_util::binary_orthogonal();
  const DensityOperator joint(joint_state(cq));
  EXPECT_NEAR(relative_entropy_variance(joint, product_of_marginals(cq)).value, 0.0, 1e-12);
}

TEST(RelativeEntropyVariance, SupportViolationIsInfinite) {
  EXPECT_TRUE(relative_entropy_variance(DensityOperator::diagonal({0.5, 0.5}), diag({1, 0})).support_violated);
}

TEST(RelativeEntropyVariance, NonNegativeOnRandomPairs) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto rho = testing_util::random_density(3, rng);
    const auto sigma = random_models::random_mixed_density(3, rng);
    EXPECT_GE(relative_entropy_variance(rho, sigma.matrix()).value, -1e-10);
  }
}

TEST(RenyiProperties, MonotoneInOrder) {
  std::mt19937_64 rng(9);
  const std::vector<double> grid{0.5, 0.75, 0.9, 1.1, 1.5, 2.0};
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_models::random_mixed_density(3, rng);
    const auto sigma = random_models::random_mixed_density(3, rng);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      EXPECT_LE(petz_renyi(rho, sigma.matrix(), grid[i]).value, petz_renyi(rho, sigma.matrix(), grid[i + 1]).value + 1e-12);
      EXPECT_LE(sandwiched_renyi(rho, sigma.matrix(), grid[i]).value,
                sandwiched_renyi(rho, sigma.matrix(), grid[i + 1]).value + 1e-12);
    }
  }
}

TEST(RenyiProperties, SandwichedBelowPetzAboveOne) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 30; ++t) {
    const auto rho = testing_util::random_density(3, rng);
    const auto sigma = random_models::random_mixed_density(3, rng);
    for (double a : {1.1, 1.5, 2.0, 3.0})
      EXPECT_LE(sandwiched_renyi(rho, sigma.matrix(), a).value, petz_renyi(rho, sigma.matrix(), a).value + 1e-10);
  }
}

TEST(RenyiProperties, AdditiveOnProducts) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const auto r1 = testing_util::random_density(2, rng);
    const auto r2 = testing_util::random_density(2, rng);
    const auto s1 = random_models::random_mixed_density(2, rng);
    const auto s2 = random_models::random_mixed_density(2, rng);
    const DensityOperator r12(kron(r1.matrix(), r2.matrix()));
    const Matrix s12 = kron(s1.matrix(), s2.matrix());
    for (double a : {0.5, 1.5, 2.0}) {
      EXPECT_NEAR(petz_renyi(r12, s12, a).value,
                  petz_renyi(r1, s1.matrix(), a).value + petz_renyi(r2, s2.matrix(), a).value, 1e-9);
      EXPECT_NEAR(sandwiched_renyi(r12, s12, a).value,
                  sandwiched_renyi(r1, s1.matrix(), a).value + sandwiched_renyi(r2, s2.matrix(), a).value, 1e-9);
    }
  }
}

}  // namespace
}  // namespace softcover
