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

#include "softcover/info.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "softcover/oracles.hpp"
#include "test_util.hpp"

namespace softcover {
namespace {

using testing_util::binary_orthogonal;
using testing_util::model_a;

constexpr double kLn2 = std::numbers::ln2;

// Model A has commuting letters, so the joint state is diagonal with
// eigenvalues p(x) W(y|x) and the product of marginals p(x) q(y).
struct ClassicalJoint {
  std::vector<double> joint;
  std::vector<double> product;
};

ClassicalJoint classical_joint(const CqSource& cq) {
  const auto w = commuting_channel(cq);
  std::vector<double> q(w.front().size(), 0.0);
  for (std::size_t x = 0; x < w.size(); ++x)
    for (std::size_t y = 0; y < q.size(); ++y) q[y] += cq.prior(x) * w[x][y];
  ClassicalJoint out;
  for (std::size_t x = 0; x < w.size(); ++x)
    for (std::size_t y = 0; y < q.size(); ++y) {
      out.joint.push_back(cq.prior(x) * w[x][y]);
      out.product.push_back(cq.prior(x) * q[y]);
    }
  return out;
}

CqSource random_qubit_source(std::mt19937_64& rng) {
  return random_models::random_cq_source(2, 2, rng);
}

TEST(Marginal, SingleLetterIsThatState) {
  std::mt19937_64 rng(1);
  const auto rho = testing_util::random_density(3, rng);
  const CqSource cq(std::vector<Rational>{Rational(1)}, {rho});
  EXPECT_LT((marginal(cq).matrix() - rho.matrix()).norm(), 1e-12);
}

TEST(Marginal, KnownModels) {
  EXPECT_LT((marginal(binary_orthogonal()).matrix() - diag({0.5, 0.5})).norm(), 1e-15);
  EXPECT_LT((marginal(model_a()).matrix() - diag({0.75, 0.25})).norm(), 1e-15);
}

TEST(MutualInformation, KnownModels) {
  std::mt19937_64 rng(2);
  EXPECT_NEAR(mutual_information(testing_util::all_equal(testing_util::random_density(2, rng), 3)), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(binary_orthogonal()), kLn2, 1e-12);
  const double oracle = testing_util::shannon_entropy({0.75, 0.25}) -
                        0.5 * (testing_util::shannon_entropy({1, 0}) + testing_util::shannon_entropy({0.5, 0.5}));
  EXPECT_NEAR(oracle, 0.21576155433883565, 1e-15);
  EXPECT_NEAR(mutual_information(model_a()), oracle, 1e-12);
}

TEST(MutualInformation, MatchesJointRelativeEntropy) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const CqSource cq = random_models::random_cq_source(3, 2, rng);
    const DensityOperator joint(joint_state(cq));
    EXPECT_NEAR(mutual_information(cq), relative_entropy(joint, product_of_marginals(cq)).value, 1e-10);
  }
}

TEST(Variances, DegenerateModelsVanish) {
  std::mt19937_64 rng(4);
  const auto same = variances(testing_util::all_equal(testing_util::random_density(2, rng)));
  EXPECT_NEAR(same.v, 0.0, 1e-12);
  EXPECT_NEAR(same.v_breve, 0.0, 1e-12);
  const auto orth = variances(binary_orthogonal());
  EXPECT_NEAR(orth.v, 0.0, 1e-12);
  EXPECT_NEAR(orth.v_breve, 0.0, 1e-12);
}

TEST(Variances, ModelAMatchesScalarOracle) {
  const auto cj = classical_joint(model_a());
  const double v_oracle = testing_util::classical_kl_variance(cj.joint, cj.product);
  const double vb_oracle = 0.5 * testing_util::classical_kl_variance({1, 0}, {0.75, 0.25}) +
                           0.5 * testing_util::classical_kl_variance({0.5, 0.5}, {0.75, 0.25});
  const auto v = variances(model_a());
  EXPECT_NEAR(v.v, v_oracle, 1e-12);
  EXPECT_NEAR(v.v_breve, vb_oracle, 1e-12);
  EXPECT_GT(v.v, 0.05);
}

TEST(Variances, MatchJointDivergenceRoute) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const CqSource cq = random_models::random_cq_source(3, 2, rng);
    const DensityOperator joint(joint_state(cq));
    const auto v = variances(cq);
    EXPECT_NEAR(v.v, relative_entropy_variance(joint, product_of_marginals(cq)).value, 1e-9);
    double vb = 0.0;
    for (std::size_t x = 0; x < cq.alphabet_size(); ++x)
      vb += cq.prior(x) * relative_entropy_variance(cq.state(x), cq.marginal().matrix()).value;
    EXPECT_NEAR(v.v_breve, vb, 1e-9);
    EXPECT_LE(v.v_breve, v.v + 1e-12);
  }
}

TEST(PetzDown, BinaryOrthogonalIsLn2) {
  for (double a : {0.55, 0.75, 0.9}) {
    EXPECT_NEAR(petz_down_renyi_info(binary_orthogonal(), a).value, kLn2, 1e-12);
    EXPECT_NEAR(petz_down_augustin_info(binary_orthogonal(), a).value, kLn2, 1e-12);
  }
}

TEST(PetzDown, AllEqualIsZero) {
  std::mt19937_64 rng(6);
  const CqSource cq = testing_util::all_equal(testing_util::random_density(3, rng));
  EXPECT_NEAR(petz_down_renyi_info(cq, 0.75).value, 0.0, 1e-12);
  EXPECT_NEAR(petz_down_augustin_info(cq, 0.75).value, 0.0, 1e-12);
}

TEST(PetzDown, ModelAMatchesScalarFormula) {
  const auto cj = classical_joint(model_a());
  EXPECT_NEAR(petz_down_renyi_info(model_a(), 0.75).value,
              testing_util::classical_renyi(cj.joint, cj.product, 0.75), 1e-12);
  const double aug = 0.5 * testing_util::classical_renyi({1, 0}, {0.75, 0.25}, 0.75) +
                     0.5 * testing_util::classical_renyi({0.5, 0.5}, {0.75, 0.25}, 0.75);
  EXPECT_NEAR(petz_down_augustin_info(model_a(), 0.75).value, aug, 1e-12);
}

TEST(PetzDown, AugustinDominatesBelowOne) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const CqSource cq = random_models::random_cq_source(3, 2, rng);
    for (double a : {0.55, 0.75, 0.95})
      EXPECT_GE(petz_down_augustin_info(cq, a).value, petz_down_renyi_info(cq, a).value - 1e-10);
  }
}

TEST(PetzDown, RejectsBadOrders) {
  EXPECT_THROW((void)petz_down_renyi_info(model_a(), 1.0), ValidationError);
  EXPECT_THROW((void)petz_down_augustin_info(model_a(), 2.5), ValidationError);
}

TEST(Sandwiched, BinaryOrthogonalIsLn2) {
  for (double a : {1.25, 1.5, 2.0}) {
    EXPECT_NEAR(classical_sibson_closed_form(binary_orthogonal(), a), kLn2, 1e-12);
    EXPECT_NEAR(sandwiched_renyi_info(binary_orthogonal(), a).value, kLn2, 1e-9);
    EXPECT_NEAR(sandwiched_augustin_info(binary_orthogonal(), a).value, kLn2, 1e-9);
  }
}

TEST(Sandwiched, AllEqualIsZeroAtMarginal) {
  std::mt19937_64 rng(8);
  const auto rho = random_models::random_mixed_density(3, rng);
  const CqSource cq = testing_util::all_equal(rho);
  for (auto f : {&sandwiched_renyi_info, &sandwiched_augustin_info}) {
    const InfoResult r = f(cq, 1.5, {});
    EXPECT_NEAR(r.value, 0.0, 1e-10);
    ASSERT_TRUE(r.optimizer.has_value());
    EXPECT_LT(trace_distance(*r.optimizer, rho), 1e-6);
  }
}

TEST(Sandwiched, ModelAAgreesWithBlochGrid) {
  const BlochGridResult grid = bloch_grid_oracle(model_a(), 1.5, 400);
  const double renyi = sandwiched_renyi_info(model_a(), 1.5).value;
  const double augustin = sandwiched_augustin_info(model_a(), 1.5).value;
  EXPECT_LE(renyi, grid.renyi + 1e-10);
  EXPECT_LE(augustin, grid.augustin + 1e-10);
  EXPECT_NEAR(renyi, grid.renyi, 1e-5);
  EXPECT_NEAR(augustin, grid.augustin, 1e-5);
}

TEST(Sandwiched, CommutingModelsMatchClassicalOracles) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const CqSource cq = random_models::random_commuting_source(3, 3, rng);
    for (double a : {1.1, 1.5, 2.0}) {
      EXPECT_NEAR(sandwiched_renyi_info(cq, a).value, classical_sibson_closed_form(cq, a), 1e-6);
      EXPECT_NEAR(sandwiched_augustin_info(cq, a).value, classical_augustin_oracle(cq, a), 1e-6);
    }
  }
}

TEST(Sandwiched, ObjectiveAtOptimizerMatchesDivergence) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 5; ++t) {
    const CqSource cq = random_models::random_cq_source(2, 3, rng);
    const InfoResult r = sandwiched_renyi_info(cq, 1.5);
    const Matrix pxs = kron(diag({cq.prior(0), cq.prior(1)}), r.optimizer->matrix());
    const DensityOperator joint(joint_state(cq));
    EXPECT_NEAR(sandwiched_renyi(joint, pxs, 1.5).value, r.value, 1e-9);

    const InfoResult a = sandwiched_augustin_info(cq, 1.5);
    double avg = 0.0;
    for (std::size_t x = 0; x < cq.alphabet_size(); ++x)
      avg += cq.prior(x) * sandwiched_renyi(cq.state(x), a.optimizer->matrix(), 1.5).value;
    EXPECT_NEAR(avg, a.value, 1e-9);
  }
}

TEST(Sandwiched, RestartsAgree) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    const CqSource cq = random_models::random_cq_source(3, 2, rng);
    SolverConfig cfg;
    cfg.restarts = 3;
    cfg.seed = 17 + static_cast<std::uint64_t>(t);
    const InfoResult r = sandwiched_renyi_info(cq, 1.5, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.gap_estimate, 1e-7);
    EXPECT_LE(sandwiched_augustin_info(cq, 1.5, cfg).gap_estimate, 1e-7);
  }
}

TEST(Sandwiched, AugustinBelowRenyi) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const CqSource cq = random_models::random_cq_source(3, 2, rng);
    for (double a : {1.25, 1.75})
      EXPECT_LE(sandwiched_augustin_info(cq, a).value, sandwiched_renyi_info(cq, a).value + 1e-8);
  }
}

TEST(Sandwiched, MonotoneInOrder) {
  std::mt19937_64 rng(13);
  const std::vector<double> grid{1.05, 1.25, 1.5, 1.75, 2.0};
  for (int t = 0; t < 5; ++t) {
    const CqSource cq = random_qubit_source(rng);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      EXPECT_LE(sandwiched_renyi_info(cq, grid[i]).value, sandwiched_renyi_info(cq, grid[i + 1]).value + 1e-9);
      EXPECT_LE(sandwiched_augustin_info(cq, grid[i]).value,
                sandwiched_augustin_info(cq, grid[i + 1]).value + 1e-9);
    }
  }
}

TEST(Sandwiched, AdditiveOnProductSource) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 3; ++t) {
    const CqSource cq = random_qubit_source(rng);
    const CqSource sq = product_source(cq, cq);
    EXPECT_NEAR(sandwiched_renyi_info(sq, 1.5).value, 2.0 * sandwiched_renyi_info(cq, 1.5).value, 1e-6);
  }
}

TEST(Sandwiched, ApproachesMutualInformation) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 5; ++t) {
    const CqSource cq = random_models::random_cq_source(2, 2, rng);
    const double h = 1e-3;
    const double gap = std::abs(sandwiched_renyi_info(cq, 1.0 + h).value - mutual_information(cq));
    EXPECT_LE(gap, h * (variances(cq).v / 2.0 + 1.0));
  }
}

// Two-point Richardson extrapolation of a forward difference quotient.
double slope_at_one(const std::function<double(double)>& f, double f1) {
  const double h1 = 1e-2, h2 = 1e-3;
  const double s1 = (f(1.0 + h1) - f1) / h1;
  const double s2 = (f(1.0 + h2) - f1) / h2;
  return s2 - h2 * (s1 - s2) / (h1 - h2);
}

TEST(Sandwiched, SlopesAtOneAreHalfVariances) {
  const CqSource cq = model_a();
  const double mi = mutual_information(cq);
  const auto v = variances(cq);
  ASSERT_GT(v.v, 0.05);
  const double renyi = slope_at_one([&](double a) { return sandwiched_renyi_info(cq, a).value; }, mi);
  const double augustin = slope_at_one([&](double a) { return sandwiched_augustin_info(cq, a).value; }, mi);
  const double petz = slope_at_one([&](double a) { return petz_down_renyi_info(cq, 2.0 - 1.0 / a).value; }, mi);
  const double petz_aug =
      slope_at_one([&](double a) { return petz_down_augustin_info(cq, 2.0 - 1.0 / a).value; }, mi);
  EXPECT_NEAR(renyi, v.v / 2.0, 0.05 * v.v / 2.0);
  EXPECT_NEAR(augustin, v.v_breve / 2.0, 0.05 * v.v_breve / 2.0);
  EXPECT_NEAR(petz, v.v / 2.0, 0.05 * v.v / 2.0);
  EXPECT_NEAR(petz_aug, v.v_breve / 2.0, 0.05 * v.v_breve / 2.0);
}

TEST(Sandwiched, RejectsBadOrders) {
  EXPECT_THROW((void)sandwiched_renyi_info(model_a(), 1.0), ValidationError);
  EXPECT_THROW((void)sandwiched_augustin_info(model_a(), 2.5), ValidationError);
}

TEST(Oracles, SibsonIdentityChannelIsLogAlphabet) {
  std::vector<DensityOperator> states;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> e(3, 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    states.push_back(DensityOperator::diagonal(e));
  }
  const CqSource cq(std::vector<Rational>(3, Rational(1, 3)), states);
  EXPECT_NEAR(classical_sibson_closed_form(cq, 1.5), std::log(3.0), 1e-12);
  EXPECT_NEAR(classical_augustin_oracle(cq, 1.5), std::log(3.0), 1e-12);
}

TEST(Oracles, AllEqualIsZero) {
  const CqSource cq = testing_util::all_equal(DensityOperator::diagonal({0.3, 0.7}));
  EXPECT_NEAR(classical_sibson_closed_form(cq, 1.5), 0.0, 1e-12);
  EXPECT_NEAR(classical_augustin_oracle(cq, 1.5), 0.0, 1e-12);
  const BlochGridResult grid = bloch_grid_oracle(cq, 1.5, 100);
  EXPECT_NEAR(grid.renyi, 0.0, 1e-3);
  EXPECT_NEAR(grid.renyi_point[2], -0.4, 0.05);
}

TEST(Oracles, NonCommutingRejected) {
  const Ket plus = Ket::Constant(2, Complex(1.0 / std::sqrt(2.0), 0.0));
  const CqSource cq(std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
                    {DensityOperator::diagonal({1, 0}), DensityOperator::pure(plus)});
  EXPECT_THROW((void)classical_sibson_closed_form(cq, 1.5), ValidationError);
}

TEST(Oracles, GridRefinementConverges) {
  std::mt19937_64 rng(16);
  const CqSource cq = random_qubit_source(rng);
  const BlochGridResult coarse = bloch_grid_oracle(cq, 1.5, 200);
  const BlochGridResult fine = bloch_grid_oracle(cq, 1.5, 400);
  EXPECT_LE(fine.renyi, coarse.renyi);
  EXPECT_LT(coarse.renyi - fine.renyi, 1e-4);
  EXPECT_NEAR(sandwiched_renyi_info(cq, 1.5).value, fine.renyi, 1e-4);
}

TEST(Oracles, GridMatchesSibsonOnCommutingModel) {
  const BlochGridResult grid = bloch_grid_oracle(model_a(), 1.5, 200);
  EXPECT_NEAR(grid.renyi, classical_sibson_closed_form(model_a(), 1.5), 1e-4);
  EXPECT_NEAR(grid.augustin, classical_augustin_oracle(model_a(), 1.5), 1e-4);
}

TEST(Oracles, BlochGridRejectsNonQubit) {
  const CqSource cq = testing_util::all_equal(DensityOperator::maximally_mixed(3));
  EXPECT_THROW((void)bloch_grid_oracle(cq, 1.5, 10), ValidationError);
}

}  // namespace
}  // namespace softcover
