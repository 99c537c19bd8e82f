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

#ifndef SOFTCOVER_RANDOM_MODELS_HPP
#define SOFTCOVER_RANDOM_MODELS_HPP

// Seeded generators for random matrices, states and c-q sources used by the
// property suites.

#include <random>
#include <vector>

#include "softcover/cq_source.hpp"
#include "softcover/linalg.hpp"

namespace softcover::random_models {

using Rng = std::mt19937_64;

inline Matrix random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline Matrix random_hermitian(Eigen::Index d, Rng& rng) { return hermitian_part(random_complex(d, d, rng)); }

/// Wishart-type PSD matrix of the given rank.
inline Matrix random_psd(Eigen::Index d, Rng& rng, Eigen::Index rank) {
  const Matrix g = random_complex(d, rank, rng);
  return hermitian_part(g * g.adjoint());
}

inline DensityOperator random_density(Eigen::Index d, Rng& rng, Eigen::Index rank) {
  Matrix m = random_psd(d, rng, rank);
  m /= m.trace().real();
  return DensityOperator(hermitian_part(m));
}

inline DensityOperator random_density(Eigen::Index d, Rng& rng) { return random_density(d, rng, d); }

/// Full-rank state (1 - w) G G^dag / Tr + w I/d with mixing weight w drawn
/// from [min_mix, max_mix].
inline DensityOperator random_mixed_density(Eigen::Index d, Rng& rng, double min_mix = 0.05, double max_mix = 0.5) {
  const double w = std::uniform_real_distribution<double>(min_mix, max_mix)(rng);
  Matrix g = random_psd(d, rng, d);
  g /= g.trace().real();
  return DensityOperator(hermitian_part((1.0 - w) * g + w * Matrix::Identity(d, d) / static_cast<double>(d)));
}

/// Prior with entries k/denominator, every letter getting at least one unit.
inline std::vector<Rational> random_rational_prior(std::size_t alphabet, std::int64_t denominator, Rng& rng) {
  std::vector<std::int64_t> units(alphabet, 1);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1);
  for (std::int64_t k = static_cast<std::int64_t>(alphabet); k < denominator; ++k) ++units[pick(rng)];
  std::vector<Rational> out;
  for (auto u : units) out.emplace_back(u, denominator);
  return out;
}

inline CqSource random_cq_source(std::size_t alphabet, Eigen::Index d, Rng& rng, std::int64_t prior_denominator = 4,
                                 double min_mix = 0.05, double max_mix = 0.5) {
  std::vector<DensityOperator> states;
  for (std::size_t x = 0; x < alphabet; ++x) states.push_back(random_mixed_density(d, rng, min_mix, max_mix));
  return CqSource(random_rational_prior(alphabet, prior_denominator, rng), std::move(states));
}

/// All states diagonal in a shared random basis.
inline CqSource random_commuting_source(std::size_t alphabet, Eigen::Index d, Rng& rng,
                                        std::int64_t prior_denominator = 4) {
  const Eigensystem basis = eigh(random_hermitian(d, rng));
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<DensityOperator> states;
  for (std::size_t x = 0; x < alphabet; ++x) {
    RealVector w(d);
    for (Eigen::Index y = 0; y < d; ++y) w(y) = unif(rng);
    w /= w.sum();
    const Matrix m = basis.vectors * w.cast<Complex>().asDiagonal() * basis.vectors.adjoint();
    states.emplace_back(hermitian_part(m));
  }
  return CqSource(random_rational_prior(alphabet, prior_denominator, rng), std::move(states));
}

}  // namespace softcover::random_models

#endif  // SOFTCOVER_RANDOM_MODELS_HPP
