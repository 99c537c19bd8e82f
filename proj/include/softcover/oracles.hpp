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

#ifndef SOFTCOVER_ORACLES_HPP
#define SOFTCOVER_ORACLES_HPP

// Independent reference computations for the sandwiched informations:
// closed forms on commuting sources and a brute-force Bloch-ball grid
// search for qubit outputs. None of these share code with the solver.

#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "softcover/cq_source.hpp"
#include "softcover/errors.hpp"
#include "softcover/info.hpp"
#include "softcover/linalg.hpp"

namespace softcover {

inline constexpr double kCommutatorTolerance = 1e-12;

/// Letter-conditional output distributions W[x][y] in a common eigenbasis of
/// all rho_x. Rejects non-commuting sources.
inline std::vector<std::vector<double>> commuting_channel(const CqSource& cq) {
  const std::size_t k = cq.alphabet_size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const Matrix& ra = cq.state(a).matrix();
      const Matrix& rb = cq.state(b).matrix();
      const double c = (ra * rb - rb * ra).cwiseAbs().maxCoeff();
      if (c > kCommutatorTolerance) {
        std::ostringstream os;
        os << "commuting_channel: states " << a << " and " << b << " do not commute (|[A,B]| = " << c << ")";
        throw ValidationError(os.str());
      }
    }
  const Eigen::Index d = cq.output_dim();
  Matrix mix = Matrix::Zero(d, d);
  for (std::size_t x = 0; x < k; ++x) mix += (1.0 / (static_cast<double>(x) + 3.14159265358979)) * cq.state(x).matrix();
  const Eigensystem basis = eigh(hermitian_part(mix));
  std::vector<std::vector<double>> w(k, std::vector<double>(static_cast<std::size_t>(d)));
  for (std::size_t x = 0; x < k; ++x) {
    const Matrix m = basis.vectors.adjoint() * cq.state(x).matrix() * basis.vectors;
    const double off = (m - Matrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    if (off > 1e-9) throw ValidationError("commuting_channel: failed to find a common eigenbasis");
    for (Eigen::Index y = 0; y < d; ++y) w[x][static_cast<std::size_t>(y)] = std::max(0.0, m(y, y).real());
  }
  return w;
}

/// Sibson's closed form alpha/(alpha-1) ln sum_y (sum_x p(x) W(y|x)^alpha)^(1/alpha).
inline double classical_sibson_closed_form(const CqSource& cq, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0) throw ValidationError("classical_sibson_closed_form: alpha must be in (0,inf)\\{1}");
  const auto w = commuting_channel(cq);
  double total = 0.0;
  for (std::size_t y = 0; y < w.front().size(); ++y) {
    double inner = 0.0;
    for (std::size_t x = 0; x < w.size(); ++x)
      if (cq.prior(x) > 0.0 && w[x][y] > 0.0) inner += cq.prior(x) * std::pow(w[x][y], alpha);
    if (inner > 0.0) total += std::pow(inner, 1.0 / alpha);
  }
  return alpha / (alpha - 1.0) * std::log(total);
}

/// Classical Augustin information by the Augustin fixed-point iteration
/// q <- sum_x p(x) W_x^alpha q^(1-alpha) / Z_x(q), damped by one half.
inline double classical_augustin_oracle(const CqSource& cq, double alpha, int max_iters = 200000,
                                        double tol = 1e-15) {
  if (!(alpha > 0.0) || alpha == 1.0) throw ValidationError("classical_augustin_oracle: alpha must be in (0,inf)\\{1}");
  const auto w = commuting_channel(cq);
  const std::size_t ny = w.front().size();
  std::vector<double> q(ny, 0.0);
  for (std::size_t x = 0; x < w.size(); ++x)
    for (std::size_t y = 0; y < ny; ++y) q[y] += cq.prior(x) * w[x][y];
  auto partition = [&](std::size_t x, const std::vector<double>& qq) {
    double z = 0.0;
    for (std::size_t y = 0; y < ny; ++y)
      if (w[x][y] > 0.0) z += std::pow(w[x][y], alpha) * std::pow(qq[y], 1.0 - alpha);
    return z;
  };
  bool converged = false;
  for (int it = 0; it < max_iters && !converged; ++it) {
    std::vector<double> next(ny, 0.0);
    for (std::size_t x = 0; x < w.size(); ++x) {
      if (cq.prior(x) <= 0.0) continue;
      const double z = partition(x, q);
      for (std::size_t y = 0; y < ny; ++y)
        if (w[x][y] > 0.0) next[y] += cq.prior(x) * std::pow(w[x][y], alpha) * std::pow(q[y], 1.0 - alpha) / z;
    }
    double change = 0.0;
    double total = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      change = std::max(change, std::abs(next[y] - q[y]));
      next[y] = 0.5 * (q[y] + next[y]);
      total += next[y];
    }
    for (double& v : next) v /= total;
    q = std::move(next);
    converged = change < tol;
  }
  if (!converged) throw SolverError("classical_augustin_oracle: fixed-point iteration did not converge");
  double value = 0.0;
  for (std::size_t x = 0; x < w.size(); ++x)
    if (cq.prior(x) > 0.0) value += cq.prior(x) * std::log(partition(x, q)) / (alpha - 1.0);
  return value;
}

struct BlochGridResult {
  double renyi = kInfinity;     // grid minimum of the I*_alpha objective
  double augustin = kInfinity;  // grid minimum of the Ĭ*_alpha objective
  std::array<double, 3> renyi_point{};
  std::array<double, 3> augustin_point{};
  long long points = 0;
};

/// Minimum of both sandwiched objectives over sigma = (I + r.sigma_vec)/2 with
/// r on the cubic grid {-1 + 2i/resolution : i = 0..resolution}^3, |r| <= 1 - 1e-6.
/// Grids at resolution N and 2N are nested, so the minimum is non-increasing
/// under doubling.
inline BlochGridResult bloch_grid_oracle(const CqSource& cq, double alpha, int resolution) {
  if (cq.output_dim() != 2) throw ValidationError("bloch_grid_oracle: output dimension must be 2");
  if (resolution < 1) throw ValidationError("bloch_grid_oracle: resolution must be positive");
  if (!(alpha > 1.0)) throw ValidationError("bloch_grid_oracle: alpha must exceed 1");
  using C = std::complex<double>;
  struct Letter {
    double p;
    C a00, a01, a11;
  };
  std::vector<Letter> letters;
  for (std::size_t x = 0; x < cq.alphabet_size(); ++x) {
    if (cq.prior(x) <= 0.0) continue;
    const Matrix& m = cq.state(x).matrix();
    letters.push_back({cq.prior(x), m(0, 0), m(0, 1), m(1, 1)});
  }
  const double gamma = (1.0 - alpha) / (2.0 * alpha);
  const double rmax = 1.0 - 1e-6;
  BlochGridResult best;
  for (int i = 0; i <= resolution; ++i) {
    const double rx = -1.0 + 2.0 * i / resolution;
    for (int j = 0; j <= resolution; ++j) {
      const double ry = -1.0 + 2.0 * j / resolution;
      for (int k = 0; k <= resolution; ++k) {
        const double rz = -1.0 + 2.0 * k / resolution;
        const double r = std::sqrt(rx * rx + ry * ry + rz * rz);
        if (r > rmax) continue;
        ++best.points;
        // sigma^gamma = a I + b (n . sigma_vec)
        const double lp = std::pow(0.5 * (1.0 + r), gamma);
        const double lm = std::pow(0.5 * (1.0 - r), gamma);
        const double a = 0.5 * (lp + lm);
        const double b = r > 0.0 ? 0.5 * (lp - lm) / r : 0.0;  // absorbs 1/|r|
        const C s00(a + b * rz, 0.0), s11(a - b * rz, 0.0), s01(b * rx, -b * ry), s10(b * rx, b * ry);
        double renyi = 0.0, augustin = 0.0;
        for (const Letter& l : letters) {
          // T = S rho, A = T S
          const C t00 = s00 * l.a00 + s01 * std::conj(l.a01);
          const C t01 = s00 * l.a01 + s01 * l.a11;
          const C t10 = s10 * l.a00 + s11 * std::conj(l.a01);
          const C t11 = s10 * l.a01 + s11 * l.a11;
          const double m00 = (t00 * s00 + t01 * s10).real();
          const double m11 = (t10 * s01 + t11 * s11).real();
          const C m01 = t00 * s01 + t01 * s11;
          const double half_tr = 0.5 * (m00 + m11);
          const double det = m00 * m11 - std::norm(m01);
          const double disc = std::sqrt(std::max(half_tr * half_tr - det, 0.0));
          const double mu_plus = half_tr + disc;
          const double mu_minus = std::max(half_tr - disc, 0.0);
          const double q = std::pow(mu_plus, alpha) + (mu_minus > 0.0 ? std::pow(mu_minus, alpha) : 0.0);
          renyi += l.p * q;
          augustin += l.p * std::log(q);
        }
        renyi = std::log(renyi) / (alpha - 1.0);
        augustin /= (alpha - 1.0);
        if (renyi < best.renyi) {
          best.renyi = renyi;
          best.renyi_point = {rx, ry, rz};
        }
        if (augustin < best.augustin) {
          best.augustin = augustin;
          best.augustin_point = {rx, ry, rz};
        }
      }
    }
  }
  return best;
}

}  // namespace softcover

#endif  // SOFTCOVER_ORACLES_HPP
