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

#ifndef SOFTCOVER_MINIMIZE_HPP
#define SOFTCOVER_MINIMIZE_HPP

// Unconstrained smooth minimization by BFGS with central-difference
// gradients and Armijo backtracking.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace softcover {

struct MinimizeOptions {
  // Stop once a step improves the objective by less than this and the
  // gradient is below gradient_floor.
  double tolerance = 1e-11;
  int max_iters = 5000;
  double fd_step = 1e-5;
  double gradient_floor = 1e-5;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double last_improvement = 0.0;
  double gradient_norm = 0.0;
};

namespace detail {

template <class F>
Eigen::VectorXd fd_gradient(F& f, const Eigen::VectorXd& x, double step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x(i)));
    probe(i) = x(i) + h;
    const double up = f(probe);
    probe(i) = x(i) - h;
    const double down = f(probe);
    probe(i) = x(i);
    g(i) = (up - down) / (2.0 * h);
  }
  return g;
}

inline double finite_or_inf(double v) {
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace detail

template <class F>
MinimizeResult minimize_bfgs(F&& objective, Eigen::VectorXd x0, const MinimizeOptions& opt = {}) {
  auto f = [&objective](const Eigen::VectorXd& x) { return detail::finite_or_inf(objective(x)); };
  const Eigen::Index n = x0.size();
  MinimizeResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  if (n == 0) {
    res.converged = true;
    return res;
  }
  Eigen::VectorXd g = detail::fd_gradient(f, res.x, opt.fd_step);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool fresh_hessian = true;
  for (res.iterations = 0; res.iterations < opt.max_iters; ++res.iterations) {
    res.gradient_norm = g.lpNorm<Eigen::Infinity>();
    if (res.gradient_norm < 1e-12) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -hinv * g;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      fresh_hessian = true;
      dir = -g;
      slope = -g.squaredNorm();
    }
    // Cap the first trial step so exp-parameterized objectives stay finite.
    double step = std::min(1.0, 5.0 / std::max(dir.lpNorm<Eigen::Infinity>(), 1e-300));
    double trial = std::numeric_limits<double>::infinity();
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      x_new = res.x + step * dir;
      trial = f(x_new);
      if (trial <= res.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (res.gradient_norm < opt.gradient_floor) {
        res.converged = true;  // gradient is at the finite-difference noise level
        break;
      }
      if (!fresh_hessian) {
        hinv.setIdentity();
        fresh_hessian = true;
        continue;
      }
      break;
    }
    const Eigen::VectorXd g_new = detail::fd_gradient(f, x_new, opt.fd_step);
    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd y = g_new - g;
    res.last_improvement = res.value - trial;
    res.x = x_new;
    res.value = trial;
    g = g_new;
    const double sy = s.dot(y);
    if (sy > 1e-18) {
      if (fresh_hessian) hinv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
      hinv = (ident - rho * s * y.transpose()) * hinv * (ident - rho * y * s.transpose()) +
             rho * s * s.transpose();
      fresh_hessian = false;
    }
    res.gradient_norm = g.lpNorm<Eigen::Infinity>();
    if (res.last_improvement < opt.tolerance && res.gradient_norm < opt.gradient_floor) {
      res.converged = true;
      ++res.iterations;
      break;
    }
  }
  return res;
}

}  // namespace softcover

#endif  // SOFTCOVER_MINIMIZE_HPP
