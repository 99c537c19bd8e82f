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

#ifndef SOFTCOVER_LINALG_HPP
#define SOFTCOVER_LINALG_HPP

// Dense complex Hermitian linear algebra: spectral decomposition, matrix
// functions restricted to the support, Schatten norms, trace distance and
// the Helstrom test.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "softcover/errors.hpp"

namespace softcover {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Elementwise tolerance for entries[i][j] == conj(entries[j][i]).
inline constexpr double kHermitianTolerance = 1e-12;
// Eigenvalues at or below this fraction of the largest eigenvalue are outside
// the support.
inline constexpr double kSupportThreshold = 1e-14;
// Negative eigenvalues down to -kPsdTolerance are treated as zero.
inline constexpr double kPsdTolerance = 1e-10;

inline double max_asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) return kInfinity;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) * 0.5; }

inline void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << who << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw ValidationError(os.str());
  }
}

inline void require_hermitian(const Matrix& a, const char* who, double tol = kHermitianTolerance) {
  require_square(a, who);
  const double asym = max_asymmetry(a);
  if (!(asym <= tol)) {
    std::ostringstream os;
    os << who << ": matrix is not Hermitian (max |A - A^dagger| entry = " << asym << ")";
    throw ValidationError(os.str());
  }
}

/// Spectral decomposition H = U diag(values) U^dagger with eigenvalues sorted
/// in descending order and eigenvectors stored as the columns of U.
struct Eigensystem {
  RealVector values;
  Matrix vectors;

  [[nodiscard]] Eigen::Index dim() const { return values.size(); }

  // Eigenvalues strictly above this are in the support.
  [[nodiscard]] double support_cutoff() const {
    if (values.size() == 0) return 0.0;
    return kSupportThreshold * std::max(values(0), 0.0);
  }

  [[nodiscard]] bool in_support(Eigen::Index i) const {
    return values(i) > 0.0 && values(i) > support_cutoff();
  }

  [[nodiscard]] Eigen::Index rank() const {
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < dim(); ++i) r += in_support(i) ? 1 : 0;
    return r;
  }

  // Orthonormal basis of the support (columns), ordered by descending eigenvalue.
  [[nodiscard]] Matrix support_basis() const { return vectors.leftCols(rank()); }

  [[nodiscard]] Matrix support_projector() const {
    const Matrix b = support_basis();
    return b * b.adjoint();
  }

  [[nodiscard]] Matrix reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
  }
};

namespace detail {

inline Eigensystem eigh_impl(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) throw SolverError("eigh: eigensolver failed to converge");
  Eigensystem es;
  es.values = solver.eigenvalues().reverse();
  es.vectors = solver.eigenvectors().rowwise().reverse();
  return es;
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix. Rejects input whose largest
/// entrywise asymmetry exceeds `tol`.
inline Eigensystem eigh(const Matrix& h, double tol = kHermitianTolerance) {
  require_hermitian(h, "eigh", tol);
  return detail::eigh_impl(h);
}

/// Eigenvalues only (descending). The input is Hermitized, not validated.
inline RealVector eigvalsh(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverError("eigvalsh: eigensolver failed to converge");
  return solver.eigenvalues().reverse();
}

template <class F>
Matrix spectral_apply(const Eigensystem& es, F&& f) {
  Eigen::VectorXcd mapped(es.dim());
  for (Eigen::Index i = 0; i < es.dim(); ++i) mapped(i) = Complex(f(es.values(i), es.in_support(i)), 0.0);
  return es.vectors * mapped.asDiagonal() * es.vectors.adjoint();
}

inline void require_psd(const Eigensystem& es, const char* who) {
  if (es.dim() == 0) return;
  const double scale = std::max(1.0, std::abs(es.values(0)));
  const double lowest = es.values(es.dim() - 1);
  if (lowest < -kPsdTolerance * scale) {
    std::ostringstream os;
    os << who << ": matrix is not positive semi-definite (smallest eigenvalue " << lowest << ")";
    throw ValidationError(os.str());
  }
}

/// Support-restricted power: lambda -> lambda^t on the support, 0 elsewhere,
/// for every real t. A zero matrix maps to the zero matrix.
inline Matrix matrix_power(const Eigensystem& es, double t) {
  require_psd(es, "matrix_power");
  return spectral_apply(es, [t](double l, bool supp) { return supp ? std::pow(l, t) : 0.0; });
}

inline Matrix matrix_power(const Matrix& a, double t) { return matrix_power(eigh(a), t); }

/// Natural logarithm on the support; eigenvalues outside the support map to 0.
inline Matrix matrix_log(const Eigensystem& es) {
  require_psd(es, "matrix_log");
  return spectral_apply(es, [](double l, bool supp) { return supp ? std::log(l) : 0.0; });
}

inline Matrix matrix_log(const Matrix& a) { return matrix_log(eigh(a)); }

inline Matrix matrix_exp(const Matrix& h) {
  return spectral_apply(eigh(h), [](double l, bool) { return std::exp(l); });
}

namespace detail {

inline double power_sum_norm(const RealVector& s, double p) {
  if (std::isinf(p)) return s.size() == 0 ? 0.0 : s.maxCoeff();
  const double top = s.size() == 0 ? 0.0 : s.maxCoeff();
  if (top == 0.0) return 0.0;
  // Scale by the largest value to avoid overflow for large p.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

inline void require_norm_order(double p) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "schatten_norm: order p = " << p << " is below 1 (not a norm)";
    throw ValidationError(os.str());
  }
}

}  // namespace detail

/// Schatten p-norm (sum of p-th powers of singular values)^(1/p), p in [1, inf].
inline double schatten_norm(const Matrix& a, double p) {
  detail::require_norm_order(p);
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return detail::power_sum_norm(svd.singularValues(), p);
}

/// Schatten norm of a Hermitian matrix via |eigenvalues|.
inline double schatten_norm_hermitian(const Matrix& a, double p) {
  detail::require_norm_order(p);
  return detail::power_sum_norm(eigvalsh(a).cwiseAbs(), p);
}

inline double trace_norm_hermitian(const Matrix& a) { return eigvalsh(a).cwiseAbs().sum(); }

/// Complex Hermitian PSD matrix with unit trace and a cached spectrum.
class DensityOperator {
 public:
  explicit DensityOperator(const Matrix& m) {
    require_hermitian(m, "DensityOperator");
    spectrum_ = detail::eigh_impl(m);
    require_psd(spectrum_, "DensityOperator");
    const double tr = spectrum_.values.sum();
    if (!(std::abs(tr - 1.0) <= kPsdTolerance)) {
      std::ostringstream os;
      os << "DensityOperator: trace is " << tr << ", expected 1";
      throw ValidationError(os.str());
    }
    spectrum_.values = spectrum_.values.cwiseMax(0.0);
    matrix_ = spectrum_.reconstruct();
  }

  static DensityOperator diagonal(const std::vector<double>& probs) {
    RealVector v = Eigen::Map<const RealVector>(probs.data(), static_cast<Eigen::Index>(probs.size()));
    return DensityOperator(Matrix(v.cast<Complex>().asDiagonal()));
  }

  static DensityOperator pure(const Ket& ket) {
    const Ket unit = ket / ket.norm();
    return DensityOperator(unit * unit.adjoint());
  }

  static DensityOperator maximally_mixed(Eigen::Index d) {
    return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d));
  }

  [[nodiscard]] const Matrix& matrix() const { return matrix_; }
  [[nodiscard]] const Eigensystem& spectrum() const { return spectrum_; }
  [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
  Eigensystem spectrum_;
};

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* who) {
  if (a != b) {
    std::ostringstream os;
    os << who << ": dimension mismatch (" << a << " vs " << b << ")";
    throw ValidationError(os.str());
  }
}

/// Half the trace norm of the difference; in [0, 1] for density operators.
inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
  // Subtract in a canonical order so the result is exactly symmetric.
  const Matrix& a = rho.matrix();
  const Matrix& b = sigma.matrix();
  const auto as_reals = [](const Matrix& m) {
    return std::span<const double>(reinterpret_cast<const double*>(m.data()), static_cast<std::size_t>(2 * m.size()));
  };
  const auto ra = as_reals(a);
  const auto rb = as_reals(b);
  const bool swap = std::lexicographical_compare(rb.begin(), rb.end(), ra.begin(), ra.end());
  return 0.5 * trace_norm_hermitian(swap ? Matrix(b - a) : Matrix(a - b));
}

struct HelstromResult {
  double value = 0.0;
  Matrix test;  // projector onto the positive eigenspace of rho - sigma
};

/// Optimal test for sup_{0 <= T <= 1} Tr[(rho - sigma) T].
inline HelstromResult helstrom_value(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "helstrom_value");
  const Eigensystem es = detail::eigh_impl(rho.matrix() - sigma.matrix());
  const double cutoff = kSupportThreshold * std::max(1.0, es.values.cwiseAbs().maxCoeff());
  HelstromResult out;
  out.test = spectral_apply(es, [cutoff](double l, bool) { return l > cutoff ? 1.0 : 0.0; });
  out.value = (rho.matrix() - sigma.matrix()).cwiseProduct(out.test.transpose()).sum().real();
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix kron_power(const Matrix& a, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

inline Complex trace_of_product(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace softcover

#endif  // SOFTCOVER_LINALG_HPP
