#ifndef CPRLAB_MATCORE_HPP_
#define CPRLAB_MATCORE_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cprlab/error.hpp"

namespace cprlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Cyclic Jacobi parameters for herm_eigen.
inline constexpr double kJacobiRelativeThreshold = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kHermitianTolerance = 1e-12;

// Spectral decomposition A = Q diag(eigenvalues) Q*, eigenvalues ascending.
template <typename Scalar>
struct HermEigen {
  RVector eigenvalues;
  DenseMatrix<Scalar> vectors;

  DenseMatrix<Scalar> reconstruct() const {
    return vectors * eigenvalues.cast<Scalar>().asDiagonal() *
           vectors.adjoint();
  }

  // Q f(Lambda) Q* for a scalar function f.
  template <typename F>
  DenseMatrix<Scalar> apply(F&& f) const {
    RVector mapped = eigenvalues.unaryExpr(std::forward<F>(f));
    return vectors * mapped.cast<Scalar>().asDiagonal() * vectors.adjoint();
  }
};

// A = U diag(singular_values) V*, singular values descending and >= 0.
// `left` is rows x rows, `right` is cols x cols, singular_values has
// min(rows, cols) entries.
struct SvdResult {
  RVector singular_values;
  CMatrix left;
  CMatrix right;

  CMatrix reconstruct() const;
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!a.allFinite()) {
    throw LabError(ErrorCode::kInvalidParams,
                   std::string(what) + " has non-finite entries");
  }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw LabError(ErrorCode::kDimensionMismatch,
                   std::string(what) + " must be square, got " +
                       std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()));
  }
}

template <typename Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
  return (a - a.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a,
                  double tol = kHermitianTolerance) {
  return a.rows() == a.cols() &&
         hermitian_defect(a) <= tol * std::max(1.0, a.norm());
}

namespace internal {

template <typename Scalar>
double real_part(const Scalar& z) {
  return std::real(z);
}

// Applies the unitary G = D R to rows/columns p, q of the Hermitian matrix
// `a` (a <- G* a G) and accumulates it into `v` (v <- v G). D = diag(1,
// conj(phase)) makes the (p,q) entry real, R is the classical real rotation.
template <typename Scalar>
void jacobi_rotate(DenseMatrix<Scalar>& a, DenseMatrix<Scalar>* v, Eigen::Index p,
                   Eigen::Index q) {
  using std::abs;
  const Scalar apq = a(p, q);
  const double mag = abs(apq);
  if (mag == 0.0) return;
  const Scalar phase = apq / mag;
  const double app = real_part(a(p, p));
  const double aqq = real_part(a(q, q));
  const double theta = (aqq - app) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Scalar conj_phase = Eigen::numext::conj(phase);

  const Eigen::Index n = a.rows();
  // a <- a G : column update.
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar akp = a(k, p);
    const Scalar akq = a(k, q);
    a(k, p) = c * akp - s * conj_phase * akq;
    a(k, q) = s * akp + c * conj_phase * akq;
  }
  // a <- G* a : row update.
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar apk = a(p, k);
    const Scalar aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = Scalar(0);
  a(q, p) = Scalar(0);
  a(p, p) = Scalar(real_part(a(p, p)));
  a(q, q) = Scalar(real_part(a(q, q)));
  if (v != nullptr) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Scalar vkp = (*v)(k, p);
      const Scalar vkq = (*v)(k, q);
      (*v)(k, p) = c * vkp - s * conj_phase * vkq;
      (*v)(k, q) = s * vkp + c * conj_phase * vkq;
    }
  }
}

template <typename Scalar>
double off_diagonal_norm(const DenseMatrix<Scalar>& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(std::complex<double>(a(i, j)));
    }
  }
  return std::sqrt(sum);
}

}  // namespace internal

// Cyclic Jacobi eigensolver for Hermitian (or real symmetric) matrices.
// Throws NotHermitian when ||A - A*||_F > 1e-12 max(1, ||A||_F) and
// NoConvergence after kJacobiMaxSweeps sweeps.
template <typename Derived>
HermEigen<typename Derived::Scalar> herm_eigen(
    const Eigen::MatrixBase<Derived>& input, bool compute_vectors = true) {
  using Scalar = typename Derived::Scalar;
  require_square(input, "herm_eigen input");
  require_finite(input, "herm_eigen input");
  if (!is_hermitian(input)) {
    throw LabError(ErrorCode::kNotHermitian,
                   "herm_eigen input is not Hermitian (defect " +
                       std::to_string(hermitian_defect(input)) + ")");
  }
  const Eigen::Index n = input.rows();
  DenseMatrix<Scalar> a = (input + input.adjoint()) * Scalar(0.5);
  DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Identity(n, n);
  DenseMatrix<Scalar>* vp = compute_vectors ? &v : nullptr;

  const double threshold = kJacobiRelativeThreshold * a.norm();
  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (internal::off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        internal::jacobi_rotate(a, vp, p, q);
      }
    }
  }
  if (!converged) {
    throw LabError(ErrorCode::kNoConvergence,
                   "Jacobi sweeps exceeded " + std::to_string(kJacobiMaxSweeps));
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return internal::real_part(a(i, i)) < internal::real_part(a(j, j));
  });

  HermEigen<Scalar> out;
  out.eigenvalues.resize(n);
  if (compute_vectors) out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<size_t>(k)];
    out.eigenvalues(k) = internal::real_part(a(src, src));
    if (compute_vectors) out.vectors.col(k) = v.col(src);
  }
  return out;
}

// One-sided Jacobi on the columns of A (or A* when A is wide).
SvdResult svd(const CMatrix& a);

// Singular values only, descending. Same kernel as svd().
RVector singular_values(const CMatrix& a);

// Positive definite operator kept together with its spectral data so that
// arbitrary real powers can be formed without refactoring.
class PositiveOperator {
 public:
  // Throws NotHermitian or NotPositiveDefinite (min eig <= 1e-12 max eig).
  PositiveOperator(const CMatrix& p);

  // From exact spectral data (eigenvalues ascending, unitary vectors).
  PositiveOperator(RVector eigenvalues, CMatrix vectors);

  const CMatrix& matrix() const { return matrix_; }
  const HermEigen<Complex>& spectral() const { return spectral_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  // Q diag(lambda^s) Q*.
  CMatrix power(double s) const;
  CMatrix inverse() const { return power(-1.0); }

 private:
  static void validate(const RVector& eigenvalues);

  HermEigen<Complex> spectral_;
  CMatrix matrix_;
};

CMatrix frac_power(const CMatrix& p, double s);

// |A| = (A*A)^(1/2), assembled from the SVD as V diag(sigma) V*.
CMatrix modulus(const CMatrix& a);

// Checked wrappers used at module boundaries; internal code uses Eigen
// expressions directly.
CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix scale(const CMatrix& a, Complex c);
CMatrix adjoint(const CMatrix& a);
CMatrix hadamard(const CMatrix& a, const CMatrix& b);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

// Gauss-Jordan elimination with partial pivoting. Throws Singular when a
// pivot is <= 1e-13 ||A||_F.
CMatrix inverse(const CMatrix& a);

// Diagonal matrix with the given real or complex entries.
CMatrix diag(std::initializer_list<Complex> entries);
CMatrix diag(const RVector& entries);

}  // namespace cprlab

#endif  // CPRLAB_MATCORE_HPP_
