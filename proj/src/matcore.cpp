#include "cprlab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace cprlab {
namespace {

// Singular values below this fraction of the largest get their left vector
// from Gram-Schmidt completion instead of A v / sigma.
constexpr double kSvdRankThreshold = 1e-12;
constexpr double kSvdOrthogonality = 1e-15;
constexpr double kPositiveDefiniteRatio = 1e-12;
constexpr double kPivotThreshold = 1e-13;

// Indices of `values` sorted descending, ties in input order.
std::vector<Eigen::Index> descending_order(const RVector& values) {
  std::vector<Eigen::Index> order(static_cast<size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return values(i) > values(j);
  });
  return order;
}

// Orthogonalizes column k of `u` against columns [0, k) twice (modified
// Gram-Schmidt with reorthogonalization). Returns the remaining norm.
double orthogonalize_column(CMatrix& u, Eigen::Index k) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const Complex proj = u.col(j).dot(u.col(k));
      u.col(k) -= proj * u.col(j);
    }
  }
  return u.col(k).norm();
}

// Fills column k of `u` with the standard basis vector that survives
// orthogonalization against the previous columns best.
void complete_column(CMatrix& u, Eigen::Index k) {
  const Eigen::Index m = u.rows();
  double best_norm = -1.0;
  CMatrix::ColXpr col = u.col(k);
  Eigen::VectorXcd best;
  for (Eigen::Index e = 0; e < m; ++e) {
    col.setZero();
    col(e) = 1.0;
    const double r = orthogonalize_column(u, k);
    if (r > best_norm) {
      best_norm = r;
      best = col;
    }
  }
  col = best / best_norm;
}

// One-sided (Hestenes) Jacobi: rotates column pairs of `w` until they are
// mutually orthogonal, accumulating the rotations into `v` when given.
// Afterwards the column norms of `w` are the singular values.
void one_sided_jacobi(CMatrix& w, CMatrix* v) {
  const Eigen::Index n = w.cols();
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = w.col(p).squaredNorm();
        const double beta = w.col(q).squaredNorm();
        const Complex gamma = w.col(p).dot(w.col(q));
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= kSvdOrthogonality * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = gamma / mag;
        const double theta = (beta - alpha) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex cp = std::conj(phase);
        const auto rotate = [&](CMatrix& m) {
          const Eigen::VectorXcd mp = m.col(p);
          m.col(p) = c * mp - s * cp * m.col(q);
          m.col(q) = s * mp + c * cp * m.col(q);
        };
        rotate(w);
        if (v != nullptr) rotate(*v);
      }
    }
    if (!rotated) return;
  }
  throw LabError(ErrorCode::kNoConvergence,
                 "one-sided Jacobi sweeps exceeded " + std::to_string(kJacobiMaxSweeps));
}

}  // namespace

CMatrix SvdResult::reconstruct() const {
  const Eigen::Index r = singular_values.size();
  CMatrix sigma = CMatrix::Zero(left.rows(), right.rows());
  for (Eigen::Index i = 0; i < r; ++i) sigma(i, i) = singular_values(i);
  return left * sigma * right.adjoint();
}

SvdResult svd(const CMatrix& a) {
  require_finite(a, "svd input");
  if (a.rows() < a.cols()) {
    // A = (A*)* : swap the roles of the two bases.
    SvdResult t = svd(a.adjoint());
    std::swap(t.left, t.right);
    return t;
  }
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();

  CMatrix w = a;
  CMatrix v = CMatrix::Identity(n, n);
  one_sided_jacobi(w, &v);

  RVector norms(n);
  for (Eigen::Index k = 0; k < n; ++k) norms(k) = w.col(k).norm();
  const std::vector<Eigen::Index> order = descending_order(norms);

  SvdResult out;
  out.singular_values.resize(n);
  out.right.resize(n, n);
  out.left = CMatrix::Zero(m, m);
  const double sigma_max = n > 0 ? norms(order[0]) : 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<size_t>(k)];
    out.singular_values(k) = norms(src);
    out.right.col(k) = v.col(src);
  }
  for (Eigen::Index k = 0; k < m; ++k) {
    if (k < n && sigma_max > 0.0 && out.singular_values(k) > kSvdRankThreshold * sigma_max) {
      out.left.col(k) = w.col(order[static_cast<size_t>(k)]) / out.singular_values(k);
      const double rest = orthogonalize_column(out.left, k);
      if (rest > 0.5) {
        out.left.col(k) /= rest;
        continue;
      }
    }
    complete_column(out.left, k);
  }
  return out;
}

RVector singular_values(const CMatrix& a) {
  require_finite(a, "singular_values input");
  CMatrix w = a.rows() < a.cols() ? CMatrix(a.adjoint()) : a;
  one_sided_jacobi(w, nullptr);
  RVector out(w.cols());
  for (Eigen::Index k = 0; k < w.cols(); ++k) out(k) = w.col(k).norm();
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

PositiveOperator::PositiveOperator(const CMatrix& p) {
  require_square(p, "positive operator");
  spectral_ = herm_eigen(p);
  validate(spectral_.eigenvalues);
  matrix_ = (p + p.adjoint()) * 0.5;
}

PositiveOperator::PositiveOperator(RVector eigenvalues, CMatrix vectors) {
  if (eigenvalues.size() != vectors.rows() || vectors.rows() != vectors.cols()) {
    throw LabError(ErrorCode::kDimensionMismatch,
                   "spectral data of inconsistent size");
  }
  validate(eigenvalues);
  spectral_.eigenvalues = std::move(eigenvalues);
  spectral_.vectors = std::move(vectors);
  const CMatrix m = spectral_.reconstruct();
  matrix_ = (m + m.adjoint()) * 0.5;
}

void PositiveOperator::validate(const RVector& eigenvalues) {
  if (eigenvalues.size() == 0) {
    throw LabError(ErrorCode::kDimensionMismatch, "empty operator");
  }
  const double lo = eigenvalues.minCoeff();
  const double hi = eigenvalues.maxCoeff();
  if (!(hi > 0.0) || !(lo > kPositiveDefiniteRatio * hi)) {
    throw LabError(ErrorCode::kNotPositiveDefinite,
                   "eigenvalue range [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
}

CMatrix PositiveOperator::power(double s) const {
  return spectral_.apply([s](double lambda) { return std::pow(lambda, s); });
}

CMatrix frac_power(const CMatrix& p, double s) {
  return PositiveOperator(p).power(s);
}

CMatrix modulus(const CMatrix& a) {
  const SvdResult d = svd(a);
  const Eigen::Index n = a.cols();
  RVector sigma = RVector::Zero(n);
  sigma.head(d.singular_values.size()) = d.singular_values;
  const CMatrix m = d.right * diag(sigma) * d.right.adjoint();
  return (m + m.adjoint()) * 0.5;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw LabError(ErrorCode::kDimensionMismatch, "matmul inner dimensions differ");
  }
  return a * b;
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw LabError(ErrorCode::kDimensionMismatch, "add shapes differ");
  }
  return a + b;
}

CMatrix scale(const CMatrix& a, Complex c) { return a * c; }

CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }

CMatrix hadamard(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw LabError(ErrorCode::kDimensionMismatch, "hadamard shapes differ");
  }
  return a.cwiseProduct(b);
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix inverse(const CMatrix& a) {
  require_square(a, "inverse input");
  require_finite(a, "inverse input");
  const Eigen::Index n = a.rows();
  const double tol = kPivotThreshold * a.norm();
  CMatrix work = a;
  CMatrix inv = CMatrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    double best = std::abs(work(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(work(r, col)) > best) {
        best = std::abs(work(r, col));
        pivot = r;
      }
    }
    if (!(best > tol)) {
      throw LabError(ErrorCode::kSingular,
                     "pivot " + std::to_string(best) + " in column " +
                         std::to_string(col));
    }
    if (pivot != col) {
      work.row(col).swap(work.row(pivot));
      inv.row(col).swap(inv.row(pivot));
    }
    const Complex d = work(col, col);
    work.row(col) /= d;
    inv.row(col) /= d;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = work(r, col);
      if (f == Complex(0.0)) continue;
      work.row(r) -= f * work.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

CMatrix diag(std::initializer_list<Complex> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  CMatrix out = CMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (const Complex& e : entries) {
    out(i, i) = e;
    ++i;
  }
  return out;
}

CMatrix diag(const RVector& entries) {
  return entries.cast<Complex>().asDiagonal();
}

}  // namespace cprlab
