#include "cprlab/random.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>
#include <numeric>

namespace cprlab {
namespace {

void require_dimension(Eigen::Index n) {
  if (n < 1) {
    throw LabError(ErrorCode::kInvalidParams,
                   "dimension must be >= 1, got " + std::to_string(n));
  }
}

void require_condition(double cond) {
  if (!(cond >= 1.0) || !std::isfinite(cond)) {
    throw LabError(ErrorCode::kInvalidParams,
                   "condition number must be finite and >= 1");
  }
}

// Log-uniform magnitudes on [1/sqrt(cond), sqrt(cond)].
RVector log_uniform_spectrum(Eigen::Index n, double cond, Rng& rng) {
  const double half_log = 0.5 * std::log(cond);
  RVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = std::exp(rng.uniform(-half_log, half_log));
  }
  return out;
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = rng.complex_normal();
  }
  return out;
}

CMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  require_dimension(n);
  const CMatrix z = ginibre(n, n, rng);
  const Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0);
    q.col(j) *= phase;
  }
  return q;
}

PositiveOperator random_posdef(Eigen::Index n, double cond, Rng& rng) {
  require_dimension(n);
  require_condition(cond);
  CMatrix u = haar_unitary(n, rng);
  RVector lambda = log_uniform_spectrum(n, cond, rng);
  // Sort ascending so the stored spectral data follows the global order.
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return lambda(i) < lambda(j); });
  RVector sorted(n);
  CMatrix vectors(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sorted(k) = lambda(order[static_cast<size_t>(k)]);
    vectors.col(k) = u.col(order[static_cast<size_t>(k)]);
  }
  return PositiveOperator(std::move(sorted), std::move(vectors));
}

HermitianSample random_selfadjoint_invertible(Eigen::Index n, double cond,
                                              Rng& rng) {
  const PositiveOperator magnitudes = random_posdef(n, cond, rng);
  RVector lambda = magnitudes.spectral().eigenvalues;
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) *= rng.sign();

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return lambda(i) < lambda(j); });
  HermitianSample out;
  out.spectral.eigenvalues.resize(n);
  out.spectral.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<size_t>(k)];
    out.spectral.eigenvalues(k) = lambda(src);
    out.spectral.vectors.col(k) = magnitudes.spectral().vectors.col(src);
  }
  out.matrix = hermitian_part(out.spectral.reconstruct());
  return out;
}

CMatrix random_invertible(Eigen::Index n, double cond, Rng& rng) {
  require_dimension(n);
  require_condition(cond);
  const CMatrix u = haar_unitary(n, rng);
  const CMatrix w = haar_unitary(n, rng);
  const RVector sigma = log_uniform_spectrum(n, cond, rng);
  return u * diag(sigma) * w;
}

CMatrix random_normal(Eigen::Index n, double cond, Rng& rng) {
  require_dimension(n);
  require_condition(cond);
  const CMatrix u = haar_unitary(n, rng);
  const RVector moduli = log_uniform_spectrum(n, cond, rng);
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i) = std::polar(moduli(i), rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return u * d.asDiagonal() * u.adjoint();
}

CMatrix random_unitary_reflection(Eigen::Index n, Rng& rng) {
  require_dimension(n);
  const CMatrix u = haar_unitary(n, rng);
  RVector signs(n);
  for (Eigen::Index i = 0; i < n; ++i) signs(i) = rng.sign();
  return hermitian_part(u * diag(signs) * u.adjoint());
}

CMatrix random_psd_gram(Eigen::Index n, Rng& rng) {
  require_dimension(n);
  const auto cols = static_cast<Eigen::Index>(1 + ((rng() >> 11) % static_cast<std::uint64_t>(n)));
  const CMatrix z = ginibre(n, cols, rng);
  return hermitian_part(z * z.adjoint() / static_cast<double>(cols));
}

Complex random_nonzero_scalar(Rng& rng) {
  const double mod = std::exp(rng.uniform(-std::log(2.0), std::log(2.0)));
  return std::polar(mod, rng.uniform(0.0, 2.0 * std::numbers::pi));
}

double random_nonzero_real(Rng& rng) {
  const double mod = std::exp(rng.uniform(-std::log(2.0), std::log(2.0)));
  return rng.sign() * mod;
}

std::string_view to_string(XKind kind) {
  switch (kind) {
    case XKind::kGinibre: return "ginibre";
    case XKind::kRankOne: return "rank_one";
    case XKind::kHermitian: return "hermitian";
    case XKind::kUnitary: return "unitary";
  }
  return "unknown";
}

CMatrix random_x(Eigen::Index n, XKind kind, Rng& rng) {
  require_dimension(n);
  switch (kind) {
    case XKind::kGinibre:
      return ginibre(n, n, rng);
    case XKind::kRankOne: {
      const auto i = static_cast<Eigen::Index>((rng() >> 11) % static_cast<std::uint64_t>(n));
      const auto j = static_cast<Eigen::Index>((rng() >> 11) % static_cast<std::uint64_t>(n));
      CMatrix x = CMatrix::Zero(n, n);
      x(i, j) = rng.complex_normal();
      return x;
    }
    case XKind::kHermitian:
      return hermitian_part(ginibre(n, n, rng));
    case XKind::kUnitary:
      return haar_unitary(n, rng);
  }
  return ginibre(n, n, rng);
}

XKind x_kind_for_instance(std::uint64_t instance) {
  switch (instance % 12) {
    case 3: return XKind::kRankOne;
    case 7: return XKind::kHermitian;
    case 11: return XKind::kUnitary;
    default: return XKind::kGinibre;
  }
}

}  // namespace cprlab
