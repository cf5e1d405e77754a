#ifndef CPRLAB_RANDOM_HPP_
#define CPRLAB_RANDOM_HPP_

#include <string_view>

#include "cprlab/matcore.hpp"
#include "cprlab/rng.hpp"

namespace cprlab {

// Self-adjoint sample with the spectral data it was built from.
struct HermitianSample {
  CMatrix matrix;
  HermEigen<Complex> spectral;
};

// i.i.d. standard complex Gaussian entries.
CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// QR of a Ginibre matrix with the phases of diag(R) folded back into Q.
CMatrix haar_unitary(Eigen::Index n, Rng& rng);

// Log-uniform spectrum on [1/sqrt(cond), sqrt(cond)] conjugated by a Haar
// unitary. The exact eigen-data is kept in the returned operator.
PositiveOperator random_posdef(Eigen::Index n, double cond, Rng& rng);

// As random_posdef, then every eigenvalue gets an independent random sign.
// The sign draws come after the random_posdef draws, so a draw whose signs
// all come out positive reproduces random_posdef on the same stream.
HermitianSample random_selfadjoint_invertible(Eigen::Index n, double cond,
                                              Rng& rng);

// U diag(sigma) W with independent Haar U, W and log-uniform sigma: a generic
// (typically non-normal) invertible matrix with condition number <= cond.
CMatrix random_invertible(Eigen::Index n, double cond, Rng& rng);

// U D U* with complex diagonal D: log-uniform moduli, uniform phases.
CMatrix random_normal(Eigen::Index n, double cond, Rng& rng);

// Self-adjoint unitary U diag(+-1) U*.
CMatrix random_unitary_reflection(Eigen::Index n, Rng& rng);

// Gram matrix Z Z* / cols of a Ginibre Z with a random column count in
// [1, n]; positive semidefinite and possibly singular.
CMatrix random_psd_gram(Eigen::Index n, Rng& rng);

// Random nonzero complex scalar with modulus in [1/2, 2].
Complex random_nonzero_scalar(Rng& rng);

// Random nonzero real scalar with modulus in [1/2, 2] and random sign.
double random_nonzero_real(Rng& rng);

// X samplers used by the inequality suites.
enum class XKind { kGinibre, kRankOne, kHermitian, kUnitary };

std::string_view to_string(XKind kind);

CMatrix random_x(Eigen::Index n, XKind kind, Rng& rng);

// Cycles through the X kinds: Ginibre for three quarters of the indices,
// the structured kinds for the rest.
XKind x_kind_for_instance(std::uint64_t instance);

}  // namespace cprlab

#endif  // CPRLAB_RANDOM_HPP_
