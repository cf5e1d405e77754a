#ifndef CPRLAB_CLASSES_HPP_
#define CPRLAB_CLASSES_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "cprlab/chain.hpp"
#include "cprlab/matcore.hpp"
#include "cprlab/norms.hpp"
#include "cprlab/rng.hpp"

namespace cprlab {

// phi_{S,k}(X) = S X S^-1 + S^-1 X S + k X.
CMatrix phi(const CMatrix& s, double k, const CMatrix& x);

// ||phi_{S,k}(X)|| / ||X|| in the operator norm, with S^-1 precomputed.
double phi_ratio(const CMatrix& s, const CMatrix& s_inv, double k, const CMatrix& x);

struct DkSpectralResult {
  bool ok = true;
  // m_ij = lambda_i/lambda_j + lambda_j/lambda_i + k over all ordered pairs.
  RMatrix pair_values;
  // Pair minimizing |m_ij|.
  Eigen::Index worst_i = 0;
  Eigen::Index worst_j = 0;
  double worst_abs = 0.0;
  // False when k < 0, where the necessary condition is not guaranteed.
  bool k_in_guarantee = true;
};

// |m_ij| >= k + 2 - 1e-12 for every ordered pair. Throws ZeroEigenvalue.
DkSpectralResult dk_spectral_test(const RVector& eigenvalues, double k);

// For self-adjoint S = Q diag(lambda) Q*, compares phi_{S,k}(X) with
// Q (M o (Q* X Q)) Q*, M_ij = lambda_i/lambda_j + lambda_j/lambda_i + k.
// Returns ||difference||_F / max(1, ||phi||_F).
double schur_rep_residual(const CMatrix& s, double k, const CMatrix& x);

// (max_i N_ii ||X||, ||N o X||) in the operator norm for PSD N.
// Throws NotPSD when min eig(N) < -1e-10 max eig(N).
ChainReport schur_theorem_bound_check(const CMatrix& n, const CMatrix& x,
                                      double tol = kChainTolerance);

struct DkProbeOptions {
  int starts = 64;
  int iters = 500;
};

struct DkProbeResult {
  RVector eigenvalues;
  double k = 0.0;
  bool spectral_ok = true;
  // Least ||phi(X)|| / ||X|| found; an upper bound on the infimum.
  double best_ratio = 0.0;
  // Unit operator norm.
  CMatrix witness;
  int starts_used = 0;
};

// Multistart projected subgradient descent of the operator-norm ratio over
// the unit Frobenius sphere. Starts are every rank-one q_i q_j* built from
// eigenvectors of S, the identity, then Ginibre draws up to `starts` total.
DkProbeResult dk_ratio_minimize(const CMatrix& s, double k,
                                const DkProbeOptions& options, Rng& rng);

enum class DkVerdict { kViolated, kConsistent, kSpectrallyExcluded };

std::string_view to_string(DkVerdict verdict);

// Excluded when the spectral criterion fails, violated when a witness below
// (k + 2)(1 - 1e-9) was found, consistent otherwise.
DkVerdict dk_verdict(const DkProbeResult& result);

// Operator relations on S, X:
//   L = SXS^-1, R = S^-1XS, L' = S*XS^-1, R' = S^-1XS*.
enum class CharacterizationForm {
  kIneq6,   // ||L+R|| >= 2||X||
  kEq7,     // ||L+R|| = ||L'+R'||
  kIneq8,   // ||L+R|| >= ||L'+R'||
  kIneq9,   // ||L||+||R|| >= 2||X||
  kEq10,    // ||L||+||R|| = ||L'||+||R'||
  kIneq11,  // ||L||+||R|| >= ||L'||+||R'||
  kIneq12,  // ||L||+||R|| <= ||L'||+||R'||
  kIneq13,  // ||L+R|| <= 2||X||
  kEq14,    // ||L+R|| = 2||X||
  kIneq15,  // ||L+R|| <= ||L'+R'||
  kEq16,    // ||L||+||R|| = 2||X||
  kIneq17,  // ||L||+||R|| <= 2||X||
  kEq18,    // ||S*XS^-1 + S^-1XS*|| = 2||X||
  kEq19,    // ||S*XS^-1|| + ||S^-1XS*|| = 2||X||
};

const std::vector<CharacterizationForm>& all_characterization_forms();
std::string_view to_string(CharacterizationForm form);
std::optional<CharacterizationForm> parse_characterization_form(std::string_view text);
bool is_equality(CharacterizationForm form);

// Classes of invertible operators the relations single out.
enum class OperatorClass {
  kComplexScaledSelfAdjoint,  // C* S_0
  kNormal,                    // invertible normal
  kRealScaledUnitary,         // R* U
  kComplexScaledReflection,   // C* U_r
  kComplexScaledPositive,     // C* P_0
};

std::string_view to_string(OperatorClass cls);

// The class on which the relation holds for every X.
OperatorClass characterized_class(CharacterizationForm form);

CMatrix random_class_member(OperatorClass cls, Eigen::Index n, double cond, Rng& rng);

// Evaluates both sides of `form` on one X. "<=" relations are reported
// flipped so that every link reads ">="; "=" relations use the 1e-9
// equality tolerance.
ChainReport characterization_check(const CMatrix& s, const CMatrix& x,
                                   CharacterizationForm form,
                                   const NormKind& kind = NormKind::op());

}  // namespace cprlab

#endif  // CPRLAB_CLASSES_HPP_
