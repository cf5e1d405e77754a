#ifndef CPRLAB_CONJECTURE_HPP_
#define CPRLAB_CONJECTURE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cprlab/matcore.hpp"
#include "cprlab/rng.hpp"

namespace cprlab {

// psd <=> min_eig >= -1e-10 * max(1, max_eig).
inline constexpr double kPsdTolerance = 1e-10;

struct ConstraintResult {
  bool ok = true;
  // Pair minimizing |lambda_i/lambda_j + lambda_j/lambda_i + k|.
  Eigen::Index worst_i = 0;
  Eigen::Index worst_j = 0;
  double worst_value = 0.0;
};

// |lambda_i/lambda_j + lambda_j/lambda_i + k| >= k + 2 - 1e-12 for all pairs.
// Throws ZeroLambda, InvalidK (k outside [0, 2]).
ConstraintResult constraint_check(const RVector& lambdas, double k);

// C_ij = lambda_i lambda_j / (lambda_i^2 + lambda_j^2 + k lambda_i lambda_j).
// Throws DegenerateDenominator when a denominator is <= 1e-12 of
// lambda_i^2 + lambda_j^2.
RMatrix build_conj_matrix(const RVector& lambdas, double k);

// Experimental complex-lambda candidate
// C_ij = lambda_i conj(lambda_j) / (|lambda_i|^2 + |lambda_j|^2 + k lambda_i conj(lambda_j)).
CMatrix build_conj_matrix_complex(const Eigen::VectorXcd& lambdas, double k);

struct PsdResult {
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool psd = true;
};

template <typename Derived>
PsdResult psd_check(const Eigen::MatrixBase<Derived>& c) {
  const auto eig = herm_eigen(c, /*compute_vectors=*/false);
  PsdResult out;
  out.min_eig = eig.eigenvalues.minCoeff();
  out.max_eig = eig.eigenvalues.maxCoeff();
  out.psd = out.min_eig >= -kPsdTolerance * std::max(1.0, out.max_eig);
  return out;
}

struct ConjectureInstance {
  double k = 0.0;
  RVector lambdas;
  bool constraint_ok = true;
  RMatrix matrix;
  double min_eig = 0.0;
  bool psd = true;
};

ConjectureInstance evaluate_instance(const RVector& lambdas, double k);

// One line of the violations file.
struct ConjectureViolation {
  double k = 0.0;
  std::vector<double> lambdas;
  double min_eig = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t instance = 0;
};

// {"k":..,"lambdas":[..],"min_eig":..,"seed":..,"instance":..}; doubles are
// written with round-trip precision.
std::string to_json_line(const ConjectureViolation& v);
ConjectureViolation violation_from_json_line(const std::string& line);

struct SearchConfig {
  int n = 3;
  std::vector<double> k_values = {0.0, 0.5, 1.0, 2.0};
  std::uint64_t count = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  int max_rejections = 10000;
  double magnitude_lo = 1e-2;
  double magnitude_hi = 1e2;
  // Experimental: complex lambdas with the Hermitian candidate matrix.
  bool complex_lambdas = false;
};

// Fixed bin edges for min_eig; bin i covers [edges[i-1], edges[i]) with
// open-ended first and last bins.
struct MinEigHistogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;

  MinEigHistogram();
  void add(double value);
  void merge(const MinEigHistogram& other);
};

struct SearchSummary {
  double k = 0.0;
  int n = 0;
  std::uint64_t accepted = 0;
  std::uint64_t draws = 0;
  std::uint64_t violations = 0;
  double min_min_eig = 0.0;
  MinEigHistogram histogram;

  double rejection_rate() const {
    return draws == 0 ? 0.0 : static_cast<double>(draws - accepted) / static_cast<double>(draws);
  }
};

// Draws nonzero lambdas with log-uniform magnitudes and random signs until
// the pairwise constraint holds. Throws SamplerExhausted after
// max_rejections failed draws. `draws` receives the number of draws used.
RVector sample_constrained_lambdas(int n, double k, const SearchConfig& config,
                                   Rng& rng, std::uint64_t* draws);

// Instance i for k_values[j] uses Rng(seed, j).substream(i). Violations are
// handed to `on_violation` in (k, instance) order, block by block, before
// the summaries are returned.
std::vector<SearchSummary> conjecture_search(
    const SearchConfig& config,
    const std::function<void(const ConjectureViolation&)>& on_violation);

enum class ConditionalOutcome {
  kConsistent,          // PSD and the inequality held on every sample
  kImplementationBug,   // PSD but some sample violated the inequality
  kInconclusive,        // not PSD, inequality held on every sample
  kWitnessOutsideClass  // not PSD and a sample violated the inequality
};

std::string_view to_string(ConditionalOutcome outcome);

struct ConditionalReport {
  bool psd = true;
  double min_eig = 0.0;
  // min over samples of ||phi(X)|| / ((k + 2) ||X||), operator norm.
  double min_ratio = 0.0;
  bool inequality_holds = true;
  int samples = 0;
  ConditionalOutcome outcome = ConditionalOutcome::kConsistent;
};

// S = diag(lambdas). X runs over the identity, every e_i e_j*, and
// `random_samples` Ginibre draws. Requires the constraint to hold.
ConditionalReport conditional_theorem_check(const RVector& lambdas, double k,
                                            int random_samples, Rng& rng,
                                            double tol = 1e-8);

}  // namespace cprlab

#endif  // CPRLAB_CONJECTURE_HPP_
