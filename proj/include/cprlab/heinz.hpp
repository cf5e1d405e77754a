#ifndef CPRLAB_HEINZ_HPP_
#define CPRLAB_HEINZ_HPP_

#include <vector>

#include "cprlab/chain.hpp"
#include "cprlab/matcore.hpp"
#include "cprlab/norms.hpp"
#include "cprlab/quadrature.hpp"

namespace cprlab {

inline constexpr int kDefaultQuadratureNodes = 32;

// A^p X B^q + A^q X B^p.
CMatrix mixed_power_sum(const PositiveOperator& a, const PositiveOperator& b,
                        const CMatrix& x, double p, double q);

// Heinz mean A^alpha X B^(1-alpha) + A^(1-alpha) X B^alpha, alpha in [0, 1].
CMatrix heinz_expr(const PositiveOperator& a, const PositiveOperator& b,
                   const CMatrix& x, double alpha);

// (|||AX + XB|||, |||heinz_expr|||).
ChainReport heinz_check(const PositiveOperator& a, const PositiveOperator& b,
                        const CMatrix& x, double alpha, const NormKind& kind,
                        double tol = kChainTolerance);

// (|||A*A X + X B B*|||, 2 |||A X B|||) for arbitrary A, B.
ChainReport agm_check(const CMatrix& a, const CMatrix& b, const CMatrix& x,
                      const NormKind& kind, double tol = kChainTolerance);

// Singular values of a matrix-valued integrand at the nodes of a mean rule.
// Lets one set of matrix evaluations serve every norm.
struct SampledMean {
  std::vector<double> weights;
  std::vector<RVector> spectra;

  double evaluate(const NormKind& kind) const;
};

template <typename MatrixAt>
SampledMean sample_mean(double lo, double hi, int nodes, MatrixAt&& matrix_at) {
  const MeanRule rule = mean_rule(lo, hi, nodes);
  SampledMean out;
  out.weights = rule.weights;
  out.spectra.reserve(rule.nodes.size());
  for (double nu : rule.nodes) out.spectra.push_back(singular_values(matrix_at(nu)));
  return out;
}

// Gauss-Legendre approximation of (1/(hi-lo)) * integral over [lo, hi] of
// |||heinz_expr(A, B, X, nu)||| d nu. 0 <= lo <= hi <= 1; a zero-length
// interval returns the integrand at lo.
double integral_mean_norm(const PositiveOperator& a, const PositiveOperator& b,
                          const CMatrix& x, double lo, double hi,
                          const NormKind& kind,
                          int nodes = kDefaultQuadratureNodes);

// Lower: alpha in [0, 1/2], midpoint alpha/2, mean over [0, alpha].
// Upper: alpha in [1/2, 1], midpoint (1+alpha)/2, mean over [alpha, 1].
enum class HeinzRegime { kLower, kUpper };

HeinzRegime heinz_regime(double alpha);

// Refined Heinz chain, largest value first:
//   |||AX+XB||| >= (|||AX+XB||| + H(alpha))/2 >= mean of H over the regime
//   interval >= H(midpoint) >= H(alpha)
// where H(v) = |||heinz_expr(A, B, X, v)|||.
ChainReport kittaneh_chain(const PositiveOperator& a, const PositiveOperator& b,
                           const CMatrix& x, double alpha, const NormKind& kind,
                           int nodes = kDefaultQuadratureNodes,
                           double tol = kChainTolerance);

// Same chain in several norms from one set of matrix evaluations. The
// regime is forced when given; alpha must lie in its closed interval.
std::vector<ChainReport> kittaneh_chains(const PositiveOperator& a,
                                         const PositiveOperator& b,
                                         const CMatrix& x, double alpha,
                                         const std::vector<NormKind>& kinds,
                                         HeinzRegime regime,
                                         int nodes = kDefaultQuadratureNodes,
                                         double tol = kChainTolerance);

void require_heinz_shapes(const PositiveOperator& a, const PositiveOperator& b,
                          const CMatrix& x);

}  // namespace cprlab

#endif  // CPRLAB_HEINZ_HPP_
