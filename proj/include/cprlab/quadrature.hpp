#ifndef CPRLAB_QUADRATURE_HPP_
#define CPRLAB_QUADRATURE_HPP_

#include <vector>

namespace cprlab {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes ascending. Rules are computed once per node count and cached.
const GaussLegendre& gauss_legendre(int nodes);

// Intervals shorter than this are averaged by evaluating at the lower end.
inline constexpr double kDegenerateInterval = 1e-10;

// Nodes and weights of the mean (1/(hi-lo)) * integral over [lo, hi]; the
// weights sum to one. A degenerate interval yields the single node lo.
struct MeanRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

MeanRule mean_rule(double lo, double hi, int nodes);

template <typename F>
double interval_mean(double lo, double hi, int nodes, F&& f) {
  const MeanRule rule = mean_rule(lo, hi, nodes);
  double sum = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

}  // namespace cprlab

#endif  // CPRLAB_QUADRATURE_HPP_
