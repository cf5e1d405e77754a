#include "cprlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "cprlab/error.hpp"

namespace cprlab {
namespace {

// Newton iteration on P_n from the Tricomi initial guess.
GaussLegendre compute_rule(int n) {
  GaussLegendre rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<size_t>(i);
    const auto hi = static_cast<size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int nodes) {
  if (nodes < 1 || nodes > 512) {
    throw LabError(ErrorCode::kInvalidParams, "quadrature node count must be in [1, 512]");
  }
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(nodes);
  if (it == cache.end()) it = cache.emplace(nodes, compute_rule(nodes)).first;
  return it->second;
}

MeanRule mean_rule(double lo, double hi, int nodes) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw LabError(ErrorCode::kInvalidParams, "mean interval must satisfy lo <= hi");
  }
  MeanRule out;
  if (hi - lo < kDegenerateInterval) {
    out.nodes = {lo};
    out.weights = {1.0};
    return out;
  }
  const GaussLegendre& rule = gauss_legendre(nodes);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  out.nodes.resize(rule.nodes.size());
  out.weights.resize(rule.nodes.size());
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    out.nodes[i] = mid + half * rule.nodes[i];
    out.weights[i] = 0.5 * rule.weights[i];
  }
  return out;
}

}  // namespace cprlab
