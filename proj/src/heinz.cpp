#include "cprlab/heinz.hpp"

#include <cmath>
#include <string>

namespace cprlab {
namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw LabError(ErrorCode::kInvalidParams,
                   std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

void require_heinz_shapes(const PositiveOperator& a, const PositiveOperator& b,
                          const CMatrix& x) {
  if (x.rows() != a.dim() || x.cols() != b.dim()) {
    throw LabError(ErrorCode::kDimensionMismatch,
                   "X must be dim(A) x dim(B)");
  }
}

CMatrix mixed_power_sum(const PositiveOperator& a, const PositiveOperator& b,
                        const CMatrix& x, double p, double q) {
  require_heinz_shapes(a, b, x);
  return a.power(p) * x * b.power(q) + a.power(q) * x * b.power(p);
}

CMatrix heinz_expr(const PositiveOperator& a, const PositiveOperator& b,
                   const CMatrix& x, double alpha) {
  require_unit_interval(alpha, "alpha");
  return mixed_power_sum(a, b, x, alpha, 1.0 - alpha);
}

ChainReport heinz_check(const PositiveOperator& a, const PositiveOperator& b,
                        const CMatrix& x, double alpha, const NormKind& kind,
                        double tol) {
  const CMatrix h = heinz_expr(a, b, x, alpha);
  const CMatrix sum = a.matrix() * x + x * b.matrix();
  return make_chain({"|||AX+XB|||", "|||heinz(alpha)|||"},
                    {norm(sum, kind), norm(h, kind)}, tol);
}

ChainReport agm_check(const CMatrix& a, const CMatrix& b, const CMatrix& x,
                      const NormKind& kind, double tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || x.rows() != a.rows() ||
      x.cols() != b.rows()) {
    throw LabError(ErrorCode::kDimensionMismatch, "agm_check shapes");
  }
  const CMatrix lhs = a.adjoint() * a * x + x * b * b.adjoint();
  const CMatrix axb = a * x * b;
  return make_chain({"|||A*AX+XBB*|||", "2|||AXB|||"},
                    {norm(lhs, kind), 2.0 * norm(axb, kind)}, tol);
}

double SampledMean::evaluate(const NormKind& kind) const {
  double sum = 0.0;
  for (size_t i = 0; i < spectra.size(); ++i) {
    sum += weights[i] * norm_from_singular_values(spectra[i], kind);
  }
  return sum;
}

double integral_mean_norm(const PositiveOperator& a, const PositiveOperator& b,
                          const CMatrix& x, double lo, double hi,
                          const NormKind& kind, int nodes) {
  require_unit_interval(lo, "lo");
  require_unit_interval(hi, "hi");
  require_heinz_shapes(a, b, x);
  return interval_mean(lo, hi, nodes, [&](double nu) {
    return norm(heinz_expr(a, b, x, nu), kind);
  });
}

HeinzRegime heinz_regime(double alpha) {
  require_unit_interval(alpha, "alpha");
  return alpha <= 0.5 ? HeinzRegime::kLower : HeinzRegime::kUpper;
}

ChainReport kittaneh_chain(const PositiveOperator& a, const PositiveOperator& b,
                           const CMatrix& x, double alpha, const NormKind& kind,
                           int nodes, double tol) {
  return kittaneh_chains(a, b, x, alpha, {kind}, heinz_regime(alpha), nodes, tol)
      .front();
}

std::vector<ChainReport> kittaneh_chains(const PositiveOperator& a,
                                         const PositiveOperator& b,
                                         const CMatrix& x, double alpha,
                                         const std::vector<NormKind>& kinds,
                                         HeinzRegime regime, int nodes,
                                         double tol) {
  require_unit_interval(alpha, "alpha");
  require_heinz_shapes(a, b, x);
  const bool lower = regime == HeinzRegime::kLower;
  if (lower ? alpha > 0.5 : alpha < 0.5) {
    throw LabError(ErrorCode::kInvalidParams, "alpha outside the requested regime");
  }
  const double midpoint = lower ? 0.5 * alpha : 0.5 * (1.0 + alpha);
  const double lo = lower ? 0.0 : alpha;
  const double hi = lower ? alpha : 1.0;

  const RVector sum_sv = singular_values(a.matrix() * x + x * b.matrix());
  const RVector heinz_sv = singular_values(heinz_expr(a, b, x, alpha));
  const RVector mid_sv = singular_values(heinz_expr(a, b, x, midpoint));
  const SampledMean mean = sample_mean(lo, hi, nodes, [&](double nu) {
    return heinz_expr(a, b, x, nu);
  });

  const std::string mid_label = lower ? "|||heinz(alpha/2)|||" : "|||heinz((1+alpha)/2)|||";
  std::vector<ChainReport> out;
  out.reserve(kinds.size());
  for (const NormKind& kind : kinds) {
    const double full = norm_from_singular_values(sum_sv, kind);
    const double h = norm_from_singular_values(heinz_sv, kind);
    out.push_back(make_chain(
        {"|||AX+XB|||", "(|||AX+XB|||+|||heinz(alpha)|||)/2", "mean_integral",
         mid_label, "|||heinz(alpha)|||"},
        {full, 0.5 * (full + h), mean.evaluate(kind),
         norm_from_singular_values(mid_sv, kind), h},
        tol));
  }
  return out;
}

}  // namespace cprlab
