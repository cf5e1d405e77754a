#include "cprlab/cpr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cprlab {
namespace {

void require_self_adjoint(const CMatrix& s, const char* what) {
  require_square(s, what);
  if (!is_hermitian(s)) {
    throw LabError(ErrorCode::kNotHermitian, std::string(what) + " must be self-adjoint");
  }
}

void require_compatible(const CMatrix& s, const CMatrix& x) {
  require_square(s, "S");
  if (x.rows() != s.rows() || x.cols() != s.cols()) {
    throw LabError(ErrorCode::kDimensionMismatch, "X must match S");
  }
}

void require_t(double t) {
  if (!std::isfinite(t) || t > 2.0) {
    throw LabError(ErrorCode::kInvalidParams, "t must be finite and <= 2");
  }
}

// Matrices entering the eight-member chain. Members 0 and 7 are shared with
// zhan_check so the two routes produce identical numbers.
CMatrix zhan_quadratic(const PositiveOperator& a, const PositiveOperator& b,
                       const CMatrix& x, double t) {
  const CMatrix& am = a.matrix();
  const CMatrix& bm = b.matrix();
  return am * am * x + x * bm * bm + t * (am * x * bm);
}

CMatrix zhan_mixed(const PositiveOperator& a, const PositiveOperator& b,
                   const CMatrix& x, double r) {
  return mixed_power_sum(a, b, x, r, 2.0 - r);
}

}  // namespace

ChainReport cpr_check(const CMatrix& s, const CMatrix& x, const NormKind& kind,
                      double tol) {
  require_self_adjoint(s, "S");
  require_compatible(s, x);
  const CMatrix s_inv = inverse(s);
  return make_chain({"|||SXS^-1+S^-1XS|||", "2|||X|||"},
                    {norm(s * x * s_inv + s_inv * x * s, kind), 2.0 * norm(x, kind)},
                    tol);
}

ChainReport cpr_two_sided_check(const CMatrix& s, const CMatrix& t,
                                const CMatrix& x, const NormKind& kind,
                                double tol) {
  require_self_adjoint(s, "S");
  require_self_adjoint(t, "T");
  require_compatible(s, x);
  require_compatible(t, x);
  const CMatrix s_inv = inverse(s);
  const CMatrix t_inv = inverse(t);
  return make_chain({"|||SXT^-1+S^-1XT|||", "2|||X|||"},
                    {norm(s * x * t_inv + s_inv * x * t, kind), 2.0 * norm(x, kind)},
                    tol);
}

ChainReport cpr_star_check(const CMatrix& s, const CMatrix& x,
                           const NormKind& kind, double tol) {
  require_compatible(s, x);
  const CMatrix s_inv = inverse(s);
  const CMatrix s_star = s.adjoint();
  return make_chain(
      {"|||S*XS^-1+S^-1XS*|||", "2|||X|||"},
      {norm(s_star * x * s_inv + s_inv * x * s_star, kind), 2.0 * norm(x, kind)},
      tol);
}

void ZhanParams::validate() const {
  require_t(t);
  if (!(r >= 0.5 && r <= 1.5)) {
    throw LabError(ErrorCode::kInvalidParams, "r must lie in [1/2, 3/2]");
  }
}

ChainReport zhan_chain(const PositiveOperator& a, const PositiveOperator& b,
                       const CMatrix& x, const ZhanParams& params,
                       const NormKind& kind, int nodes, double tol) {
  return zhan_chains(a, b, x, params, {kind}, std::nullopt, nodes, tol).front();
}

std::vector<ChainReport> zhan_chains(const PositiveOperator& a,
                                     const PositiveOperator& b,
                                     const CMatrix& x, const ZhanParams& params,
                                     const std::vector<NormKind>& kinds,
                                     std::optional<int> regime, int nodes,
                                     double tol) {
  params.validate();
  require_heinz_shapes(a, b, x);
  const int reg = regime.value_or(params.regime());
  const double r = params.r;
  const double t = params.t;
  if ((reg != 1 && reg != 2) || (reg == 1 && r > 1.0) || (reg == 2 && r < 1.0)) {
    throw LabError(ErrorCode::kInvalidParams, "r outside the requested regime");
  }

  const RVector quad_t = singular_values(zhan_quadratic(a, b, x, t));
  const RVector quad_2 = singular_values(zhan_quadratic(a, b, x, 2.0));
  const RVector axb = singular_values(a.matrix() * x * b.matrix());
  const RVector half = singular_values(mixed_power_sum(a, b, x, 1.5, 0.5));
  const RVector mixed_r = singular_values(zhan_mixed(a, b, x, r));
  const double e1 = reg == 1 ? (2.0 * r + 1.0) / 4.0 : (2.0 * r + 3.0) / 4.0;
  const double e2 = reg == 1 ? (7.0 - 2.0 * r) / 4.0 : (5.0 - 2.0 * r) / 4.0;
  const RVector quarter = singular_values(mixed_power_sum(a, b, x, e1, e2));
  const double lo = reg == 1 ? 0.0 : r - 0.5;
  const double hi = reg == 1 ? r - 0.5 : 1.0;
  const SampledMean mean = sample_mean(lo, hi, nodes, [&](double nu) {
    return mixed_power_sum(a, b, x, nu + 0.5, 1.5 - nu);
  });

  const std::vector<std::string> labels = {
      "2|||A^2X+XB^2+tAXB|||",
      "2|||A^2X+XB^2+2AXB|||-c",
      "4|||M(3/2,1/2)|||-c",
      "2|||M(3/2,1/2)|||+2|||M(r,2-r)|||-c",
      "4*mean_integral-c",
      reg == 1 ? "4|||M((2r+1)/4,(7-2r)/4)|||-c" : "4|||M((2r+3)/4,(5-2r)/4)|||-c",
      "4|||M(r,2-r)|||-c",
      "(t+2)|||M(r,2-r)|||"};

  std::vector<ChainReport> out;
  out.reserve(kinds.size());
  for (const NormKind& kind : kinds) {
    const auto nv = [&](const RVector& sv) { return norm_from_singular_values(sv, kind); };
    const double c = (4.0 - 2.0 * t) * nv(axb);
    const double h = nv(half);
    const double m = nv(mixed_r);
    out.push_back(make_chain(labels,
                             {2.0 * nv(quad_t), 2.0 * nv(quad_2) - c, 4.0 * h - c,
                              2.0 * h + 2.0 * m - c, 4.0 * mean.evaluate(kind) - c,
                              4.0 * nv(quarter) - c, 4.0 * m - c, (t + 2.0) * m},
                             tol));
  }
  return out;
}

ChainReport zhan_check(const PositiveOperator& a, const PositiveOperator& b,
                       const CMatrix& x, const ZhanParams& params,
                       const NormKind& kind, double tol) {
  params.validate();
  require_heinz_shapes(a, b, x);
  const RVector quad_t = singular_values(zhan_quadratic(a, b, x, params.t));
  const RVector mixed_r = singular_values(zhan_mixed(a, b, x, params.r));
  return make_chain({"2|||A^2X+XB^2+tAXB|||", "(t+2)|||M(r,2-r)|||"},
                    {2.0 * norm_from_singular_values(quad_t, kind),
                     (params.t + 2.0) * norm_from_singular_values(mixed_r, kind)},
                    tol);
}

ChainReport cor23_check(const CMatrix& a, const CMatrix& b, const CMatrix& x,
                        double t, const NormKind& kind, double tol) {
  require_t(t);
  require_square(a, "A");
  require_square(b, "B");
  if (x.rows() != a.rows() || x.cols() != b.rows()) {
    throw LabError(ErrorCode::kDimensionMismatch, "X must be dim(A) x dim(B)");
  }
  const CMatrix abs_a = modulus(a);
  const CMatrix abs_b_star = modulus(b.adjoint());
  const CMatrix lhs = a.adjoint() * a * x + x * b * b.adjoint() + t * (abs_a * x * abs_b_star);
  return make_chain({"|||A*AX+XBB*+t|A|X|B*||||", "(t+2)|||AXB|||"},
                    {norm(lhs, kind), (t + 2.0) * norm(a * x * b, kind)}, tol);
}

ChainReport cor24_check(const PositiveOperator& p, const PositiveOperator& q,
                        const CMatrix& x, double t, const NormKind& kind,
                        double tol) {
  require_t(t);
  require_heinz_shapes(p, q, x);
  const CMatrix lhs =
      p.matrix() * x * q.inverse() + p.inverse() * x * q.matrix() + t * x;
  return make_chain({"|||PXQ^-1+P^-1XQ+tX|||", "(t+2)|||X|||"},
                    {norm(lhs, kind), (t + 2.0) * norm(x, kind)}, tol);
}

ChainReport mos1_check(const CMatrix& s, const CMatrix& x, const CMatrix& y,
                       const NormKind& kind, double tol) {
  require_compatible(s, x);
  require_compatible(s, y);
  const CMatrix s_inv = inverse(s);
  const CMatrix s_star = s.adjoint();
  const CMatrix s_star_inv = s_inv.adjoint();
  const CMatrix top = s * y * s_inv + s_star_inv * y * s_star;
  const CMatrix bottom = s_star * x * s_star_inv + s_inv * x * s;
  return make_chain({"|||(SYS^-1+S*^-1YS*)+(S*XS*^-1+S^-1XS)|||", "2|||X+Y|||"},
                    {direct_sum_norm(top, bottom, kind), 2.0 * direct_sum_norm(x, y, kind)},
                    tol);
}

ChainReport mos2_check(const CMatrix& s, const CMatrix& x, const CMatrix& y,
                       const NormKind& kind, double tol) {
  require_compatible(s, x);
  require_compatible(s, y);
  const CMatrix s_inv = inverse(s);
  const CMatrix s_star = s.adjoint();
  const CMatrix s_star_inv = s_inv.adjoint();
  const CMatrix top = s * y * s_star_inv + s_star_inv * y * s;
  const CMatrix bottom = s_star * x * s_inv + s_inv * x * s_star;
  return make_chain({"|||(SYS*^-1+S*^-1YS)+(S*XS^-1+S^-1XS*)|||", "2|||X+Y|||"},
                    {direct_sum_norm(top, bottom, kind), 2.0 * direct_sum_norm(x, y, kind)},
                    tol);
}

FinalCorollaryReport final_cor_check(const CMatrix& s, const CMatrix& x, double p,
                                     double tol) {
  require_compatible(s, x);
  if (!std::isfinite(p) || p < 1.0) {
    throw LabError(ErrorCode::kInvalidParams, "p must be finite and >= 1");
  }
  const CMatrix s_inv = inverse(s);
  const CMatrix s_star = s.adjoint();
  const CMatrix s_star_inv = s_inv.adjoint();
  const CMatrix first = s * x * s_inv + s_star_inv * x * s_star;
  const CMatrix second = s_star * x * s_star_inv + s_inv * x * s;
  const RVector sv_first = singular_values(first);
  const RVector sv_second = singular_values(second);
  const RVector sv_x = singular_values(x);

  FinalCorollaryReport out;
  out.operator_form = make_chain(
      {"max(||SXS^-1+S*^-1XS*||,||S*XS*^-1+S^-1XS||)", "2||X||"},
      {std::max(sv_first(0), sv_second(0)), 2.0 * sv_x(0)}, tol);
  out.schatten_form = make_chain(
      {"||SXS^-1+S*^-1XS*||_p^p+||S*XS*^-1+S^-1XS||_p^p", "2^(p+1)||X||_p^p"},
      {schatten_power_from_singular_values(sv_first, p) +
           schatten_power_from_singular_values(sv_second, p),
       std::pow(2.0, p + 1.0) * schatten_power_from_singular_values(sv_x, p)},
      tol);
  return out;
}

}  // namespace cprlab
