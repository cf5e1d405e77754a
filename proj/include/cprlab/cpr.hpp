#ifndef CPRLAB_CPR_HPP_
#define CPRLAB_CPR_HPP_

#include <optional>
#include <vector>

#include "cprlab/chain.hpp"
#include "cprlab/heinz.hpp"
#include "cprlab/matcore.hpp"
#include "cprlab/norms.hpp"

namespace cprlab {

// ||| S X S^-1 + S^-1 X S ||| >= 2 |||X||| for invertible self-adjoint S.
ChainReport cpr_check(const CMatrix& s, const CMatrix& x, const NormKind& kind,
                      double tol = kChainTolerance);

// ||| S X T^-1 + S^-1 X T ||| >= 2 |||X||| for invertible self-adjoint S, T.
ChainReport cpr_two_sided_check(const CMatrix& s, const CMatrix& t,
                                const CMatrix& x, const NormKind& kind,
                                double tol = kChainTolerance);

// ||| S* X S^-1 + S^-1 X S* ||| >= 2 |||X||| for any invertible S.
ChainReport cpr_star_check(const CMatrix& s, const CMatrix& x,
                           const NormKind& kind, double tol = kChainTolerance);

// Parameters of the two-parameter arithmetic-geometric mean family:
// t <= 2, r in [1/2, 3/2]. Regime 1 is r <= 1.
struct ZhanParams {
  double t = 0.0;
  double r = 1.0;

  int regime() const { return r <= 1.0 ? 1 : 2; }
  // Throws InvalidParams.
  void validate() const;
};

// The eight-member refinement chain, largest first. Writing
// M(p, q) = A^p X B^q + A^q X B^p and c = (4 - 2t) |||AXB|||:
//   0: 2|||A^2X + XB^2 + tAXB|||
//   1: 2|||A^2X + XB^2 + 2AXB||| - c
//   2: 4|||M(3/2, 1/2)||| - c
//   3: 2|||M(3/2, 1/2)||| + 2|||M(r, 2-r)||| - c
//   4: 4 * mean of |||M(nu + 1/2, 3/2 - nu)||| over [0, r-1/2] (regime 1)
//      or [r-1/2, 1] (regime 2), minus c
//   5: 4|||M((2r+1)/4, (7-2r)/4)||| - c   (regime 1)
//      4|||M((2r+3)/4, (5-2r)/4)||| - c   (regime 2)
//   6: 4|||M(r, 2-r)||| - c
//   7: (t+2)|||M(r, 2-r)|||
ChainReport zhan_chain(const PositiveOperator& a, const PositiveOperator& b,
                       const CMatrix& x, const ZhanParams& params,
                       const NormKind& kind,
                       int nodes = kDefaultQuadratureNodes,
                       double tol = kChainTolerance);

// One evaluation of the chain for several norms. `regime` overrides the
// automatic choice; r must lie in the forced regime's closed interval.
std::vector<ChainReport> zhan_chains(const PositiveOperator& a,
                                     const PositiveOperator& b,
                                     const CMatrix& x, const ZhanParams& params,
                                     const std::vector<NormKind>& kinds,
                                     std::optional<int> regime = std::nullopt,
                                     int nodes = kDefaultQuadratureNodes,
                                     double tol = kChainTolerance);

// (2|||A^2X + tAXB + XB^2|||, (2+t)|||A^r X B^(2-r) + A^(2-r) X B^r|||);
// bit-identical to members 0 and 7 of zhan_chain.
ChainReport zhan_check(const PositiveOperator& a, const PositiveOperator& b,
                       const CMatrix& x, const ZhanParams& params,
                       const NormKind& kind, double tol = kChainTolerance);

// (|||A*AX + XBB* + t|A| X |B*| |||, (t+2)|||AXB|||) for arbitrary A, B and
// t <= 2, with |A| = (A*A)^(1/2) and |B*| = (BB*)^(1/2).
ChainReport cor23_check(const CMatrix& a, const CMatrix& b, const CMatrix& x,
                        double t, const NormKind& kind,
                        double tol = kChainTolerance);

// (|||P X Q^-1 + P^-1 X Q + tX|||, (t+2)|||X|||), t <= 2.
ChainReport cor24_check(const PositiveOperator& p, const PositiveOperator& q,
                        const CMatrix& x, double t, const NormKind& kind,
                        double tol = kChainTolerance);

// (|||(SYS^-1 + S*^-1 Y S*) (+) (S*XS*^-1 + S^-1 X S)|||, 2|||X (+) Y|||).
ChainReport mos1_check(const CMatrix& s, const CMatrix& x, const CMatrix& y,
                       const NormKind& kind, double tol = kChainTolerance);

// (|||(SYS*^-1 + S*^-1 Y S) (+) (S*XS^-1 + S^-1 X S*)|||, 2|||X (+) Y|||).
ChainReport mos2_check(const CMatrix& s, const CMatrix& x, const CMatrix& y,
                       const NormKind& kind, double tol = kChainTolerance);

struct FinalCorollaryReport {
  // max(||SXS^-1 + S*^-1XS*||, ||S*XS*^-1 + S^-1XS||) >= 2||X||.
  ChainReport operator_form;
  // ||SXS^-1 + S*^-1XS*||_p^p + ||S*XS*^-1 + S^-1XS||_p^p >= 2^(p+1)||X||_p^p.
  ChainReport schatten_form;

  bool passed() const { return operator_form.passed() && schatten_form.passed(); }
};

FinalCorollaryReport final_cor_check(const CMatrix& s, const CMatrix& x, double p,
                                     double tol = kChainTolerance);

}  // namespace cprlab

#endif  // CPRLAB_CPR_HPP_
