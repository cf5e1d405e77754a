#ifndef CPRLAB_NORMS_HPP_
#define CPRLAB_NORMS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "cprlab/matcore.hpp"

namespace cprlab {

// Unitarily invariant norm selector. Operator is the spectral norm; there is
// no Schatten(inf) variant. Frobenius is Schatten(2), trace is Schatten(1).
class NormKind {
 public:
  enum class Family { kOperator, kSchatten, kKyFan };

  static NormKind op() { return NormKind(Family::kOperator, 0.0, 1); }
  static NormKind schatten(double p);
  static NormKind kyfan(int k);
  static NormKind frobenius() { return schatten(2.0); }
  static NormKind trace() { return schatten(1.0); }

  // Selector grammar: "op", "fro", "tr", "schatten:<p>", "kyfan:<k>".
  static NormKind parse(std::string_view text);

  Family family() const { return family_; }
  double p() const { return p_; }
  int k() const { return k_; }

  // Canonical selector string; parse(to_string()) == *this.
  std::string to_string() const;

  friend bool operator==(const NormKind&, const NormKind&) = default;

 private:
  NormKind(Family family, double p, int k) : family_(family), p_(p), k_(k) {}

  Family family_;
  double p_;
  int k_;
};

std::vector<NormKind> parse_norm_list(std::string_view csv);

// Singular values below this fraction of the largest are treated as zero
// before p-th powers.
inline constexpr double kSingularValueFloor = 1e-14;

// Evaluates a norm from singular values sorted descending.
double norm_from_singular_values(const RVector& sigma, const NormKind& kind);

// sum_i sigma_i^p with the same flooring as the Schatten norm.
double schatten_power_from_singular_values(const RVector& sigma, double p);

double norm(const CMatrix& a, const NormKind& kind);

// ||A||_p^p.
double schatten_power(const CMatrix& a, double p);

// norm(direct_sum(A, B), kind) evaluated on the assembled block matrix.
double direct_sum_norm(const CMatrix& a, const CMatrix& b, const NormKind& kind);

}  // namespace cprlab

#endif  // CPRLAB_NORMS_HPP_
