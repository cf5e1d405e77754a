#ifndef CPRLAB_CHAIN_HPP_
#define CPRLAB_CHAIN_HPP_

#include <string>
#include <vector>

namespace cprlab {

// Relative tolerance for "v_i >= v_{i+1}" links.
inline constexpr double kChainTolerance = 1e-8;
// Relative tolerance for "v_i = v_{i+1}" links.
inline constexpr double kEqualityTolerance = 1e-9;

enum class Relation { kGreaterEqual, kEqual };

const char* to_string(Relation relation);

// Ordered named values v_0 R v_1 R ... with one relation per link. For a
// ">=" link the margin is v_i - v_{i+1}; for an "=" link it is
// -|v_i - v_{i+1}|. A link passes when its margin is >= -tol * scale with
// scale = max(1, |v_i|, |v_{i+1}|).
struct ChainReport {
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<Relation> relations;
  std::vector<double> margins;
  std::vector<bool> link_pass;

  bool passed() const;
  double min_margin() const;
  // Smallest margin divided by its link scale.
  double min_relative_margin() const;
  size_t links() const { return margins.size(); }
};

// Builds an all-">=" chain.
ChainReport make_chain(std::vector<std::string> labels, std::vector<double> values,
                       double tol = kChainTolerance);

// Two-value report "lhs R rhs".
ChainReport make_relation(std::string lhs_label, double lhs, std::string rhs_label,
                          double rhs, Relation relation, double tol);

double link_scale(double a, double b);

}  // namespace cprlab

#endif  // CPRLAB_CHAIN_HPP_
