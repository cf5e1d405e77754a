#include "cprlab/norms.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cprlab {
namespace {

double parse_double(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw LabError(ErrorCode::kInvalidParams,
                   "bad number '" + std::string(text) + "' in " + std::string(context));
  }
  return value;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

NormKind NormKind::schatten(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw LabError(ErrorCode::kInvalidParams,
                   "Schatten exponent must be finite and >= 1");
  }
  return NormKind(Family::kSchatten, p, 0);
}

NormKind NormKind::kyfan(int k) {
  if (k < 1) throw LabError(ErrorCode::kInvalidParams, "Ky Fan index must be >= 1");
  return NormKind(Family::kKyFan, 0.0, k);
}

NormKind NormKind::parse(std::string_view raw) {
  const std::string text = trim(raw);
  if (text == "op") return op();
  if (text == "fro") return frobenius();
  if (text == "tr") return trace();
  constexpr std::string_view kSchatten = "schatten:";
  constexpr std::string_view kKyFan = "kyfan:";
  if (text.rfind(kSchatten, 0) == 0) {
    return schatten(parse_double(std::string_view(text).substr(kSchatten.size()), text));
  }
  if (text.rfind(kKyFan, 0) == 0) {
    const double k = parse_double(std::string_view(text).substr(kKyFan.size()), text);
    if (k != std::floor(k) || k < 1 || k > 1e6) {
      throw LabError(ErrorCode::kInvalidParams, "Ky Fan index must be a positive integer");
    }
    return kyfan(static_cast<int>(k));
  }
  throw LabError(ErrorCode::kInvalidParams, "unknown norm selector '" + text + "'");
}

std::string NormKind::to_string() const {
  switch (family_) {
    case Family::kOperator:
      return "op";
    case Family::kSchatten: {
      if (p_ == 1.0) return "tr";
      if (p_ == 2.0) return "fro";
      std::ostringstream os;
      os.precision(17);
      os << "schatten:" << p_;
      return os.str();
    }
    case Family::kKyFan:
      return "kyfan:" + std::to_string(k_);
  }
  return "?";
}

std::vector<NormKind> parse_norm_list(std::string_view csv) {
  std::vector<NormKind> out;
  size_t start = 0;
  while (start <= csv.size()) {
    const size_t comma = csv.find(',', start);
    const size_t stop = comma == std::string_view::npos ? csv.size() : comma;
    out.push_back(NormKind::parse(csv.substr(start, stop - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double schatten_power_from_singular_values(const RVector& sigma, double p) {
  if (sigma.size() == 0) return 0.0;
  const double floor = kSingularValueFloor * sigma(0);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > floor) sum += std::pow(sigma(i), p);
  }
  return sum;
}

double norm_from_singular_values(const RVector& sigma, const NormKind& kind) {
  if (sigma.size() == 0) return 0.0;
  switch (kind.family()) {
    case NormKind::Family::kOperator:
      return sigma(0);
    case NormKind::Family::kSchatten: {
      const double p = kind.p();
      if (p == 1.0) return schatten_power_from_singular_values(sigma, 1.0);
      // Scale by sigma_1 before the powers to stay clear of overflow.
      const double top = sigma(0);
      if (top == 0.0) return 0.0;
      const double floor = kSingularValueFloor * top;
      double sum = 0.0;
      for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > floor) sum += std::pow(sigma(i) / top, p);
      }
      return top * std::pow(sum, 1.0 / p);
    }
    case NormKind::Family::kKyFan: {
      const Eigen::Index count = std::min<Eigen::Index>(kind.k(), sigma.size());
      return sigma.head(count).sum();
    }
  }
  return 0.0;
}

double norm(const CMatrix& a, const NormKind& kind) {
  return norm_from_singular_values(singular_values(a), kind);
}

double schatten_power(const CMatrix& a, double p) {
  return schatten_power_from_singular_values(singular_values(a), p);
}

double direct_sum_norm(const CMatrix& a, const CMatrix& b, const NormKind& kind) {
  return norm(direct_sum(a, b), kind);
}

}  // namespace cprlab
