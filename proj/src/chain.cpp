#include "cprlab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cprlab/error.hpp"

namespace cprlab {
namespace {

void append_link(ChainReport& report, Relation relation, double tol) {
  const size_t i = report.relations.size();
  const double a = report.values[i];
  const double b = report.values[i + 1];
  const double scale = link_scale(a, b);
  const double margin = relation == Relation::kEqual ? -std::abs(a - b) : a - b;
  report.relations.push_back(relation);
  report.margins.push_back(margin);
  report.link_pass.push_back(std::isfinite(margin) && margin >= -tol * scale);
}

}  // namespace

const char* to_string(Relation relation) {
  return relation == Relation::kEqual ? "=" : ">=";
}

double link_scale(double a, double b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

bool ChainReport::passed() const {
  return std::all_of(link_pass.begin(), link_pass.end(), [](bool b) { return b; });
}

double ChainReport::min_margin() const {
  double out = std::numeric_limits<double>::infinity();
  for (double m : margins) out = std::min(out, m);
  return out;
}

double ChainReport::min_relative_margin() const {
  double out = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < margins.size(); ++i) {
    out = std::min(out, margins[i] / link_scale(values[i], values[i + 1]));
  }
  return out;
}

ChainReport make_chain(std::vector<std::string> labels, std::vector<double> values,
                       double tol) {
  if (labels.size() != values.size() || values.size() < 2) {
    throw LabError(ErrorCode::kInvalidParams, "chain needs >= 2 labelled values");
  }
  ChainReport report;
  report.labels = std::move(labels);
  report.values = std::move(values);
  for (size_t i = 0; i + 1 < report.values.size(); ++i) {
    append_link(report, Relation::kGreaterEqual, tol);
  }
  return report;
}

ChainReport make_relation(std::string lhs_label, double lhs, std::string rhs_label,
                          double rhs, Relation relation, double tol) {
  ChainReport report;
  report.labels = {std::move(lhs_label), std::move(rhs_label)};
  report.values = {lhs, rhs};
  append_link(report, relation, tol);
  return report;
}

}  // namespace cprlab
