#include "cprlab/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "cprlab/classes.hpp"
#include "cprlab/random.hpp"

namespace cprlab {
namespace {

constexpr double kConstraintSlack = 1e-12;
constexpr double kDenominatorFloor = 1e-12;
constexpr std::uint64_t kBlockSize = 2048;

void require_k(double k) {
  if (!(k >= 0.0 && k <= 2.0)) {
    throw LabError(ErrorCode::kInvalidK, "k must lie in [0, 2], got " + std::to_string(k));
  }
}

template <typename Vector>
void require_nonzero(const Vector& lambdas) {
  if (lambdas.size() == 0) throw LabError(ErrorCode::kInvalidParams, "empty lambda vector");
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    if (std::abs(lambdas(i)) == 0.0 || !std::isfinite(std::abs(lambdas(i)))) {
      throw LabError(ErrorCode::kZeroLambda, "lambdas must be finite and nonzero");
    }
  }
}

// Smallest |lambda_i/lambda_j + lambda_j/lambda_i + k| over all pairs.
template <typename Vector>
ConstraintResult pairwise_constraint(const Vector& lambdas, double k) {
  ConstraintResult out;
  out.worst_value = std::numeric_limits<double>::infinity();
  const Eigen::Index n = lambdas.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ratio = lambdas(i) / lambdas(j);
      const double value = std::abs(ratio + 1.0 / ratio + k);
      if (value < out.worst_value) {
        out.worst_value = value;
        out.worst_i = i;
        out.worst_j = j;
      }
    }
  }
  out.ok = out.worst_value >= k + 2.0 - kConstraintSlack;
  return out;
}

struct InstanceOutcome {
  std::uint64_t draws = 0;
  double min_eig = 0.0;
  bool psd = true;
  std::vector<double> lambdas;
};

InstanceOutcome run_instance(const SearchConfig& config, double k, Rng rng) {
  InstanceOutcome out;
  if (config.complex_lambdas) {
    Eigen::VectorXcd lambdas(config.n);
    const double lo = std::log(config.magnitude_lo);
    const double hi = std::log(config.magnitude_hi);
    for (int attempt = 0;; ++attempt) {
      if (attempt >= config.max_rejections) {
        throw LabError(ErrorCode::kSamplerExhausted, "complex constraint region too thin");
      }
      ++out.draws;
      for (int i = 0; i < config.n; ++i) {
        lambdas(i) = std::polar(std::exp(rng.uniform(lo, hi)),
                                rng.uniform(0.0, 2.0 * std::numbers::pi));
      }
      if (pairwise_constraint(lambdas, k).ok) break;
    }
    const PsdResult psd = psd_check(build_conj_matrix_complex(lambdas, k));
    out.min_eig = psd.min_eig;
    out.psd = psd.psd;
    if (!psd.psd) {
      for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
        out.lambdas.push_back(lambdas(i).real());
        out.lambdas.push_back(lambdas(i).imag());
      }
    }
    return out;
  }
  const RVector lambdas = sample_constrained_lambdas(config.n, k, config, rng, &out.draws);
  const PsdResult psd = psd_check(build_conj_matrix(lambdas, k));
  out.min_eig = psd.min_eig;
  out.psd = psd.psd;
  if (!psd.psd) out.lambdas.assign(lambdas.data(), lambdas.data() + lambdas.size());
  return out;
}

void run_block(const SearchConfig& config, double k, const Rng& base,
               std::uint64_t first, std::vector<InstanceOutcome>& outcomes) {
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= outcomes.size() || failed.load()) return;
      try {
        outcomes[i] = run_instance(config, k, base.substream(first + i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  const int workers = std::max(1, config.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ConstraintResult constraint_check(const RVector& lambdas, double k) {
  require_k(k);
  require_nonzero(lambdas);
  return pairwise_constraint(lambdas, k);
}

RMatrix build_conj_matrix(const RVector& lambdas, double k) {
  require_nonzero(lambdas);
  const Eigen::Index n = lambdas.size();
  RMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double li = lambdas(i);
      const double lj = lambdas(j);
      // Each product is formed once so that C is exactly symmetric.
      const double prod = li * lj;
      const double squares = li * li + lj * lj;
      const double denom = squares + k * prod;
      if (std::abs(denom) <= kDenominatorFloor * squares) {
        throw LabError(ErrorCode::kDegenerateDenominator,
                       "denominator vanishes at pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
      }
      c(i, j) = prod / denom;
    }
  }
  return c;
}

CMatrix build_conj_matrix_complex(const Eigen::VectorXcd& lambdas, double k) {
  require_nonzero(lambdas);
  const Eigen::Index n = lambdas.size();
  CMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex cross = lambdas(i) * std::conj(lambdas(j));
      const double squares = std::norm(lambdas(i)) + std::norm(lambdas(j));
      const Complex denom = squares + k * cross;
      if (std::abs(denom) <= kDenominatorFloor * squares) {
        throw LabError(ErrorCode::kDegenerateDenominator, "complex denominator vanishes");
      }
      c(i, j) = cross / denom;
    }
  }
  return c;
}

ConjectureInstance evaluate_instance(const RVector& lambdas, double k) {
  ConjectureInstance out;
  out.k = k;
  out.lambdas = lambdas;
  out.constraint_ok = constraint_check(lambdas, k).ok;
  out.matrix = build_conj_matrix(lambdas, k);
  const PsdResult psd = psd_check(out.matrix);
  out.min_eig = psd.min_eig;
  out.psd = psd.psd;
  return out;
}

std::string to_json_line(const ConjectureViolation& v) {
  nlohmann::ordered_json j;
  j["k"] = v.k;
  j["lambdas"] = v.lambdas;
  j["min_eig"] = v.min_eig;
  j["seed"] = v.seed;
  j["instance"] = v.instance;
  return j.dump();
}

ConjectureViolation violation_from_json_line(const std::string& line) {
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    ConjectureViolation v;
    v.k = j.at("k").get<double>();
    v.lambdas = j.at("lambdas").get<std::vector<double>>();
    v.min_eig = j.at("min_eig").get<double>();
    v.seed = j.at("seed").get<std::uint64_t>();
    v.instance = j.at("instance").get<std::uint64_t>();
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw LabError(ErrorCode::kIoFailure, std::string("bad violation record: ") + e.what());
  }
}

MinEigHistogram::MinEigHistogram()
    : edges{-1e-10, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 1.0},
      counts(edges.size() + 1, 0) {}

void MinEigHistogram::add(double value) {
  const auto bin = std::upper_bound(edges.begin(), edges.end(), value) - edges.begin();
  ++counts[static_cast<size_t>(bin)];
}

void MinEigHistogram::merge(const MinEigHistogram& other) {
  for (size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

RVector sample_constrained_lambdas(int n, double k, const SearchConfig& config,
                                   Rng& rng, std::uint64_t* draws) {
  require_k(k);
  if (n < 1) throw LabError(ErrorCode::kInvalidParams, "n must be >= 1");
  const double lo = std::log(config.magnitude_lo);
  const double hi = std::log(config.magnitude_hi);
  RVector lambdas(n);
  for (int attempt = 0; attempt < config.max_rejections; ++attempt) {
    if (draws != nullptr) ++*draws;
    for (int i = 0; i < n; ++i) lambdas(i) = rng.sign() * std::exp(rng.uniform(lo, hi));
    if (pairwise_constraint(lambdas, k).ok) return lambdas;
  }
  throw LabError(ErrorCode::kSamplerExhausted,
                 "no constrained draw for n=" + std::to_string(n) + ", k=" +
                     std::to_string(k) + " after " + std::to_string(config.max_rejections) +
                     " attempts");
}

std::vector<SearchSummary> conjecture_search(
    const SearchConfig& config,
    const std::function<void(const ConjectureViolation&)>& on_violation) {
  if (config.n < 1) throw LabError(ErrorCode::kInvalidParams, "n must be >= 1");
  if (config.k_values.empty()) throw LabError(ErrorCode::kInvalidParams, "no k values");
  for (double k : config.k_values) require_k(k);

  std::vector<SearchSummary> summaries;
  for (size_t kj = 0; kj < config.k_values.size(); ++kj) {
    const double k = config.k_values[kj];
    const Rng base(config.seed, kj);
    SearchSummary summary;
    summary.k = k;
    summary.n = config.n;
    summary.min_min_eig = std::numeric_limits<double>::infinity();
    for (std::uint64_t first = 0; first < config.count; first += kBlockSize) {
      const std::uint64_t size = std::min(kBlockSize, config.count - first);
      std::vector<InstanceOutcome> outcomes(size);
      run_block(config, k, base, first, outcomes);
      for (std::uint64_t i = 0; i < size; ++i) {
        const InstanceOutcome& o = outcomes[i];
        summary.draws += o.draws;
        ++summary.accepted;
        summary.min_min_eig = std::min(summary.min_min_eig, o.min_eig);
        summary.histogram.add(o.min_eig);
        if (!o.psd) {
          ++summary.violations;
          if (on_violation) {
            on_violation({k, o.lambdas, o.min_eig, config.seed, first + i});
          }
        }
      }
    }
    summaries.push_back(summary);
  }
  return summaries;
}

std::string_view to_string(ConditionalOutcome outcome) {
  switch (outcome) {
    case ConditionalOutcome::kConsistent: return "consistent";
    case ConditionalOutcome::kImplementationBug: return "implementation_bug";
    case ConditionalOutcome::kInconclusive: return "inconclusive";
    case ConditionalOutcome::kWitnessOutsideClass: return "witness_outside_class";
  }
  return "unknown";
}

ConditionalReport conditional_theorem_check(const RVector& lambdas, double k,
                                            int random_samples, Rng& rng, double tol) {
  if (!constraint_check(lambdas, k).ok) {
    throw LabError(ErrorCode::kInvalidParams, "lambdas violate the pairwise constraint");
  }
  ConditionalReport out;
  const PsdResult psd = psd_check(build_conj_matrix(lambdas, k));
  out.psd = psd.psd;
  out.min_eig = psd.min_eig;

  const Eigen::Index n = lambdas.size();
  const CMatrix s = diag(lambdas);
  const CMatrix s_inv = diag(lambdas.cwiseInverse());
  std::vector<CMatrix> xs;
  xs.push_back(CMatrix::Identity(n, n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1.0;
      xs.push_back(e);
    }
  }
  for (int i = 0; i < random_samples; ++i) xs.push_back(ginibre(n, n, rng));

  out.min_ratio = std::numeric_limits<double>::infinity();
  for (const CMatrix& x : xs) {
    out.min_ratio = std::min(out.min_ratio, phi_ratio(s, s_inv, k, x) / (k + 2.0));
  }
  out.samples = static_cast<int>(xs.size());
  out.inequality_holds = out.min_ratio >= 1.0 - tol;
  if (out.psd) {
    out.outcome = out.inequality_holds ? ConditionalOutcome::kConsistent
                                       : ConditionalOutcome::kImplementationBug;
  } else {
    out.outcome = out.inequality_holds ? ConditionalOutcome::kInconclusive
                                       : ConditionalOutcome::kWitnessOutsideClass;
  }
  return out;
}

}  // namespace cprlab
