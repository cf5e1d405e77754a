#include "cprlab/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "cprlab/classes.hpp"
#include "cprlab/cpr.hpp"
#include "cprlab/heinz.hpp"
#include "cprlab/norms.hpp"
#include "cprlab/random.hpp"

namespace cprlab {
namespace {

using Json = nlohmann::ordered_json;

struct SuiteName {
  Suite suite;
  std::string_view name;
};

constexpr SuiteName kSuiteNames[] = {
    {Suite::kHeinz, "heinz"},
    {Suite::kAgm, "agm"},
    {Suite::kCpr, "cpr"},
    {Suite::kZhan, "zhan"},
    {Suite::kCor23, "cor23"},
    {Suite::kCor24, "cor24"},
    {Suite::kT2, "t2"},
    {Suite::kFinalCor, "finalcor"},
    {Suite::kCharacterizations, "characterizations"},
    {Suite::kDk, "dk"},
    {Suite::kConjecture, "conjecture"},
};

[[noreturn]] void invalid(const std::string& message) {
  throw LabError(ErrorCode::kConfigInvalid, message);
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(Clock::now()) {}
  double seconds() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  bool enabled_;
  Clock::time_point start_;
};

Json chain_record(Suite suite, std::uint64_t instance, int dim, Json params,
                  const std::string& norm, const ChainReport& report, double wall) {
  Json r;
  r["suite"] = to_string(suite);
  r["instance"] = instance;
  r["dim"] = dim;
  r["params"] = std::move(params);
  r["norm"] = norm;
  r["labels"] = report.labels;
  r["values"] = report.values;
  r["margins"] = report.margins;
  r["pass"] = report.passed();
  r["wall_time"] = wall;
  return r;
}

struct SuiteContext {
  const CampaignConfig& config;
  std::vector<NormKind> kinds;
  Rng base;
  Eigen::Index n;
};

using Records = std::vector<Json>;

Records run_heinz(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const PositiveOperator a = random_posdef(ctx.n, c.cond, rng);
  const PositiveOperator b = random_posdef(ctx.n, c.cond, rng);
  const XKind xk = x_kind_for_instance(i);
  const CMatrix x = random_x(ctx.n, xk, rng);
  Records out;
  for (double alpha : c.alpha_values) {
    const Stopwatch watch(!c.no_timing);
    const auto reports = kittaneh_chains(a, b, x, alpha, ctx.kinds, heinz_regime(alpha),
                                         kDefaultQuadratureNodes, c.tol);
    const double wall = watch.seconds();
    for (size_t j = 0; j < ctx.kinds.size(); ++j) {
      out.push_back(chain_record(c.suite, i, c.dim, {{"alpha", alpha}, {"x", to_string(xk)}},
                                 c.norms[j], reports[j], wall));
    }
  }
  return out;
}

Records run_agm(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const CMatrix a = ginibre(ctx.n, ctx.n, rng);
  const CMatrix b = ginibre(ctx.n, ctx.n, rng);
  const XKind xk = x_kind_for_instance(i);
  const CMatrix x = random_x(ctx.n, xk, rng);
  Records out;
  for (size_t j = 0; j < ctx.kinds.size(); ++j) {
    const Stopwatch watch(!c.no_timing);
    const ChainReport report = agm_check(a, b, x, ctx.kinds[j], c.tol);
    out.push_back(chain_record(c.suite, i, c.dim, {{"x", to_string(xk)}}, c.norms[j], report,
                               watch.seconds()));
  }
  return out;
}

Records run_cpr(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const CMatrix s = random_selfadjoint_invertible(ctx.n, c.cond, rng).matrix;
  const CMatrix t = random_selfadjoint_invertible(ctx.n, c.cond, rng).matrix;
  const CMatrix g = random_invertible(ctx.n, c.cond, rng);
  const XKind xk = x_kind_for_instance(i);
  const CMatrix x = random_x(ctx.n, xk, rng);
  Records out;
  for (size_t j = 0; j < ctx.kinds.size(); ++j) {
    const NormKind& kind = ctx.kinds[j];
    const auto emit = [&](const char* form, auto&& check) {
      const Stopwatch watch(!c.no_timing);
      const ChainReport report = check();
      out.push_back(chain_record(c.suite, i, c.dim, {{"form", form}, {"x", to_string(xk)}},
                                 c.norms[j], report, watch.seconds()));
    };
    emit("cpr", [&] { return cpr_check(s, x, kind, c.tol); });
    emit("two_sided", [&] { return cpr_two_sided_check(s, t, x, kind, c.tol); });
    emit("star", [&] { return cpr_star_check(g, x, kind, c.tol); });
  }
  return out;
}

Records run_zhan(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const PositiveOperator a = random_posdef(ctx.n, c.cond, rng);
  const PositiveOperator b = random_posdef(ctx.n, c.cond, rng);
  const XKind xk = x_kind_for_instance(i);
  const CMatrix x = random_x(ctx.n, xk, rng);
  Records out;
  for (double t : c.t_values) {
    for (double r : c.r_values) {
      const Stopwatch watch(!c.no_timing);
      const auto reports = zhan_chains(a, b, x, ZhanParams{t, r}, ctx.kinds, std::nullopt,
                                       kDefaultQuadratureNodes, c.tol);
      const double wall = watch.seconds();
      for (size_t j = 0; j < ctx.kinds.size(); ++j) {
        out.push_back(chain_record(c.suite, i, c.dim,
                                   {{"t", t}, {"r", r}, {"x", to_string(xk)}}, c.norms[j],
                                   reports[j], wall));
      }
    }
  }
  return out;
}

Records run_cor23(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const CMatrix a = ginibre(ctx.n, ctx.n, rng);
  const CMatrix b = ginibre(ctx.n, ctx.n, rng);
  const XKind xk = x_kind_for_instance(i);
  const CMatrix x = random_x(ctx.n, xk, rng);
  Records out;
  for (double t : c.t_values) {
    for (size_t j = 0; j < ctx.kinds.size(); ++j) {
      const Stopwatch watch(!c.no_timing);
      const ChainReport report = cor23_check(a, b, x, t, ctx.kinds[j], c.tol);
      out.push_back(chain_record(c.suite, i, c.dim, {{"t", t}, {"x", to_string(xk)}},
                                 c.norms[j], report, watch.seconds()));
    }
  }
  return out;
}

Records run_cor24(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const PositiveOperator p = random_posdef(ctx.n, c.cond, rng);
  const PositiveOperator q = random_posdef(ctx.n, c.cond, rng);
  const XKind xk = x_kind_for_instance(i);
  const CMatrix x = random_x(ctx.n, xk, rng);
  Records out;
  for (double t : c.t_values) {
    for (size_t j = 0; j < ctx.kinds.size(); ++j) {
      const Stopwatch watch(!c.no_timing);
      const ChainReport report = cor24_check(p, q, x, t, ctx.kinds[j], c.tol);
      out.push_back(chain_record(c.suite, i, c.dim, {{"t", t}, {"x", to_string(xk)}},
                                 c.norms[j], report, watch.seconds()));
    }
  }
  return out;
}

Records run_t2(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const CMatrix s = random_invertible(ctx.n, c.cond, rng);
  const XKind xk = x_kind_for_instance(i);
  const CMatrix x = random_x(ctx.n, xk, rng);
  const CMatrix y = ginibre(ctx.n, ctx.n, rng);
  Records out;
  for (size_t j = 0; j < ctx.kinds.size(); ++j) {
    for (const char* form : {"mos1", "mos2"}) {
      const Stopwatch watch(!c.no_timing);
      const ChainReport report = form[3] == '1' ? mos1_check(s, x, y, ctx.kinds[j], c.tol)
                                                : mos2_check(s, x, y, ctx.kinds[j], c.tol);
      out.push_back(chain_record(c.suite, i, c.dim, {{"form", form}, {"x", to_string(xk)}},
                                 c.norms[j], report, watch.seconds()));
    }
  }
  return out;
}

Records run_finalcor(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const CMatrix s = random_invertible(ctx.n, c.cond, rng);
  const XKind xk = x_kind_for_instance(i);
  const CMatrix x = random_x(ctx.n, xk, rng);
  Records out;
  for (double p : c.p_values) {
    const Stopwatch watch(!c.no_timing);
    const FinalCorollaryReport report = final_cor_check(s, x, p, c.tol);
    const double wall = watch.seconds();
    out.push_back(chain_record(c.suite, i, c.dim,
                               {{"p", p}, {"form", "operator"}, {"x", to_string(xk)}}, "op",
                               report.operator_form, wall));
    out.push_back(chain_record(c.suite, i, c.dim,
                               {{"p", p}, {"form", "schatten"}, {"x", to_string(xk)}},
                               NormKind::schatten(p).to_string(), report.schatten_form, wall));
  }
  return out;
}

Records run_characterizations(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const XKind xk = x_kind_for_instance(i);
  Records out;
  for (CharacterizationForm form : all_characterization_forms()) {
    const OperatorClass cls = characterized_class(form);
    const CMatrix s = random_class_member(cls, ctx.n, c.cond, rng);
    const CMatrix x = random_x(ctx.n, xk, rng);
    const Stopwatch watch(!c.no_timing);
    const ChainReport report = characterization_check(s, x, form);
    out.push_back(chain_record(
        c.suite, i, c.dim,
        {{"form", to_string(form)}, {"class", to_string(cls)}, {"x", to_string(xk)}}, "op",
        report, watch.seconds()));
  }
  return out;
}

Json dk_record(std::uint64_t i, int dim, const DkProbeResult& probe,
               double wall) {
  const DkVerdict verdict = dk_verdict(probe);
  const double target = probe.k + 2.0;
  // A spectrally excluded S must come with a witness below k + 2.
  const bool pass = probe.spectral_ok ? verdict != DkVerdict::kViolated
                                      : probe.best_ratio < target - 1e-9;
  Json r;
  r["suite"] = to_string(Suite::kDk);
  r["instance"] = i;
  r["dim"] = dim;
  r["params"] = {{"k", probe.k}};
  r["norm"] = "op";
  r["labels"] = {"best_ratio", "k+2"};
  r["values"] = {probe.best_ratio, target};
  r["margins"] = {probe.best_ratio - target};
  r["pass"] = pass;
  r["wall_time"] = wall;
  r["eigenvalues"] = std::vector<double>(probe.eigenvalues.data(),
                                         probe.eigenvalues.data() + probe.eigenvalues.size());
  r["spectral_ok"] = probe.spectral_ok;
  r["verdict"] = to_string(verdict);
  r["starts_used"] = probe.starts_used;
  if (verdict == DkVerdict::kViolated) {
    std::vector<std::vector<double>> re, im;
    for (Eigen::Index row = 0; row < probe.witness.rows(); ++row) {
      re.emplace_back();
      im.emplace_back();
      for (Eigen::Index col = 0; col < probe.witness.cols(); ++col) {
        re.back().push_back(probe.witness(row, col).real());
        im.back().push_back(probe.witness(row, col).imag());
      }
    }
    r["witness"] = {{"re", re}, {"im", im}};
  }
  return r;
}

Records run_dk(const SuiteContext& ctx, std::uint64_t i) {
  Rng rng = ctx.base.substream(i);
  const auto& c = ctx.config;
  const CMatrix s = random_selfadjoint_invertible(ctx.n, c.cond, rng).matrix;
  Records out;
  for (size_t kj = 0; kj < c.k_values.size(); ++kj) {
    Rng probe_rng = rng.substream(kj);
    const Stopwatch watch(!c.no_timing);
    const DkProbeResult probe =
        dk_ratio_minimize(s, c.k_values[kj], DkProbeOptions{c.starts, c.iters}, probe_rng);
    out.push_back(dk_record(i, c.dim, probe, watch.seconds()));
  }
  return out;
}

using InstanceRunner = Records (*)(const SuiteContext&, std::uint64_t);

InstanceRunner runner_for(Suite suite) {
  switch (suite) {
    case Suite::kHeinz: return run_heinz;
    case Suite::kAgm: return run_agm;
    case Suite::kCpr: return run_cpr;
    case Suite::kZhan: return run_zhan;
    case Suite::kCor23: return run_cor23;
    case Suite::kCor24: return run_cor24;
    case Suite::kT2: return run_t2;
    case Suite::kFinalCor: return run_finalcor;
    case Suite::kCharacterizations: return run_characterizations;
    case Suite::kDk: return run_dk;
    case Suite::kConjecture: break;
  }
  throw LabError(ErrorCode::kConfigInvalid, "suite has no instance runner");
}

// Runs fn(i) for i in [0, count) on `workers` threads; results keep index order.
std::vector<Records> parallel_instances(std::uint64_t count, int workers,
                                        const std::function<Records(std::uint64_t)>& fn) {
  std::vector<Records> results(count);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  const auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

CampaignResult run_conjecture(const CampaignConfig& c,
                              const std::function<void(const ConjectureViolation&)>& sink) {
  SearchConfig search;
  search.n = c.n;
  search.k_values = c.k_values;
  search.count = c.count;
  search.seed = c.seed;
  search.workers = c.workers;
  search.complex_lambdas = c.complex_lambdas;
  const Stopwatch watch(!c.no_timing);
  const auto summaries = conjecture_search(search, sink);
  const double wall = watch.seconds();

  CampaignResult result;
  for (size_t j = 0; j < summaries.size(); ++j) {
    const SearchSummary& s = summaries[j];
    Json r;
    r["suite"] = to_string(Suite::kConjecture);
    r["instance"] = j;
    r["dim"] = s.n;
    r["params"] = {{"k", s.k}};
    r["norm"] = "";
    r["labels"] = {"min_eig"};
    r["values"] = {s.min_min_eig};
    r["margins"] = {s.min_min_eig};
    r["pass"] = s.violations == 0;
    r["wall_time"] = wall;
    r["accepted"] = s.accepted;
    r["draws"] = s.draws;
    r["rejection_rate"] = s.rejection_rate();
    r["violations"] = s.violations;
    r["histogram"] = {{"edges", s.histogram.edges}, {"counts", s.histogram.counts}};
    if (c.complex_lambdas) r["complex_lambdas"] = true;
    result.records.push_back(std::move(r));
  }
  return result;
}

std::string param_tuple(const nlohmann::ordered_json& params) {
  std::string out;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (it.key() == "x") continue;
    if (!out.empty()) out += ';';
    out += it.key();
    out += '=';
    if (it.value().is_number()) {
      out += format_double(it.value().get<double>());
    } else if (it.value().is_string()) {
      out += it.value().get<std::string>();
    } else {
      out += it.value().dump();
    }
  }
  return out;
}

std::vector<double> double_list(const nlohmann::json& value, const std::string& key) {
  std::vector<double> out;
  if (value.is_number()) {
    out.push_back(value.get<double>());
  } else if (value.is_array()) {
    for (const auto& v : value) {
      if (!v.is_number()) invalid("config key '" + key + "' must hold numbers");
      out.push_back(v.get<double>());
    }
  } else {
    invalid("config key '" + key + "' must be a number or an array of numbers");
  }
  return out;
}

template <typename T>
T integer_value(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number_integer()) invalid("config key '" + key + "' must be an integer");
  if (value.is_number_unsigned()) return static_cast<T>(value.get<std::uint64_t>());
  const std::int64_t v = value.get<std::int64_t>();
  if constexpr (std::is_unsigned_v<T>) {
    if (v < 0) invalid("config key '" + key + "' must be nonnegative");
  }
  return static_cast<T>(v);
}

void require_nonempty(const std::vector<double>& values, const char* name) {
  if (values.empty()) invalid(std::string(name) + " list is empty");
  for (double v : values) {
    if (!std::isfinite(v)) invalid(std::string(name) + " values must be finite");
  }
}

}  // namespace

std::string_view to_string(Suite suite) {
  for (const SuiteName& s : kSuiteNames) {
    if (s.suite == suite) return s.name;
  }
  return "unknown";
}

std::optional<Suite> parse_suite(std::string_view text) {
  for (const SuiteName& s : kSuiteNames) {
    if (s.name == text) return s.suite;
  }
  return std::nullopt;
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> out;
    for (const SuiteName& s : kSuiteNames) out.push_back(s.suite);
    return out;
  }();
  return suites;
}

bool is_probe_suite(Suite suite) { return suite == Suite::kDk || suite == Suite::kConjecture; }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void apply_config_json(const nlohmann::json& j, CampaignConfig& config) {
  if (!j.is_object()) invalid("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const nlohmann::json& v = it.value();
    if (key == "suite") {
      if (!v.is_string()) invalid("config key 'suite' must be a string");
      const auto suite = parse_suite(v.get<std::string>());
      if (!suite) invalid("unknown suite '" + v.get<std::string>() + "'");
      config.suite = *suite;
    } else if (key == "dim") {
      config.dim = integer_value<int>(v, key);
    } else if (key == "count") {
      config.count = integer_value<std::uint64_t>(v, key);
    } else if (key == "seed") {
      config.seed = integer_value<std::uint64_t>(v, key);
    } else if (key == "norms") {
      config.norms.clear();
      if (v.is_string()) {
        for (const NormKind& k : parse_norm_list(v.get<std::string>())) {
          config.norms.push_back(k.to_string());
        }
      } else if (v.is_array()) {
        for (const auto& s : v) {
          if (!s.is_string()) invalid("config key 'norms' must hold strings");
          config.norms.push_back(s.get<std::string>());
        }
      } else {
        invalid("config key 'norms' must be a string or an array");
      }
    } else if (key == "tol" || key == "cond") {
      if (!v.is_number()) invalid("config key '" + key + "' must be a number");
      (key == "tol" ? config.tol : config.cond) = v.get<double>();
    } else if (key == "t") {
      config.t_values = double_list(v, key);
    } else if (key == "r") {
      config.r_values = double_list(v, key);
    } else if (key == "k") {
      config.k_values = double_list(v, key);
    } else if (key == "p") {
      config.p_values = double_list(v, key);
    } else if (key == "alpha") {
      config.alpha_values = double_list(v, key);
    } else if (key == "eigs") {
      config.eigs = double_list(v, key);
    } else if (key == "n") {
      config.n = integer_value<int>(v, key);
    } else if (key == "starts") {
      config.starts = integer_value<int>(v, key);
    } else if (key == "iters") {
      config.iters = integer_value<int>(v, key);
    } else if (key == "workers") {
      config.workers = integer_value<int>(v, key);
    } else if (key == "out") {
      if (!v.is_string()) invalid("config key 'out' must be a string");
      config.out = v.get<std::string>();
    } else if (key == "no-timing" || key == "complex-lambdas") {
      if (!v.is_boolean()) invalid("config key '" + key + "' must be a boolean");
      (key == "no-timing" ? config.no_timing : config.complex_lambdas) = v.get<bool>();
    } else {
      invalid("unknown config key '" + key + "'");
    }
  }
}

CampaignConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LabError(ErrorCode::kIoFailure, "cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    invalid("config file " + path + ": " + e.what());
  }
  CampaignConfig config;
  apply_config_json(j, config);
  return config;
}

void validate(const CampaignConfig& c) {
  const Suite s = c.suite;
  if (c.dim < 1 || c.dim > 12) invalid("dim must lie in 1..12");
  if (s == Suite::kDk && c.dim < 2) invalid("dk needs dim >= 2");
  if (c.count < 1) invalid("count must be >= 1");
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) invalid("tol must be positive");
  if (!(c.cond >= 1.0) || !std::isfinite(c.cond)) invalid("cond must be >= 1");
  if (c.workers < 1) invalid("workers must be >= 1");
  if (c.out.empty()) invalid("out path is empty");

  const bool uses_norms = s == Suite::kHeinz || s == Suite::kAgm || s == Suite::kCpr ||
                          s == Suite::kZhan || s == Suite::kCor23 || s == Suite::kCor24 ||
                          s == Suite::kT2;
  if (uses_norms) {
    if (c.norms.empty()) invalid("norms list is empty");
    for (const std::string& name : c.norms) {
      try {
        const NormKind kind = NormKind::parse(name);
        if (kind.family() == NormKind::Family::kKyFan && kind.k() > c.dim) {
          invalid("norm " + name + " exceeds dim");
        }
      } catch (const LabError& e) {
        if (e.code() == ErrorCode::kConfigInvalid) throw;
        invalid("bad norm selector '" + name + "': " + e.what());
      }
    }
  }
  if (s == Suite::kHeinz) {
    require_nonempty(c.alpha_values, "alpha");
    for (double a : c.alpha_values) {
      if (a < 0.0 || a > 1.0) invalid("alpha must lie in [0, 1]");
    }
  }
  if (s == Suite::kZhan || s == Suite::kCor23 || s == Suite::kCor24) {
    require_nonempty(c.t_values, "t");
    for (double t : c.t_values) {
      if (t > 2.0) invalid("t <= 2 required, got " + format_double(t));
    }
  }
  if (s == Suite::kZhan) {
    require_nonempty(c.r_values, "r");
    for (double r : c.r_values) {
      if (r < 0.5 || r > 1.5) invalid("r must lie in [0.5, 1.5], got " + format_double(r));
    }
  }
  if (s == Suite::kFinalCor) {
    require_nonempty(c.p_values, "p");
    for (double p : c.p_values) {
      if (p < 1.0) invalid("p >= 1 required, got " + format_double(p));
    }
  }
  if (s == Suite::kDk || s == Suite::kConjecture) {
    require_nonempty(c.k_values, "k");
    for (double k : c.k_values) {
      if (k < 0.0 || k > 2.0) invalid("k must lie in [0, 2], got " + format_double(k));
    }
  }
  if (s == Suite::kDk) {
    if (c.starts < 1) invalid("starts must be >= 1");
    if (c.iters < 0) invalid("iters must be >= 0");
    for (double e : c.eigs) {
      if (e == 0.0 || !std::isfinite(e)) invalid("eigs must be finite and nonzero");
    }
  }
  if (s == Suite::kConjecture && (c.n < 1 || c.n > 12)) invalid("n must lie in 1..12");
}

CampaignResult run_suite(const CampaignConfig& config,
                         const std::function<void(const ConjectureViolation&)>& on_violation) {
  validate(config);
  CampaignResult result;
  if (config.suite == Suite::kConjecture) {
    result = run_conjecture(config, on_violation);
  } else {
    SuiteContext ctx{config, {}, Rng(config.seed, static_cast<std::uint64_t>(config.suite)),
                     config.dim};
    for (const std::string& name : config.norms) ctx.kinds.push_back(NormKind::parse(name));
    const InstanceRunner runner = runner_for(config.suite);
    auto per_instance = parallel_instances(config.count, config.workers,
                                           [&](std::uint64_t i) { return runner(ctx, i); });
    for (Records& records : per_instance) {
      for (Json& r : records) result.records.push_back(std::move(r));
    }
  }
  result.summary = summarize(result.records);
  for (const SummaryRow& row : result.summary) result.failures += row.fail;
  result.exit_status = (is_probe_suite(config.suite) || result.failures == 0) ? 0 : 1;
  return result;
}

CampaignResult run_dk_probe(const CampaignConfig& config) {
  CampaignConfig c = config;
  c.suite = Suite::kDk;
  if (c.eigs.empty()) invalid("dk-probe needs --eigs");
  c.dim = static_cast<int>(c.eigs.size());
  validate(c);
  // Sorted so the witness coordinates line up with the recorded eigenvalues.
  std::sort(c.eigs.begin(), c.eigs.end());
  const RVector eigs = Eigen::Map<const RVector>(c.eigs.data(), c.dim);
  const CMatrix s = diag(eigs);
  const Rng base(c.seed, static_cast<std::uint64_t>(Suite::kDk));
  CampaignResult result;
  for (size_t kj = 0; kj < c.k_values.size(); ++kj) {
    Rng rng = base.substream(kj);
    const Stopwatch watch(!c.no_timing);
    const DkProbeResult probe =
        dk_ratio_minimize(s, c.k_values[kj], DkProbeOptions{c.starts, c.iters}, rng);
    result.records.push_back(dk_record(kj, c.dim, probe, watch.seconds()));
  }
  result.summary = summarize(result.records);
  for (const SummaryRow& row : result.summary) result.failures += row.fail;
  return result;
}

int run_campaign(const CampaignConfig& config) {
  validate(config);
  std::function<void(const ConjectureViolation&)> sink;
  std::ofstream violations;
  if (config.suite == Suite::kConjecture) {
    const std::string path = config.out + ".violations.jsonl";
    violations.open(path, std::ios::trunc);
    if (!violations) throw LabError(ErrorCode::kIoFailure, "cannot write " + path);
    sink = [&violations, &path](const ConjectureViolation& v) {
      violations << to_json_line(v) << '\n';
      violations.flush();
      if (!violations) throw LabError(ErrorCode::kIoFailure, "write failed: " + path);
    };
  }
  const CampaignResult result = run_suite(config, sink);
  write_jsonl(config.out, result.records);
  write_text(config.out + ".summary.csv", summary_csv(result.summary));
  return result.exit_status;
}

std::vector<SummaryRow> summarize(const std::vector<nlohmann::ordered_json>& records) {
  std::vector<SummaryRow> rows;
  std::map<std::string, size_t> index;
  for (const auto& r : records) {
    const std::string suite = r.at("suite").get<std::string>();
    const std::string norm = r.at("norm").get<std::string>();
    const std::string params = param_tuple(r.at("params"));
    const std::string key = suite + '\x1f' + norm + '\x1f' + params;
    auto [it, inserted] = index.try_emplace(key, rows.size());
    if (inserted) {
      SummaryRow row;
      row.suite = suite;
      row.norm = norm;
      row.params = params;
      row.min_margin = std::numeric_limits<double>::infinity();
      rows.push_back(row);
    }
    SummaryRow& row = rows[it->second];
    for (const auto& m : r.at("margins")) {
      // Non-finite margins serialize as null; count them as the worst case.
      const double margin =
          m.is_number() ? m.get<double>() : -std::numeric_limits<double>::infinity();
      row.min_margin = std::min(row.min_margin, margin);
    }
    if (suite == "conjecture") {
      const auto accepted = r.at("accepted").get<std::uint64_t>();
      const auto violations = r.at("violations").get<std::uint64_t>();
      row.count += accepted;
      row.fail += violations;
      row.pass += accepted - violations;
      const double min_eig = r.at("values").at(0).get<double>();
      row.min_eig = row.min_eig ? std::min(*row.min_eig, min_eig) : min_eig;
    } else {
      ++row.count;
      if (r.at("pass").get<bool>()) {
        ++row.pass;
      } else {
        ++row.fail;
      }
    }
  }
  return rows;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "suite,norm,param-tuple,count,pass,fail,min_margin,min_eig\n";
  for (const SummaryRow& row : rows) {
    out << row.suite << ',' << row.norm << ',' << row.params << ',' << row.count << ','
        << row.pass << ',' << row.fail << ',' << format_double(row.min_margin) << ',';
    if (row.min_eig) out << format_double(*row.min_eig);
    out << '\n';
  }
  return out.str();
}

std::vector<nlohmann::ordered_json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LabError(ErrorCode::kIoFailure, "cannot open " + path);
  std::vector<nlohmann::ordered_json> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::ordered_json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw LabError(ErrorCode::kIoFailure,
                     path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_jsonl(const std::string& path, const std::vector<nlohmann::ordered_json>& records) {
  std::string text;
  for (const auto& r : records) {
    text += r.dump();
    text += '\n';
  }
  write_text(path, text);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LabError(ErrorCode::kIoFailure, "cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw LabError(ErrorCode::kIoFailure, "write failed: " + path);
}

}  // namespace cprlab
