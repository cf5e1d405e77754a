#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cprlab/campaign.hpp"
#include "cprlab/error.hpp"
#include "cprlab/norms.hpp"

namespace {

using cprlab::CampaignConfig;
using cprlab::ErrorCode;
using cprlab::LabError;

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;
constexpr int kExitOther = 5;

struct Flags {
  std::string suite, norms, t, r, k, p, alpha, eigs, out, config;
  int dim = 0, n = 0, starts = 0, iters = 0, workers = 0;
  std::uint64_t count = 0, seed = 0;
  double tol = 0.0, cond = 0.0;
  bool no_timing = false;
  bool complex_lambdas = false;
  std::vector<CLI::Option*> options;
};

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    double value = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw LabError(ErrorCode::kUsageError,
                     std::string("--") + flag + ": cannot parse '" + item + "' as a number");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

void add_flags(CLI::App* app, Flags& f) {
  auto add = [&](CLI::Option* o) { f.options.push_back(o); };
  add(app->add_option("--suite", f.suite, "heinz|agm|cpr|zhan|cor23|cor24|t2|finalcor|"
                                          "characterizations|dk|conjecture"));
  add(app->add_option("--dim", f.dim, "matrix dimension (1-12)"));
  add(app->add_option("--count", f.count, "number of instances"));
  add(app->add_option("--seed", f.seed, "64-bit seed"));
  add(app->add_option("--norms", f.norms, "comma list: op,fro,tr,schatten:<p>,kyfan:<k>"));
  add(app->add_option("--tol", f.tol, "relative link tolerance"));
  add(app->add_option("--cond", f.cond, "condition number of sampled operators"));
  add(app->add_option("--t", f.t, "comma list of t values"));
  add(app->add_option("--r", f.r, "comma list of r values"));
  add(app->add_option("--k", f.k, "comma list of k values"));
  add(app->add_option("--p", f.p, "comma list of Schatten exponents"));
  add(app->add_option("--alpha", f.alpha, "comma list of Heinz exponents"));
  add(app->add_option("--n", f.n, "conjecture matrix size"));
  add(app->add_option("--eigs", f.eigs, "comma list of eigenvalues for dk-probe"));
  add(app->add_option("--starts", f.starts, "probe starts"));
  add(app->add_option("--iters", f.iters, "probe iterations per start"));
  add(app->add_option("--out", f.out, "output JSONL path"));
  add(app->add_option("--config", f.config, "JSON config file; flags override it"));
  add(app->add_option("--workers", f.workers, "worker threads"));
  add(app->add_flag("--no-timing", f.no_timing, "write zero wall times"));
  add(app->add_flag("--complex-lambdas", f.complex_lambdas,
                    "experimental complex conjecture candidate"));
}

bool given(const Flags& f, const char* name) {
  for (CLI::Option* o : f.options) {
    if (o->check_lname(name)) return o->count() > 0;
  }
  return false;
}

// Config file first, then every flag that was given on the command line.
// Returns whether a suite was specified anywhere.
bool build_config(const Flags& f, CampaignConfig& c) {
  bool has_suite = false;
  if (given(f, "config")) {
    c = cprlab::load_config_file(f.config);
    std::ifstream in(f.config);
    has_suite = nlohmann::json::parse(in).contains("suite");
  }
  if (given(f, "suite")) {
    const auto suite = cprlab::parse_suite(f.suite);
    if (!suite) throw LabError(ErrorCode::kUsageError, "unknown suite '" + f.suite + "'");
    c.suite = *suite;
    has_suite = true;
  }
  if (given(f, "dim")) c.dim = f.dim;
  if (given(f, "count")) c.count = f.count;
  if (given(f, "seed")) c.seed = f.seed;
  if (given(f, "norms")) {
    c.norms.clear();
    for (const auto& kind : cprlab::parse_norm_list(f.norms)) c.norms.push_back(kind.to_string());
  }
  if (given(f, "tol")) c.tol = f.tol;
  if (given(f, "cond")) c.cond = f.cond;
  if (given(f, "t")) c.t_values = parse_doubles(f.t, "t");
  if (given(f, "r")) c.r_values = parse_doubles(f.r, "r");
  if (given(f, "k")) c.k_values = parse_doubles(f.k, "k");
  if (given(f, "p")) c.p_values = parse_doubles(f.p, "p");
  if (given(f, "alpha")) c.alpha_values = parse_doubles(f.alpha, "alpha");
  if (given(f, "eigs")) c.eigs = parse_doubles(f.eigs, "eigs");
  if (given(f, "n")) c.n = f.n;
  if (given(f, "starts")) c.starts = f.starts;
  if (given(f, "iters")) c.iters = f.iters;
  if (given(f, "workers")) c.workers = f.workers;
  if (given(f, "out")) c.out = f.out;
  if (f.no_timing) c.no_timing = true;
  if (f.complex_lambdas) c.complex_lambdas = true;
  return has_suite;
}

void report_counts(const cprlab::CampaignResult& result, const std::string& out) {
  std::cout << cprlab::summary_csv(result.summary);
  std::cerr << result.records.size() << " records, " << result.failures
            << " failing, written to " << out << '\n';
}

int run_verify(const Flags& f) {
  CampaignConfig c;
  if (!build_config(f, c)) throw LabError(ErrorCode::kUsageError, "verify requires --suite");
  const int status = cprlab::run_campaign(c);
  std::cout << cprlab::summary_csv(cprlab::summarize(cprlab::read_jsonl(c.out)));
  return status;
}

int run_conjecture(const Flags& f) {
  CampaignConfig c;
  c.out = "conjecture.jsonl";
  c.count = 10000;
  build_config(f, c);
  if (c.suite != cprlab::Suite::kConjecture) {
    if (given(f, "suite")) throw LabError(ErrorCode::kUsageError, "conjecture runs suite=conjecture");
    c.suite = cprlab::Suite::kConjecture;
  }
  cprlab::run_campaign(c);
  std::cout << cprlab::summary_csv(cprlab::summarize(cprlab::read_jsonl(c.out)));
  return 0;
}

int run_dk_probe(const Flags& f) {
  CampaignConfig c;
  c.out = "dk.jsonl";
  build_config(f, c);
  if (c.suite != cprlab::Suite::kDk) {
    if (given(f, "suite")) throw LabError(ErrorCode::kUsageError, "dk-probe runs suite=dk");
    c.suite = cprlab::Suite::kDk;
  }
  if (c.eigs.empty()) {
    cprlab::run_campaign(c);
    std::cout << cprlab::summary_csv(cprlab::summarize(cprlab::read_jsonl(c.out)));
    return 0;
  }
  const cprlab::CampaignResult result = cprlab::run_dk_probe(c);
  cprlab::write_jsonl(c.out, result.records);
  cprlab::write_text(c.out + ".summary.csv", cprlab::summary_csv(result.summary));
  for (const auto& r : result.records) std::cout << r.dump() << '\n';
  report_counts(result, c.out);
  return 0;
}

int run_report(const std::string& input, const std::string& out) {
  const auto records = cprlab::read_jsonl(input);
  const auto rows = cprlab::summarize(records);
  const std::string csv = cprlab::summary_csv(rows);
  if (!out.empty()) cprlab::write_text(out, csv);
  std::cout << csv;
  for (const auto& row : rows) {
    const auto suite = cprlab::parse_suite(row.suite);
    if (row.fail > 0 && !(suite && cprlab::is_probe_suite(*suite))) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification campaigns for unitarily invariant norm inequalities"};
  app.require_subcommand(1);

  Flags verify_flags, conjecture_flags, dk_flags;
  CLI::App* verify = app.add_subcommand("verify", "run a theorem suite");
  add_flags(verify, verify_flags);
  CLI::App* conjecture = app.add_subcommand("conjecture", "search for PSD counterexamples");
  add_flags(conjecture, conjecture_flags);
  CLI::App* dk = app.add_subcommand("dk-probe", "probe the D_k infimum");
  add_flags(dk, dk_flags);
  std::string report_in, report_out;
  CLI::App* report = app.add_subcommand("report", "re-summarize an existing JSONL file");
  report->add_option("jsonl", report_in, "campaign JSONL")->required();
  report->add_option("--out", report_out, "write the CSV summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(verify_flags);
    if (conjecture->parsed()) return run_conjecture(conjecture_flags);
    if (dk->parsed()) return run_dk_probe(dk_flags);
    return run_report(report_in, report_out);
  } catch (const LabError& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kUsageError: return kExitUsage;
      case ErrorCode::kConfigInvalid: return kExitConfig;
      case ErrorCode::kIoFailure: return kExitIo;
      default: return kExitOther;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
}
