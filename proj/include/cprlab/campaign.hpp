#ifndef CPRLAB_CAMPAIGN_HPP_
#define CPRLAB_CAMPAIGN_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cprlab/conjecture.hpp"

namespace cprlab {

enum class Suite {
  kHeinz,
  kAgm,
  kCpr,
  kZhan,
  kCor23,
  kCor24,
  kT2,
  kFinalCor,
  kCharacterizations,
  kDk,
  kConjecture,
};

std::string_view to_string(Suite suite);
std::optional<Suite> parse_suite(std::string_view text);
const std::vector<Suite>& all_suites();

// Probe suites report findings; their exit status is always 0.
bool is_probe_suite(Suite suite);

struct CampaignConfig {
  Suite suite = Suite::kHeinz;
  int dim = 3;
  std::uint64_t count = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> norms = {"op", "tr", "fro", "kyfan:2", "schatten:3"};
  double tol = 1e-8;
  double cond = 100.0;
  std::vector<double> t_values = {-1.0, 0.0, 0.5, 1.0, 2.0};
  std::vector<double> r_values = {0.5, 0.75, 1.0, 1.25, 1.5};
  std::vector<double> k_values = {0.0, 0.5, 1.0, 2.0};
  std::vector<double> p_values = {1.0, 2.0, 3.0};
  std::vector<double> alpha_values = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  int n = 3;
  std::vector<double> eigs;
  int starts = 64;
  int iters = 500;
  std::string out = "campaign.jsonl";
  int workers = 1;
  bool no_timing = false;
  bool complex_lambdas = false;
};

// Keys mirror the long flag names: "suite", "dim", "count", "seed",
// "norms" (string or array), "tol", "cond", "t", "r", "k", "p", "alpha",
// "n", "eigs", "starts", "iters", "out", "workers", "no-timing",
// "complex-lambdas". Unknown keys and wrong types throw ConfigInvalid.
void apply_config_json(const nlohmann::json& j, CampaignConfig& config);
CampaignConfig load_config_file(const std::string& path);

// Throws ConfigInvalid.
void validate(const CampaignConfig& config);

struct SummaryRow {
  std::string suite;
  std::string norm;
  std::string params;
  std::uint64_t count = 0;
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  double min_margin = 0.0;
  std::optional<double> min_eig;
};

struct CampaignResult {
  // One JSON object per check, ordered by instance index.
  std::vector<nlohmann::ordered_json> records;
  std::vector<SummaryRow> summary;
  std::uint64_t failures = 0;
  int exit_status = 0;
};

// Runs the suite in memory. Conjecture violations go to `on_violation` as
// soon as each block completes.
CampaignResult run_suite(
    const CampaignConfig& config,
    const std::function<void(const ConjectureViolation&)>& on_violation = {});

// Writes `out`, `<out>.summary.csv` and, for conjecture,
// `<out>.violations.jsonl` (created before the search starts). Returns the
// exit status. Throws IoFailure, ConfigInvalid.
int run_campaign(const CampaignConfig& config);

// Explicit-eigenvalue probe: S = diag(eigs), one record per k.
CampaignResult run_dk_probe(const CampaignConfig& config);

// Groups records by (suite, norm, params) in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<nlohmann::ordered_json>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);

std::vector<nlohmann::ordered_json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<nlohmann::ordered_json>& records);
void write_text(const std::string& path, const std::string& text);

// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace cprlab

#endif  // CPRLAB_CAMPAIGN_HPP_
