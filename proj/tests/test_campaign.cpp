#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cprlab/campaign.hpp"

using namespace cprlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cprlab_tests";
  fs::create_directories(dir);
  return dir / name;
}

CampaignConfig small(Suite suite) {
  CampaignConfig c;
  c.suite = suite;
  c.dim = 3;
  c.count = 6;
  c.seed = 1;
  c.no_timing = true;
  c.starts = 6;
  c.iters = 40;
  c.n = 3;
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CPRLAB_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("suite names") {
  for (Suite s : all_suites()) CHECK(parse_suite(to_string(s)) == s);
  CHECK(all_suites().size() == 11);
  CHECK_FALSE(parse_suite("refined").has_value());
  CHECK(is_probe_suite(Suite::kDk));
  CHECK(is_probe_suite(Suite::kConjecture));
  CHECK_FALSE(is_probe_suite(Suite::kZhan));
}

TEST_CASE("validation") {
  CampaignConfig c = small(Suite::kZhan);
  c.t_values = {3.0};
  try {
    validate(c);
    FAIL("expected ConfigInvalid");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::kConfigInvalid);
  }
  const auto rejects = [](CampaignConfig cfg) {
    CHECK_THROWS_AS(validate(cfg), LabError);
  };
  c = small(Suite::kZhan);
  c.r_values = {1.6};
  rejects(c);
  c = small(Suite::kHeinz);
  c.dim = 13;
  rejects(c);
  c = small(Suite::kHeinz);
  c.norms = {"schatten:0.5"};
  rejects(c);
  c = small(Suite::kHeinz);
  c.norms = {"kyfan:4"};
  rejects(c);
  c = small(Suite::kHeinz);
  c.alpha_values = {};
  rejects(c);
  c = small(Suite::kConjecture);
  c.k_values = {2.5};
  rejects(c);
  c = small(Suite::kDk);
  c.dim = 1;
  rejects(c);
  c = small(Suite::kFinalCor);
  c.p_values = {0.5};
  rejects(c);
  c = small(Suite::kCpr);
  c.count = 0;
  rejects(c);
  CHECK_NOTHROW(validate(small(Suite::kCpr)));
}

TEST_CASE("config json") {
  CampaignConfig c;
  apply_config_json(nlohmann::json::parse(R"({"suite":"cpr","dim":4,"count":100,"seed":42,
      "norms":"op,tr,schatten:3","t":[-1,0.5],"k":1,"no-timing":true})"),
                    c);
  CHECK(c.suite == Suite::kCpr);
  CHECK(c.dim == 4);
  CHECK(c.count == 100);
  CHECK(c.seed == 42);
  CHECK(c.norms == std::vector<std::string>{"op", "tr", "schatten:3"});
  CHECK(c.t_values == std::vector<double>{-1.0, 0.5});
  CHECK(c.k_values == std::vector<double>{1.0});
  CHECK(c.no_timing);
  CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"bogus":1})"), c), LabError);
  CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"dim":"four"})"), c), LabError);
  CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"suite":"nope"})"), c), LabError);
  CHECK_THROWS_AS(apply_config_json(nlohmann::json::parse(R"({"seed":-1})"), c), LabError);
}

TEST_CASE("every theorem suite passes and emits well-formed records") {
  for (Suite s : all_suites()) {
    CampaignConfig c = small(s);
    const CampaignResult r = run_suite(c);
    CAPTURE(to_string(s));
    REQUIRE_FALSE(r.records.empty());
    if (!is_probe_suite(s)) {
      CHECK(r.failures == 0);
      CHECK(r.exit_status == 0);
    } else {
      CHECK(r.exit_status == 0);
    }
    std::uint64_t last = 0;
    for (const auto& rec : r.records) {
      for (const char* key : {"suite", "instance", "dim", "params", "norm", "labels", "values",
                              "margins", "pass", "wall_time"}) {
        CHECK(rec.contains(key));
      }
      CHECK(rec["suite"] == to_string(s));
      CHECK(rec["wall_time"] == 0.0);
      CHECK(rec["values"].size() == rec["labels"].size());
      const auto inst = rec["instance"].get<std::uint64_t>();
      CHECK(inst >= last);
      last = inst;
    }
  }
}

TEST_CASE("runs are byte-identical and independent of worker count") {
  for (Suite s : all_suites()) {
    CampaignConfig c = small(s);
    c.out = scratch(std::string(to_string(s)) + "_w1.jsonl").string();
    run_campaign(c);
    const std::string first = slurp(c.out);
    run_campaign(c);
    CHECK(slurp(c.out) == first);
    c.workers = 3;
    c.out = scratch(std::string(to_string(s)) + "_w3.jsonl").string();
    run_campaign(c);
    CAPTURE(to_string(s));
    CHECK(slurp(c.out) == first);
  }
}

TEST_CASE("summary csv and report") {
  CampaignConfig c = small(Suite::kCpr);
  c.norms = {"op", "tr"};
  c.out = scratch("cpr_summary.jsonl").string();
  CHECK(run_campaign(c) == 0);
  const std::string csv = slurp(c.out + ".summary.csv");
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "suite,norm,param-tuple,count,pass,fail,min_margin,min_eig");
  std::getline(lines, row);
  CHECK(row.rfind("cpr,op,form=cpr,6,6,0,", 0) == 0);
  const auto rows = summarize(read_jsonl(c.out));
  CHECK(rows.size() == 6);
  CHECK(summary_csv(rows) == csv);
}

TEST_CASE("conjecture campaign writes violations before the summary") {
  CampaignConfig c = small(Suite::kConjecture);
  c.n = 2;
  c.count = 2000;
  c.out = scratch("conj2.jsonl").string();
  CHECK(run_campaign(c) == 0);
  CHECK(fs::exists(c.out + ".violations.jsonl"));
  CHECK(fs::file_size(c.out + ".violations.jsonl") == 0);
  const auto rows = summarize(read_jsonl(c.out));
  REQUIRE(rows.size() == 4);
  for (const SummaryRow& r : rows) {
    CHECK(r.count == 2000);
    CHECK(r.fail == 0);
    CHECK(r.min_eig.has_value());
  }
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e22, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("command line") {
  const std::string out = scratch("cli.jsonl").string();
  CHECK(run_cli("verify --suite cpr --dim 4 --count 5 --seed 42 --no-timing --out " + out) == 0);
  CHECK(fs::exists(out + ".summary.csv"));
  CHECK(run_cli("verify --dim 4 --out " + out) != 0);
  CHECK(run_cli("verify --suite cpr --bogus 1 --out " + out) != 0);
  CHECK(run_cli("verify --suite zhan --t 3 --out " + out) != 0);
  CHECK(run_cli("verify --suite heinz --norms op,tr,schatten:3 --count 3 --out " + out) == 0);
  CHECK(run_cli("verify --suite cor23 --t -1,0.5 --count 3 --out " + out) == 0);
  CHECK(run_cli("report " + out) == 0);
  CHECK(run_cli("dk-probe --eigs 1,2,-3 --k 0.5 --starts 8 --iters 50 --out " + out) == 0);
  CHECK(run_cli("conjecture --n 2 --count 500 --k 0,2 --out " + out) == 0);

  const fs::path cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"suite":"agm","count":4,"dim":2,"no-timing":true})";
  CHECK(run_cli("verify --config " + cfg.string() + " --dim 3 --out " + out) == 0);
  const auto records = read_jsonl(out);
  REQUIRE(records.size() == 4 * 5);
  CHECK(records[0]["dim"] == 3);
  CHECK(records[0]["suite"] == "agm");
}
