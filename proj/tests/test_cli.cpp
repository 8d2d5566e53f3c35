#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "degenkernel/report.hpp"
#include "degenkernel/runner.hpp"

using namespace degen;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string cli_path() {
  const char* bin = std::getenv("DEGENKERNEL_BIN");
  return bin && *bin ? bin : "./degenkernel";
}

int run_cli(const std::string& args) {
  const int rc = std::system((cli_path() + " " + args).c_str());
  return WEXITSTATUS(rc);
}

RunConfig small_config(const std::string& out,
                       std::vector<std::string> verify) {
  nlohmann::json doc = {
      {"model", {{"N", 3}, {"alpha", 3.0}, {"beta", 4.0}}},
      {"grid", {{"r_max", 20.0}, {"m", 240}, {"grading", 1.5}}},
      {"verify", verify},
      {"out_dir", out},
  };
  return config_from_json(doc);
}

}  // namespace

TEST_CASE("default config fills theta, time grids, and verifier list") {
  const RunConfig cfg = default_config();
  CHECK(cfg.theta == std::vector<double>{3.0, 4.0, 5.0});
  CHECK(cfg.t_small.size() == 5);
  CHECK(cfg.t_small.front() == doctest::Approx(1e-2));
  CHECK(cfg.t_small.back() == doctest::Approx(1.0));
  CHECK(cfg.t_large.size() == 8);
  CHECK(cfg.verify == all_verifier_names());
  CHECK(cfg.seed == 12345);
  CHECK(cfg.m == 1600);
}

TEST_CASE("config rejects unknown keys and invariant violations by name") {
  nlohmann::json good = {{"model", {{"N", 3}, {"alpha", 3.0}, {"beta", 4.0}}}};
  CHECK_NOTHROW(config_from_json(good));

  nlohmann::json unknown = good;
  unknown["modle"] = 1;
  CHECK_THROWS_WITH_AS(config_from_json(unknown),
                       doctest::Contains("unknown key"), std::invalid_argument);

  nlohmann::json bad_beta = {{"model", {{"N", 3}, {"alpha", 3.0}, {"beta", 0.5}}}};
  CHECK_THROWS_WITH_AS(config_from_json(bad_beta),
                       doctest::Contains("beta > alpha - 2"),
                       std::invalid_argument);

  nlohmann::json bad_theta = good;
  bad_theta["theta"] = {2.0};
  CHECK_THROWS_WITH_AS(config_from_json(bad_theta),
                       doctest::Contains("theta below N"),
                       std::invalid_argument);

  nlohmann::json bad_grid = good;
  bad_grid["grid"] = {{"m", 8}};
  CHECK_THROWS(config_from_json(bad_grid));

  nlohmann::json bad_verifier = good;
  bad_verifier["verify"] = {"no_such_check"};
  CHECK_THROWS(config_from_json(bad_verifier));
}

TEST_CASE("config round-trips through JSON") {
  const RunConfig cfg = default_config();
  const RunConfig back = config_from_json(config_to_json(cfg));
  CHECK(config_to_json(back) == config_to_json(cfg));
}

TEST_CASE("golden CSV headers") {
  CHECK(std::string(kKernelCsvHeader) == "t,r_x,r_y,cos_gamma,k_mu,k,tail_bound");
  CHECK(std::string(kSpectrumCsvHeader) == "ell,index,lambda");
  CHECK(std::string(kConstantsCsvHeader) == "t,C_star");
}

TEST_CASE("format_double round-trips and is locale-free") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
    CHECK(s.find(',') == std::string::npos);
  }
}

TEST_CASE("run(): byte-identical reports on rerun and exit-status contract") {
  const fs::path base = fs::temp_directory_path() / "degenkernel_cli_test";
  fs::remove_all(base);

  RunConfig cfg = small_config((base / "a").string(),
                               {"lyapunov", "semigroup_lyapunov"});
  const RunOutcome first = run(cfg);
  CHECK(first.exit_code == 0);
  CHECK(fs::exists(base / "a" / "report_lyapunov.json"));
  CHECK(fs::exists(base / "a" / "report_semigroup_lyapunov.json"));
  CHECK(fs::exists(base / "a" / "run_summary.json"));

  cfg.out_dir = (base / "b").string();
  run(cfg);
  for (const char* name :
       {"report_lyapunov.json", "report_semigroup_lyapunov.json"}) {
    CHECK(slurp(base / "a" / name) == slurp(base / "b" / name));
  }

  // Unresolved (exit 2): every requested time below the resolvable floor.
  RunConfig unres = small_config((base / "u").string(), {"ultracontractivity"});
  unres.t_small = {1e-12};
  const RunOutcome u = run(unres);
  CHECK(u.exit_code == 2);

  fs::remove_all(base);
}

TEST_CASE("DEGENKERNEL_CACHE_DIR overrides the cache location") {
  unsetenv("DEGENKERNEL_CACHE_DIR");
  CHECK(cache_directory("/some/out") == "/some/out/cache");
  setenv("DEGENKERNEL_CACHE_DIR", "/tmp/degenkernel_env_cache", 1);
  CHECK(cache_directory("/some/out") == "/tmp/degenkernel_env_cache");
  unsetenv("DEGENKERNEL_CACHE_DIR");
}

TEST_CASE("eigensolve cache: second run hits, different grid misses") {
  const fs::path base = fs::temp_directory_path() / "degenkernel_cache_test";
  fs::remove_all(base);
  RunConfig cfg = small_config((base / "run").string(), {"semigroup_lyapunov"});

  const RunOutcome cold = run(cfg);
  CHECK(cold.solves >= 1);
  CHECK(cold.cache_hits == 0);
  const RunOutcome warm = run(cfg);
  CHECK(warm.solves == 0);
  CHECK(warm.cache_hits >= 1);
  const std::string log = slurp(base / "run" / "run_log.txt");
  CHECK(log.find("cache hit") != std::string::npos);

  cfg.m = 256;  // different grid: content hash must miss
  const RunOutcome other = run(cfg);
  CHECK(other.solves >= 1);
  fs::remove_all(base);
}

TEST_CASE("CLI binary: subcommands, flags, and exit codes") {
  if (!std::getenv("DEGENKERNEL_BIN")) {
    MESSAGE("DEGENKERNEL_BIN not set; skipping process-level checks");
    return;
  }
  const fs::path base = fs::temp_directory_path() / "degenkernel_proc_test";
  fs::remove_all(base);
  fs::create_directories(base);

  const fs::path cfg_path = base / "cfg.json";
  {
    std::ofstream out(cfg_path);
    out << nlohmann::json({
               {"model", {{"N", 3}, {"alpha", 3.0}, {"beta", 4.0}}},
               {"grid", {{"r_max", 20.0}, {"m", 240}, {"grading", 1.5}}},
               {"verify", {"lyapunov"}},
           })
        << "\n";
  }

  CHECK(run_cli("grid-info --config " + cfg_path.string() + " > /dev/null") == 0);
  CHECK(run_cli("verify lyapunov --config " + cfg_path.string() + " --out " +
                (base / "v").string() + " > /dev/null") == 0);
  CHECK(fs::exists(base / "v" / "report_lyapunov.json"));
  CHECK(run_cli("verify no_such --config " + cfg_path.string() +
                " 2> /dev/null") == 1);
  CHECK(run_cli("kernel --t 0.1 --x 1 --y 2 --config " + cfg_path.string() +
                " --out " + (base / "k").string() + " > /dev/null") == 0);
  const std::string kcsv = slurp(base / "k" / "kernel.csv");
  CHECK(kcsv.rfind(kKernelCsvHeader, 0) == 0);
  CHECK(run_cli("spectrum --ell 0 --config " + cfg_path.string() + " --out " +
                (base / "s").string() + " > /dev/null") == 0);
  const std::string scsv = slurp(base / "s" / "spectrum.csv");
  CHECK(scsv.rfind(kSpectrumCsvHeader, 0) == 0);

  fs::remove_all(base);
}
