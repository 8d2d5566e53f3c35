#include "degenkernel/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace degen {

const std::vector<std::string>& all_verifier_names() {
  static const std::vector<std::string> names = {
      "lyapunov",           "semigroup_lyapunov", "nash",
      "weighted_sobolev",   "ultracontractivity", "kernel_constant",
      "longtime",           "groundstate"};
  return names;
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return out;
}

void reject_unknown_keys(const nlohmann::json& obj,
                         const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw std::invalid_argument("config: unknown key \"" + item.key() +
                                  "\" in " + where);
}

void fill_defaults(RunConfig& cfg) {
  if (cfg.theta.empty())
    cfg.theta = {double(cfg.model.dim), double(cfg.model.dim + 1),
                 double(cfg.model.dim + 2)};
  if (cfg.t_small.empty()) cfg.t_small = log_spaced(1e-2, 1.0, 5);
  if (cfg.t_large.empty()) cfg.t_large = log_spaced(0.5, 20.0, 8);
  if (cfg.verify.empty()) cfg.verify = all_verifier_names();
}

void validate(const RunConfig& cfg) {
  // ModelParams has already enforced N >= 3, alpha > 2, beta > alpha-2.
  for (double th : cfg.theta) {
    if (!(th >= cfg.model.dim))
      throw std::invalid_argument("config: theta below N (theta must be >= " +
                                  std::to_string(cfg.model.dim) + ")");
    ThetaWeight check(cfg.model, th);  // named errors on invariant violation
    (void)check;
  }
  if (!(cfg.r_max > 0.0)) throw std::invalid_argument("config: r_max must be > 0");
  if (cfg.m < 16) throw std::invalid_argument("config: grid.m must be >= 16");
  if (!(cfg.grading >= 1.0))
    throw std::invalid_argument("config: grid.grading must be >= 1");
  if (cfg.l_max < 0) throw std::invalid_argument("config: l_max must be >= 0");
  for (double t : cfg.t_small)
    if (!(t > 0.0)) throw std::invalid_argument("config: t_small must be positive");
  for (double t : cfg.t_large)
    if (!(t > 0.0)) throw std::invalid_argument("config: t_large must be positive");
  const auto& known = all_verifier_names();
  for (const std::string& v : cfg.verify)
    if (std::find(known.begin(), known.end(), v) == known.end())
      throw std::invalid_argument("config: unknown verifier \"" + v + "\"");
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  fill_defaults(cfg);
  validate(cfg);
  return cfg;
}

RunConfig config_from_json(const nlohmann::json& doc) {
  reject_unknown_keys(doc,
                      {"model", "theta", "grid", "l_max", "t_small", "t_large",
                       "seed", "verify", "out_dir"},
                      "top level");
  if (!doc.contains("model"))
    throw std::invalid_argument("config: missing required key \"model\"");

  const auto& model = doc.at("model");
  reject_unknown_keys(model, {"N", "alpha", "beta"}, "model");
  const int n = model.at("N").get<int>();
  const double alpha = model.at("alpha").get<double>();
  const double beta = model.at("beta").get<double>();
  if (n < 3) throw std::invalid_argument("config: N must be >= 3 (N > 2)");
  if (!(alpha > 2.0)) throw std::invalid_argument("config: alpha must be > 2");
  if (!(beta > alpha - 2.0))
    throw std::invalid_argument(
        "config: violates the standing assumption beta > alpha - 2");

  RunConfig cfg{ModelParams(n, alpha, beta)};
  if (doc.contains("theta")) cfg.theta = doc.at("theta").get<std::vector<double>>();
  if (doc.contains("grid")) {
    const auto& grid = doc.at("grid");
    reject_unknown_keys(grid, {"r_max", "m", "grading"}, "grid");
    if (grid.contains("r_max")) cfg.r_max = grid.at("r_max").get<double>();
    if (grid.contains("m")) cfg.m = grid.at("m").get<int>();
    if (grid.contains("grading")) cfg.grading = grid.at("grading").get<double>();
  }
  if (doc.contains("l_max")) cfg.l_max = doc.at("l_max").get<int>();
  if (doc.contains("t_small"))
    cfg.t_small = doc.at("t_small").get<std::vector<double>>();
  if (doc.contains("t_large"))
    cfg.t_large = doc.at("t_large").get<std::vector<double>>();
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("verify"))
    cfg.verify = doc.at("verify").get<std::vector<std::string>>();
  if (doc.contains("out_dir")) cfg.out_dir = doc.at("out_dir").get<std::string>();

  fill_defaults(cfg);
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: malformed JSON in " + path + ": " +
                                e.what());
  }
  return config_from_json(doc);
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["model"] = {{"N", cfg.model.dim}, {"alpha", cfg.model.alpha}, {"beta", cfg.model.beta}};
  j["theta"] = cfg.theta;
  j["grid"] = {{"r_max", cfg.r_max}, {"m", cfg.m}, {"grading", cfg.grading}};
  j["l_max"] = cfg.l_max;
  j["t_small"] = cfg.t_small;
  j["t_large"] = cfg.t_large;
  j["seed"] = cfg.seed;
  j["verify"] = cfg.verify;
  j["out_dir"] = cfg.out_dir;
  return j;
}

}  // namespace degen
