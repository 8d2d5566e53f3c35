#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "degenkernel/model.hpp"

namespace degen {

/// Names of all verifiers, in canonical execution order.
const std::vector<std::string>& all_verifier_names();

/// A fully validated run configuration. Model/theta invariants are
/// re-checked at load time with named error messages.
struct RunConfig {
  ModelParams model{3, 3.0, 4.0};
  std::vector<double> theta;          // defaults to {N, N+1, N+2}
  double r_max = 20.0;
  int m = 1600;
  double grading = 1.5;
  int l_max = 32;
  std::vector<double> t_small;        // defaults to 5 log-spaced in [1e-2, 1]
  std::vector<double> t_large;        // defaults to 8 log-spaced in [0.5, 20]
  std::uint64_t seed = 12345;
  std::vector<std::string> verify;    // defaults to every verifier
  std::string out_dir = "out";
};

RunConfig default_config();
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

}  // namespace degen
