#pragma once

#include <string>
#include <vector>

#include "degenkernel/config.hpp"
#include "degenkernel/verify.hpp"

namespace degen {

/// Exit-status contract: 0 if every selected verifier passes, 1 if any
/// fails, 2 if any is unresolved (failures take precedence).
struct RunOutcome {
  int exit_code = 0;
  std::vector<BoundReport> reports;
  int cache_hits = 0;
  int solves = 0;
};

/// Full pipeline: grid -> mode assembly -> eigensolve (content-hash cached)
/// -> selected verifiers. Writes one JSON report per verifier plus spectrum
/// and constants CSVs into cfg.out_dir. With refine, re-runs at doubled M
/// into out_dir/refine and writes refinement_deltas.json.
RunOutcome run(const RunConfig& cfg, bool refine = false);

/// Cache directory: $DEGENKERNEL_CACHE_DIR if set, else <out_dir>/cache.
std::string cache_directory(const std::string& out_dir);

int exit_code_for(const std::vector<BoundReport>& reports);

}  // namespace degen
