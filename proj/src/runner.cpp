#include "degenkernel/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "degenkernel/report.hpp"
#include "degenkernel/samples.hpp"

namespace degen {

namespace fs = std::filesystem;

std::string cache_directory(const std::string& out_dir) {
  if (const char* env = std::getenv("DEGENKERNEL_CACHE_DIR"); env && *env)
    return env;
  return out_dir + "/cache";
}

int exit_code_for(const std::vector<BoundReport>& reports) {
  bool any_fail = false, any_unresolved = false;
  for (const BoundReport& r : reports) {
    any_fail = any_fail || r.verdict == Verdict::fail;
    any_unresolved = any_unresolved || r.verdict == Verdict::unresolved;
  }
  return any_fail ? 1 : (any_unresolved ? 2 : 0);
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return out;
}

std::string theta_tag(double theta) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", theta);
  return buf;
}

void write_verifier_report(const std::string& out_dir, const std::string& name,
                           const std::vector<BoundReport>& reports) {
  Json doc;
  doc["name"] = name;
  doc["verdict"] = to_string(static_cast<Verdict>([&] {
    const int code = exit_code_for(reports);
    return code == 0 ? Verdict::pass : (code == 1 ? Verdict::fail : Verdict::unresolved);
  }()));
  doc["reports"] = Json::array();
  for (const BoundReport& r : reports) doc["reports"].push_back(r.to_json());
  write_json(out_dir + "/report_" + name + ".json", doc);
}

RunOutcome run_once(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  std::ofstream log(cfg.out_dir + "/run_log.txt");

  const RadialGrid grid = build_grid(cfg.r_max, cfg.m, cfg.grading);
  const RadialGrid fine_grid = build_grid(cfg.r_max, 2 * cfg.m, cfg.grading);
  ModeBasisSet bases(cfg.model, grid, cache_directory(cfg.out_dir));

  std::vector<ThetaWeight> thetas;
  for (double th : cfg.theta) thetas.emplace_back(cfg.model, th);

  const auto selected = [&](const std::string& name) {
    return std::find(cfg.verify.begin(), cfg.verify.end(), name) !=
           cfg.verify.end();
  };

  RunOutcome outcome;
  std::map<std::string, std::vector<BoundReport>> grouped;

  // Lyapunov constants feed the semigroup and ultracontractivity checks, so
  // they are computed whenever any of the three is selected.
  std::map<double, BoundReport> lyapunov_reports;
  const bool need_kappa = selected("lyapunov") ||
                          selected("semigroup_lyapunov") ||
                          selected("ultracontractivity");
  if (need_kappa)
    for (const ThetaWeight& tw : thetas)
      lyapunov_reports.emplace(tw.theta,
                               verify_lyapunov(cfg.model, tw, cfg.r_max));
  const auto kappa_of = [&](double theta) {
    const BoundReport& rep = lyapunov_reports.at(theta);
    return rep.constants.at("kappa").get<double>();
  };
  if (selected("lyapunov"))
    for (const ThetaWeight& tw : thetas)
      grouped["lyapunov"].push_back(lyapunov_reports.at(tw.theta));

  const bool need_samples = selected("nash") || selected("weighted_sobolev") ||
                            selected("ultracontractivity");
  std::vector<TestFunction> samples;
  if (need_samples)
    samples = make_test_functions(grid, &bases.basis(0), 200, cfg.seed);

  if (selected("semigroup_lyapunov")) {
    const std::vector<double> t_grid = log_spaced(1e-3, 1.0, 13);
    for (const ThetaWeight& tw : thetas)
      grouped["semigroup_lyapunov"].push_back(
          verify_semigroup_lyapunov(cfg.model, tw, bases.op(0), bases.basis(0),
                                    t_grid, kappa_of(tw.theta)));
  }

  std::map<double, BoundReport> nash_reports;
  const bool need_nash = selected("nash") || selected("ultracontractivity");
  if (need_nash) {
    const ModeOperator fine_op0 = assemble_mode(cfg.model, fine_grid, 0);
    for (const ThetaWeight& tw : thetas)
      nash_reports.emplace(
          tw.theta,
          verify_nash(cfg.model, tw, bases.op(0), fine_op0, samples));
  }
  if (selected("nash"))
    for (const ThetaWeight& tw : thetas)
      grouped["nash"].push_back(nash_reports.at(tw.theta));

  if (selected("weighted_sobolev"))
    for (const ThetaWeight& tw : thetas)
      grouped["weighted_sobolev"].push_back(
          verify_weighted_sobolev(cfg.model, tw, grid, fine_grid, samples));

  if (selected("ultracontractivity"))
    for (const ThetaWeight& tw : thetas) {
      // Cross-bound consistency: reuse exactly the reported constants.
      const double kappa = kappa_of(tw.theta);
      const double rho =
          nash_reports.at(tw.theta).constants.at("rho_sup").get<double>();
      grouped["ultracontractivity"].push_back(
          verify_ultracontractivity(cfg.model, tw, bases.op(0), bases.basis(0),
                                    samples, cfg.t_small, kappa, rho));
    }

  std::vector<PointPair> pairs;
  if (selected("kernel_constant") || selected("longtime"))
    pairs = make_sample_pairs(grid);

  if (selected("kernel_constant")) {
    BoundReport rep = estimate_kernel_constant(cfg.model, thetas, bases,
                                               cfg.t_small, pairs, cfg.l_max);
    for (const ThetaWeight& tw : thetas) {
      const std::string key = "theta_" + theta_tag(tw.theta);
      if (rep.stats["tables"].contains(key))
        write_constants_csv(
            cfg.out_dir + "/constants_" + key + ".csv",
            rep.stats["tables"][key]["t"].get<std::vector<double>>(),
            rep.stats["tables"][key]["C_star"].get<std::vector<double>>());
    }
    grouped["kernel_constant"].push_back(std::move(rep));
  }

  if (selected("longtime") || selected("groundstate")) {
    const GroundState gs = ground_state(bases.basis(0), bases.op(0));
    if (selected("longtime"))
      grouped["longtime"].push_back(verify_longtime(
          cfg.model, bases, gs, cfg.t_large, pairs, cfg.l_max));
    if (selected("groundstate"))
      grouped["groundstate"].push_back(
          verify_groundstate_asymptotics(cfg.model, gs, grid));
  }

  // Persist reports in canonical order, then bulk CSVs.
  for (const std::string& name : all_verifier_names()) {
    const auto it = grouped.find(name);
    if (it == grouped.end()) continue;
    write_verifier_report(cfg.out_dir, name, it->second);
    for (BoundReport& r : it->second) outcome.reports.push_back(std::move(r));
  }

  std::map<int, Eigen::VectorXd> spectra;
  for (const auto& [ell, basis] : bases.solved())
    spectra.emplace(ell, basis.eigenvalues);
  if (!spectra.empty())
    write_spectrum_csv(cfg.out_dir + "/spectrum.csv", spectra);

  Json summary;
  summary["config"] = config_to_json(cfg);
  summary["verdicts"] = Json::object();
  for (const BoundReport& r : outcome.reports) {
    const std::string key =
        r.parameters.contains("theta") && r.parameters["theta"].is_number()
            ? r.name + "_theta_" + theta_tag(r.parameters["theta"].get<double>())
            : r.name;
    summary["verdicts"][key] = to_string(r.verdict);
  }
  outcome.exit_code = exit_code_for(outcome.reports);
  summary["exit_code"] = outcome.exit_code;
  write_json(cfg.out_dir + "/run_summary.json", summary);

  outcome.cache_hits = bases.cache_hits();
  outcome.solves = bases.solves();
  log << "eigensolves: " << outcome.solves
      << ", cache hits: " << outcome.cache_hits << "\n";
  if (outcome.cache_hits > 0) log << "cache hit: eigensolve skipped\n";
  return outcome;
}

}  // namespace

RunOutcome run(const RunConfig& cfg, bool refine) {
  RunOutcome outcome = run_once(cfg);
  if (!refine) return outcome;

  RunConfig fine_cfg = cfg;
  fine_cfg.m *= 2;
  fine_cfg.out_dir = cfg.out_dir + "/refine";
  const RunOutcome fine = run_once(fine_cfg);

  Json deltas = Json::object();
  for (const BoundReport& a : outcome.reports)
    for (const BoundReport& b : fine.reports) {
      if (a.name != b.name) continue;
      if (a.parameters.contains("theta") && b.parameters.contains("theta") &&
          a.parameters["theta"] != b.parameters["theta"])
        continue;
      Json entry = Json::object();
      for (const auto& item : a.constants.items()) {
        if (!item.value().is_number() || !b.constants.contains(item.key()))
          continue;
        const double va = item.value().get<double>();
        const double vb = b.constants[item.key()].get<double>();
        entry[item.key()] = {{"coarse", va},
                             {"fine", vb},
                             {"rel_delta",
                              std::abs(va - vb) /
                                  std::max({std::abs(va), std::abs(vb), 1e-300})}};
      }
      const std::string key =
          a.parameters.contains("theta") && a.parameters["theta"].is_number()
              ? a.name + "_theta_" + theta_tag(a.parameters["theta"].get<double>())
              : a.name;
      deltas[key] = entry;
    }
  write_json(cfg.out_dir + "/refinement_deltas.json", deltas);
  return outcome;
}

}  // namespace degen
