// Command-line front end: grid-info, spectrum, kernel, verify, sweep.
#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "degenkernel/report.hpp"
#include "degenkernel/runner.hpp"

using namespace degen;

namespace {

RunConfig make_config(const std::string& config_path, const std::string& out,
                      std::uint64_t seed, bool has_seed) {
  RunConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
  if (!out.empty()) cfg.out_dir = out;
  if (has_seed) cfg.seed = seed;
  return cfg;
}

int cmd_grid_info(const RunConfig& cfg) {
  const RadialGrid grid = build_grid(cfg.r_max, cfg.m, cfg.grading);
  Json doc;
  doc["r_max"] = grid.r_max;
  doc["m"] = grid.size();
  doc["grading"] = grid.grading;
  doc["first_node"] = grid.nodes[0];
  doc["last_node"] = grid.nodes[grid.size() - 1];
  doc["min_cell_width"] = grid.cell_width(0);
  doc["max_cell_width"] = grid.cell_width(grid.size() - 1);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, int ell) {
  std::filesystem::create_directories(cfg.out_dir);
  ModeBasisSet bases(cfg.model, build_grid(cfg.r_max, cfg.m, cfg.grading),
                     cache_directory(cfg.out_dir));
  std::map<int, Eigen::VectorXd> spectra;
  if (ell >= 0) {
    spectra.emplace(ell, bases.basis(ell).eigenvalues);
  } else {
    for (int l = 0; l <= cfg.l_max; ++l)
      spectra.emplace(l, bases.basis(l).eigenvalues);
  }
  const std::string path = cfg.out_dir + "/spectrum.csv";
  write_spectrum_csv(path, spectra);
  std::cout << "wrote " << path << " (" << spectra.size() << " modes, lambda_1 = "
            << format_double(spectra.begin()->second[0]) << ")\n";
  return 0;
}

int cmd_kernel(const RunConfig& cfg, double t, double rx, double ry,
               double cos_gamma) {
  std::filesystem::create_directories(cfg.out_dir);
  ModeBasisSet bases(cfg.model, build_grid(cfg.r_max, cfg.m, cfg.grading),
                     cache_directory(cfg.out_dir));
  const KernelEvaluation ev =
      assemble_kernel(bases, t, rx, ry, cos_gamma, cfg.l_max);
  const std::string path = cfg.out_dir + "/kernel.csv";
  write_kernel_csv(path, {ev});
  std::cout << kKernelCsvHeader << "\n"
            << format_double(ev.t) << ',' << format_double(ev.rx) << ','
            << format_double(ev.ry) << ',' << format_double(ev.cos_gamma) << ','
            << format_double(ev.value_kmu) << ',' << format_double(ev.value_k)
            << ',' << format_double(ev.tail_bound) << "\n";
  if (!ev.resolved) {
    std::cerr << "warning: tail bound exceeds 1e-6 of value; raise l_max\n";
    return 2;
  }
  return 0;
}

int cmd_verify(RunConfig cfg, const std::string& name, bool refine) {
  if (name != "all") {
    const auto& names = all_verifier_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      std::cerr << "unknown verifier: " << name << "\n";
      return 1;
    }
    cfg.verify = {name};
  }
  const RunOutcome outcome = run(cfg, refine);
  for (const BoundReport& r : outcome.reports) {
    std::string label = r.name;
    if (r.parameters.contains("theta") && r.parameters["theta"].is_number())
      label += " (theta=" + std::to_string(r.parameters["theta"].get<double>()).substr(0, 4) + ")";
    std::cout << label << ": " << to_string(r.verdict) << "\n";
  }
  return outcome.exit_code;
}

int cmd_sweep(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const RadialGrid grid = build_grid(cfg.r_max, cfg.m, cfg.grading);
  ModeBasisSet bases(cfg.model, grid, cache_directory(cfg.out_dir));
  const std::vector<PointPair> pairs = make_sample_pairs(grid);

  std::vector<KernelEvaluation> rows;
  rows.reserve(cfg.t_small.size() * pairs.size());
  for (double t : cfg.t_small)
    for (const PointPair& pp : pairs)
      rows.push_back(assemble_kernel(bases, t, pp.rx, pp.ry, pp.cos_gamma,
                                     cfg.l_max));
  write_kernel_csv(cfg.out_dir + "/kernel_sweep.csv", rows);

  // One C*(t) table per theta, reweighting the same kernel values.
  for (double th : cfg.theta) {
    const ThetaWeight tw(cfg.model, th);
    std::vector<double> cstar(cfg.t_small.size(), 0.0);
    for (size_t it = 0; it < cfg.t_small.size(); ++it) {
      // Same shifted-kernel convention as the kernel_constant verifier.
      const double tp =
          std::exp(cfg.t_small[it]) * std::pow(cfg.t_small[it], th / 2.0);
      for (size_t ip = 0; ip < pairs.size(); ++ip) {
        const KernelEvaluation& ev = rows[it * pairs.size() + ip];
        cstar[it] = std::max(cstar[it],
                             ev.value_kmu * tp /
                                 (phi_theta(tw, cfg.model, ev.rx) *
                                  phi_theta(tw, cfg.model, ev.ry)));
      }
    }
    char name[48];
    std::snprintf(name, sizeof name, "/constants_theta_%g.csv", th);
    write_constants_csv(cfg.out_dir + name, cfg.t_small, cstar);
  }
  std::cout << "wrote " << rows.size() << " kernel rows and "
            << cfg.theta.size() << " constant tables to " << cfg.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-kernel laboratory for (1+|x|^a)Laplacian - |x|^b"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  bool refine = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "Output directory (overrides config)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides config)");
  app.add_flag("--refine", refine, "Double M and re-run for refinement deltas");

  auto* grid_info = app.add_subcommand("grid-info", "Print grid summary");

  int ell = -1;
  auto* spectrum = app.add_subcommand("spectrum", "Write eigenvalue table");
  spectrum->add_option("--ell", ell, "Single angular mode (default: 0..l_max)");

  double t = 0.0, rx = 0.0, ry = 0.0, cos_gamma = 1.0;
  auto* kernel = app.add_subcommand("kernel", "Evaluate the heat kernel");
  kernel->add_option("--t", t, "Time")->required();
  kernel->add_option("--x", rx, "|x|")->required();
  kernel->add_option("--y", ry, "|y|")->required();
  kernel->add_option("--cos-gamma", cos_gamma, "cos of the angle between x and y");

  std::string which = "all";
  auto* verify = app.add_subcommand("verify", "Run bound verifiers");
  verify->add_option("name", which, "Verifier name or 'all'");

  auto* sweep = app.add_subcommand("sweep", "Kernel sweep over theta x t");

  // Accept global flags after the subcommand too.
  for (CLI::App* sub : {grid_info, spectrum, kernel, verify, sweep})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg =
        make_config(config_path, out_dir, seed, seed_opt->count() > 0);
    if (grid_info->parsed()) return cmd_grid_info(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg, ell);
    if (kernel->parsed()) return cmd_kernel(cfg, t, rx, ry, cos_gamma);
    if (verify->parsed()) return cmd_verify(cfg, which, refine);
    if (sweep->parsed()) return cmd_sweep(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
