#include "degenkernel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace degen {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unresolved: return "unresolved";
  }
  return "?";
}

Json BoundReport::to_json() const {
  Json j;
  j["name"] = name;
  j["verdict"] = to_string(verdict);
  j["parameters"] = parameters;
  j["constants"] = constants;
  j["stats"] = stats;
  j["notes"] = notes;
  return j;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("fit_line: need n >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (size_t i = 0; i < n; ++i)
    fit.max_residual = std::max(
        fit.max_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  return fit;
}

namespace {

Json ratio_stats(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  Json j;
  j["min"] = v.front();
  j["median"] = v[v.size() / 2];
  j["max"] = v.back();
  return j;
}

Json model_json(const ModelParams& p) {
  return Json{{"N", p.dim}, {"alpha", p.alpha}, {"beta", p.beta}};
}

double snap_to_node(const RadialGrid& grid, double r) {
  const auto loc = grid.locate(r);
  if (loc.beyond_last) return grid.nodes[grid.size() - 1];
  if (loc.index + 1 >= grid.size() || loc.weight < 0.5)
    return grid.nodes[loc.index];
  return grid.nodes[loc.index + 1];
}

double interp_nodal(const RadialGrid& grid, const Eigen::VectorXd& v, double r) {
  const auto loc = grid.locate(r);
  if (loc.beyond_last) return (1.0 - loc.weight) * v[loc.index];
  if (loc.index + 1 >= grid.size()) return v[loc.index];
  return (1.0 - loc.weight) * v[loc.index] + loc.weight * v[loc.index + 1];
}

}  // namespace

std::vector<double> ladder_radii(const RadialGrid& grid, int count) {
  const double lo = grid.nodes[0];
  const double hi = 0.7 * grid.r_max;
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double r = lo * std::pow(hi / lo, double(i) / (count - 1));
    const double snapped = snap_to_node(grid, r);
    // Snapping can collide on coarse grids; keep each node once.
    if (out.empty() || snapped > out.back()) out.push_back(snapped);
  }
  return out;
}

std::vector<PointPair> make_sample_pairs(const RadialGrid& grid) {
  static const double angles[5] = {1.0, 0.5, 0.0, -0.5, -1.0};
  const std::vector<double> ladder = ladder_radii(grid);
  std::vector<PointPair> pairs;
  for (size_t i = 0; i < ladder.size(); ++i)
    for (size_t j = i; j < ladder.size(); ++j)
      for (double c : angles) pairs.push_back({ladder[i], ladder[j], c});
  for (double r : ladder) pairs.push_back({r, 0.0, 1.0});
  return pairs;
}

// ---------------------------------------------------------------------------
// Lyapunov drift scan
// ---------------------------------------------------------------------------

namespace {

struct ScanResult {
  double kappa_star = -std::numeric_limits<double>::infinity();
  double arg_max = 0.0;
  bool tail_monotone = true;
};

ScanResult scan_drift(const ModelParams& p, double gamma, double r_max,
                      long points) {
  ScanResult res;
  long arg_idx = 0;
  for (long i = 0; i <= points; ++i) {
    const double r = r_max * double(i) / double(points);
    const double d = lyapunov_drift(p, gamma, r);
    if (d > res.kappa_star) {
      res.kappa_star = d;
      res.arg_max = r;
      arg_idx = i;
    }
  }
  // Past the maximizer the drift must fall monotonically (beta > alpha-2
  // makes it tend to -infinity).
  double prev = res.kappa_star;
  for (long i = arg_idx + 1; i <= points; ++i) {
    const double r = r_max * double(i) / double(points);
    const double d = lyapunov_drift(p, gamma, r);
    if (d > prev + 1e-9 * (std::abs(prev) + 1.0)) {
      res.tail_monotone = false;
      break;
    }
    prev = d;
  }
  return res;
}

}  // namespace

BoundReport verify_lyapunov(const ModelParams& params, const ThetaWeight& tw,
                            double r_max, long scan_points) {
  BoundReport rep;
  rep.name = "lyapunov";
  rep.parameters = {{"model", model_json(params)},
                    {"theta", tw.theta},
                    {"gamma", tw.gamma},
                    {"r_max", r_max},
                    {"scan_points", scan_points}};

  const ScanResult coarse = scan_drift(params, tw.gamma, r_max, scan_points);
  const ScanResult fine = scan_drift(params, tw.gamma, r_max, 4 * scan_points);
  const double kappa_star = fine.kappa_star;
  const double kappa = std::max(kappa_star, 0.0);
  const double delta = std::abs(fine.kappa_star - coarse.kappa_star);
  const bool tail_ok =
      fine.tail_monotone && lyapunov_drift(params, tw.gamma, r_max) < 0.0;

  rep.constants = {{"kappa_star", kappa_star},
                   {"kappa", kappa},
                   {"arg_max", fine.arg_max}};
  rep.stats = {{"scan_refinement_delta", delta},
               {"tail_monotone", tail_ok},
               {"drift_at_r_max", lyapunov_drift(params, tw.gamma, r_max)}};
  rep.verdict =
      (std::isfinite(kappa_star) && tail_ok) ? Verdict::pass : Verdict::fail;
  if (!tail_ok) rep.notes.push_back("drift tail is not decreasing; check beta > alpha-2");
  return rep;
}

// ---------------------------------------------------------------------------
// Semigroup Lyapunov property
// ---------------------------------------------------------------------------

BoundReport verify_semigroup_lyapunov(const ModelParams& params,
                                      const ThetaWeight& tw,
                                      const ModeOperator& op0,
                                      const EigenBasis& basis0,
                                      const std::vector<double>& t_grid,
                                      double kappa) {
  BoundReport rep;
  rep.name = "semigroup_lyapunov";
  const double kappa0 = kappa + 0.01;
  rep.parameters = {{"model", model_json(params)},
                    {"theta", tw.theta},
                    {"kappa", kappa},
                    {"kappa0", kappa0},
                    {"t_grid", t_grid}};

  const RadialGrid& grid = op0.grid;
  Eigen::VectorXd phi(grid.size());
  for (int j = 0; j < grid.size(); ++j)
    phi[j] = phi_theta(tw, params, grid.nodes[j]);

  // Influence of the truncated tail of phi on T(t)phi at interior nodes:
  // the L^2_mu mass of phi beyond r_max, damped by the absorption rate
  // V(r_max) that dominates the potential outside the ball.
  const double p_tail = 2.0 * tw.gamma + params.dim - params.alpha;
  const double tail_sq = std::pow(grid.r_max, p_tail) / (-p_tail);
  const double t_min = *std::min_element(t_grid.begin(), t_grid.end());
  const double tail_influence = std::sqrt(tail_sq / op0.mass_inner(phi, phi)) *
                                std::exp(-params.potential(grid.r_max) * t_min);
  if (tail_influence > 1e-8) {
    rep.verdict = Verdict::unresolved;
    rep.notes.push_back("truncated tail of phi is not negligible at this r_max");
    rep.stats = {{"tail_influence", tail_influence}};
    return rep;
  }

  std::vector<double> max_ratios;
  double worst = 0.0;
  for (double t : t_grid) {
    const Eigen::VectorXd tphi = apply_semigroup(basis0, op0.mass, t, phi);
    const double bound = std::exp(kappa0 * t);
    double mr = 0.0;
    for (int j = 0; j < grid.size(); ++j)
      mr = std::max(mr, tphi[j] / (bound * phi[j]));
    max_ratios.push_back(mr);
    worst = std::max(worst, mr);
  }

  rep.constants = {{"max_ratio", worst}};
  rep.stats = {{"max_ratio_per_t", max_ratios},
               {"tail_influence", tail_influence}};
  rep.verdict = worst <= 1.0 + 1e-6 ? Verdict::pass : Verdict::fail;
  return rep;
}

// ---------------------------------------------------------------------------
// Weighted Nash inequality
// ---------------------------------------------------------------------------

namespace {

struct NashEval {
  bool valid = false;
  double rho = 0.0;
};

NashEval nash_rho(const ModelParams& params, const ThetaWeight& tw,
                  const ModeOperator& op, const Eigen::VectorXd& u) {
  const double omega = sphere_surface_area(params.dim);
  const double l2sq = omega * op.mass_inner(u, u);
  if (l2sq <= 0.0) return {};
  double uphi = 0.0;
  for (int j = 0; j < op.grid.size(); ++j)
    uphi += std::abs(u[j]) * phi_theta(tw, params, op.grid.nodes[j]) * op.mass[j];
  uphi *= omega;
  const double atilde = omega * (op.form(u) + op.mass_inner(u, u));
  const double arg = l2sq / (uphi * uphi);
  return {true, rate_psi(tw.theta, arg) * uphi * uphi / atilde};
}

}  // namespace

BoundReport verify_nash(const ModelParams& params, const ThetaWeight& tw,
                        const ModeOperator& coarse_op0,
                        const ModeOperator& fine_op0,
                        const std::vector<TestFunction>& samples) {
  BoundReport rep;
  rep.name = "nash";
  rep.parameters = {{"model", model_json(params)},
                    {"theta", tw.theta},
                    {"n_samples", samples.size()},
                    {"m_coarse", coarse_op0.grid.size()},
                    {"m_fine", fine_op0.grid.size()}};

  int discarded = 0;
  double sup_coarse = 0.0, sup_fine = 0.0;
  std::vector<double> rhos;
  double homogeneity_error = 0.0;
  bool homogeneity_checked = false;

  for (const TestFunction& f : samples) {
    const Eigen::VectorXd u = f.values_on(coarse_op0.grid);
    const NashEval ev = nash_rho(params, tw, coarse_op0, u);
    if (!ev.valid) {
      ++discarded;
      continue;
    }
    rhos.push_back(ev.rho);
    sup_coarse = std::max(sup_coarse, ev.rho);
    if (!homogeneity_checked) {
      const NashEval ev2 = nash_rho(params, tw, coarse_op0, 2.0 * u);
      homogeneity_error = std::abs(ev2.rho - ev.rho) / ev.rho;
      homogeneity_checked = true;
    }
    const NashEval evf =
        nash_rho(params, tw, fine_op0, f.values_on(fine_op0.grid));
    if (evf.valid) sup_fine = std::max(sup_fine, evf.rho);
  }

  const double refinement_factor =
      sup_coarse > 0.0 ? std::max(sup_fine / sup_coarse, sup_coarse / sup_fine)
                       : std::numeric_limits<double>::infinity();

  rep.constants = {{"rho_sup", sup_coarse},
                   {"rho_sup_fine", sup_fine},
                   {"nash_constant_reciprocal", sup_coarse}};
  rep.stats = {{"rho", ratio_stats(rhos)},
               {"refinement_factor", refinement_factor},
               {"homogeneity_error", homogeneity_error},
               {"discarded", discarded},
               {"used", rhos.size()}};
  rep.verdict = (std::isfinite(sup_coarse) && sup_coarse > 0.0 &&
                 refinement_factor < 2.0 && homogeneity_error <= 1e-12)
                    ? Verdict::pass
                    : Verdict::fail;
  return rep;
}

// ---------------------------------------------------------------------------
// Weighted Sobolev inequality
// ---------------------------------------------------------------------------

namespace {

struct SobolevEval {
  bool valid = false;
  double ratio = 0.0;
};

SobolevEval sobolev_ratio(const ModelParams& params, double q, double qbp,
                          const ModeOperator& lap_op, const Eigen::VectorXd& u) {
  const RadialGrid& grid = lap_op.grid;
  const double omega = sphere_surface_area(params.dim);
  double lhs_int = 0.0, l2nu = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    const double r = grid.nodes[j];
    const double vol = std::pow(r, params.dim - 1) * grid.cell_width(j);
    lhs_int += std::pow(1.0 + r, qbp) * std::pow(std::abs(u[j]), q) * vol;
    l2nu += std::pow(1.0 + r, -params.alpha) * u[j] * u[j] * vol;
  }
  if (lhs_int <= 0.0) return {};
  const double lhs = std::pow(omega * lhs_int, 1.0 / q);
  const double rhs =
      std::sqrt(omega * lap_op.form(u)) + std::sqrt(omega * l2nu);
  return {true, lhs / rhs};
}

}  // namespace

BoundReport verify_weighted_sobolev(const ModelParams& params,
                                    const ThetaWeight& tw,
                                    const RadialGrid& coarse_grid,
                                    const RadialGrid& fine_grid,
                                    const std::vector<TestFunction>& samples) {
  BoundReport rep;
  rep.name = "weighted_sobolev";
  const double theta = tw.theta;
  const int n = params.dim;
  const double p = 2.0;
  const double q = 2.0 * theta / (theta - 2.0);
  const double qbp = 2.0 * (theta - n) / (2.0 - theta);
  const double bp = qbp / q;
  const double gp = 0.0;
  rep.parameters = {{"model", model_json(params)}, {"theta", theta},
                    {"p", p},                      {"q", q},
                    {"q_beta_prime", qbp},         {"beta_prime", bp},
                    {"gamma_prime", gp},           {"nu", -params.alpha},
                    {"n_samples", samples.size()}};

  // Exponent bookkeeping of the weighted Sobolev inequality.
  const auto fail_relation = [&](const std::string& what) {
    rep.verdict = Verdict::fail;
    rep.notes.push_back("exponent relation violated: " + what);
    return rep;
  };
  if (!(p < n)) return fail_relation("p < N");
  if (!(p <= q)) return fail_relation("p <= q");
  if (!(q <= p * n / (n - p) + 1e-12)) return fail_relation("q <= p*");
  if (!(gp - 1.0 <= bp + 1e-12 && bp <= gp + 1e-12))
    return fail_relation("gamma'-1 <= beta' <= gamma'");
  if (std::abs(1.0 / p - 1.0 / q - (1.0 - gp + bp) / n) > 1e-12)
    return fail_relation("1/p - 1/q = (1 - gamma' + beta')/N");
  if (n + p * (gp - 1.0) == 0.0) return fail_relation("N + p(gamma'-1) != 0");

  const ModeOperator lap_coarse = assemble_mode(params, coarse_grid, 0, true);
  const ModeOperator lap_fine = assemble_mode(params, fine_grid, 0, true);

  int discarded = 0;
  double sup_coarse = 0.0, sup_fine = 0.0;
  std::vector<double> ratios;
  double homogeneity_error = 0.0;
  bool homogeneity_checked = false;

  for (const TestFunction& f : samples) {
    const Eigen::VectorXd u = f.values_on(coarse_grid);
    const SobolevEval ev = sobolev_ratio(params, q, qbp, lap_coarse, u);
    if (!ev.valid) {
      ++discarded;
      continue;
    }
    ratios.push_back(ev.ratio);
    sup_coarse = std::max(sup_coarse, ev.ratio);
    if (!homogeneity_checked) {
      const SobolevEval ev2 = sobolev_ratio(params, q, qbp, lap_coarse, 2.0 * u);
      homogeneity_error = std::abs(ev2.ratio - ev.ratio) / ev.ratio;
      homogeneity_checked = true;
    }
    const SobolevEval evf =
        sobolev_ratio(params, q, qbp, lap_fine, f.values_on(fine_grid));
    if (evf.valid) sup_fine = std::max(sup_fine, evf.ratio);
  }

  const double refinement_factor =
      sup_coarse > 0.0 ? std::max(sup_fine / sup_coarse, sup_coarse / sup_fine)
                       : std::numeric_limits<double>::infinity();

  rep.constants = {{"ratio_sup", sup_coarse}, {"ratio_sup_fine", sup_fine}};
  rep.stats = {{"ratio", ratio_stats(ratios)},
               {"refinement_factor", refinement_factor},
               {"homogeneity_error", homogeneity_error},
               {"discarded", discarded},
               {"used", ratios.size()}};
  rep.verdict = (std::isfinite(sup_coarse) && sup_coarse > 0.0 &&
                 refinement_factor < 2.0 && homogeneity_error <= 1e-12)
                    ? Verdict::pass
                    : Verdict::fail;
  return rep;
}

// ---------------------------------------------------------------------------
// Ultracontractivity
// ---------------------------------------------------------------------------

BoundReport verify_ultracontractivity(const ModelParams& params,
                                      const ThetaWeight& tw,
                                      const ModeOperator& op0,
                                      const EigenBasis& basis0,
                                      const std::vector<TestFunction>& samples,
                                      const std::vector<double>& t_grid,
                                      double kappa, double nash_rho) {
  BoundReport rep;
  rep.name = "ultracontractivity";
  rep.parameters = {{"model", model_json(params)},
                    {"theta", tw.theta},
                    {"kappa", kappa},
                    {"nash_rho", nash_rho},
                    {"t_grid", t_grid},
                    {"n_samples", samples.size()}};

  const double t_min = basis0.resolvable_t_min();
  const double rescale = std::pow(nash_rho, tw.theta / 4.0);
  const double omega = sphere_surface_area(params.dim);
  const RadialGrid& grid = op0.grid;

  Eigen::VectorXd phi(grid.size());
  for (int j = 0; j < grid.size(); ++j)
    phi[j] = phi_theta(tw, params, grid.nodes[j]);

  std::vector<double> ratios;
  std::vector<double> max_ratio_per_t;
  int skipped_t = 0;
  for (double t : t_grid) {
    if (t < t_min) {
      ++skipped_t;
      continue;
    }
    const double envelope = rescale * ultracontractivity_K(tw.theta, 2.0 * t) *
                            std::exp((kappa + 1.0) * t) * std::exp(-t);
    double mr = 0.0;
    for (const TestFunction& f : samples) {
      const Eigen::VectorXd u = f.values_on(grid);
      const double fphi =
          omega * (u.cwiseAbs().cwiseProduct(phi).dot(op0.mass));
      if (fphi <= 0.0) continue;
      const Eigen::VectorXd tu = apply_semigroup(basis0, op0.mass, t, u);
      const double l2 = std::sqrt(omega * op0.mass_inner(tu, tu));
      const double ratio = l2 / (envelope * fphi);
      ratios.push_back(ratio);
      mr = std::max(mr, ratio);
    }
    max_ratio_per_t.push_back(mr);
  }

  rep.stats = {{"ratio", ratios.empty() ? Json::object() : ratio_stats(ratios)},
               {"max_ratio_per_t", max_ratio_per_t},
               {"skipped_t_below_resolvable", skipped_t},
               {"resolvable_t_min", t_min}};
  if (ratios.empty()) {
    rep.verdict = Verdict::unresolved;
    rep.notes.push_back("all requested times below the resolvable t_min");
    return rep;
  }
  const double worst = *std::max_element(ratios.begin(), ratios.end());
  rep.constants = {{"max_ratio", worst}};
  rep.verdict = worst <= 1.0 + 1e-6 ? Verdict::pass : Verdict::fail;
  if (skipped_t > 0) rep.notes.push_back("some times below resolvable t_min were skipped");
  return rep;
}

// ---------------------------------------------------------------------------
// Small-time kernel constant
// ---------------------------------------------------------------------------

BoundReport estimate_kernel_constant(const ModelParams& params,
                                     const std::vector<ThetaWeight>& thetas,
                                     const ModeBasisSet& bases,
                                     const std::vector<double>& t_grid,
                                     const std::vector<PointPair>& pairs,
                                     int l_max) {
  BoundReport rep;
  rep.name = "kernel_constant";
  std::vector<double> theta_values;
  for (const ThetaWeight& tw : thetas) theta_values.push_back(tw.theta);
  rep.parameters = {{"model", model_json(params)},
                    {"theta", theta_values},
                    {"t_grid", t_grid},
                    {"n_pairs", pairs.size()},
                    {"l_max", l_max}};

  // Kernel values are computed once; every theta table reweights the same
  // numbers, which is what makes the cross-theta identity exact.
  const size_t nt = t_grid.size(), np = pairs.size();
  std::vector<double> kmu(nt * np), tail(nt * np);
  std::vector<char> resolved(nt * np);
  for (size_t it = 0; it < nt; ++it)
    for (size_t ip = 0; ip < np; ++ip) {
      const PointPair& pp = pairs[ip];
      const KernelEvaluation ev = assemble_kernel(bases, t_grid[it], pp.rx,
                                                  pp.ry, pp.cos_gamma, l_max);
      kmu[it * np + ip] = ev.value_kmu;
      tail[it * np + ip] = ev.tail_bound;
      resolved[it * np + ip] = ev.resolved;
    }

  double ladder_max = 0.0;
  for (const PointPair& pp : pairs)
    ladder_max = std::max(ladder_max, std::max(pp.rx, pp.ry));

  Json tables = Json::object();
  bool pass = true;
  bool boundary_max = false;
  bool tails_matter = false;
  double reweight_error = 0.0;

  std::vector<std::vector<double>> cstar_per_theta;
  for (const ThetaWeight& tw : thetas) {
    std::vector<double> cstar(nt, 0.0);
    std::vector<PointPair> arg(nt);
    for (size_t it = 0; it < nt; ++it) {
      // Tabulate the shifted kernel e^t k_mu (the A+I convention of the
      // small-time bound), which removes the spectral decay from the
      // envelope for t near 1; the e^{kappa t} factor is folded into C.
      const double tp =
          std::exp(t_grid[it]) * std::pow(t_grid[it], tw.theta / 2.0);
      for (size_t ip = 0; ip < np; ++ip) {
        const PointPair& pp = pairs[ip];
        const double val = kmu[it * np + ip] * tp /
                           (phi_theta(tw, params, pp.rx) *
                            phi_theta(tw, params, pp.ry));
        if (val > cstar[it]) {
          cstar[it] = val;
          arg[it] = pp;
        }
      }
      // Samples with an unresolved zonal tail are harmless as long as even
      // their tail-inflated value could not move the max.
      for (size_t ip = 0; ip < np; ++ip) {
        if (resolved[it * np + ip]) continue;
        const PointPair& pp = pairs[ip];
        const double bound =
            (std::abs(kmu[it * np + ip]) + tail[it * np + ip]) * tp /
            (phi_theta(tw, params, pp.rx) * phi_theta(tw, params, pp.ry));
        if (bound > 1e-3 * cstar[it]) tails_matter = true;
      }
      if (std::max(arg[it].rx, arg[it].ry) >= ladder_max) boundary_max = true;
    }
    cstar_per_theta.push_back(cstar);

    std::vector<double> logt, logc;
    for (size_t it = 0; it < nt; ++it) {
      logt.push_back(std::log(t_grid[it]));
      logc.push_back(std::log(cstar[it]));
    }
    const LineFit fit = fit_line(logt, logc);
    const double cmax = *std::max_element(cstar.begin(), cstar.end());
    const double cmin = *std::min_element(cstar.begin(), cstar.end());
    const double spread = cmax / cmin;

    char key[32];
    std::snprintf(key, sizeof key, "theta_%g", tw.theta);
    tables[key] = {{"t", t_grid},
                   {"C_star", cstar},
                   {"slope", fit.slope},
                   {"C", cmax},
                   {"spread", spread}};

    if (!(fit.slope >= -0.1) || !std::isfinite(cmax)) pass = false;
    // The t^{-theta/2} envelope is only expected flat at theta = N; larger
    // theta trades time decay for space decay and C*(t) shrinks with t.
    if (tw.theta == params.dim && !(spread <= 5.0)) pass = false;
  }

  // Cross-theta reweighting identity: C*_theta'(t,pair) equals
  // C*_theta(t,pair) * t^{(theta'-theta)/2} * phi_theta^2 / phi_theta'^2.
  if (thetas.size() > 1) {
    const ThetaWeight& base = thetas[0];
    for (size_t k = 1; k < thetas.size(); ++k) {
      const ThetaWeight& other = thetas[k];
      for (size_t it = 0; it < nt; ++it)
        for (size_t ip = 0; ip < np; ++ip) {
          const PointPair& pp = pairs[ip];
          const double v_base =
              kmu[it * np + ip] * std::pow(t_grid[it], base.theta / 2.0) /
              (phi_theta(base, params, pp.rx) * phi_theta(base, params, pp.ry));
          const double reweighted =
              v_base * std::pow(t_grid[it], (other.theta - base.theta) / 2.0) *
              (phi_theta(base, params, pp.rx) * phi_theta(base, params, pp.ry)) /
              (phi_theta(other, params, pp.rx) *
               phi_theta(other, params, pp.ry));
          const double direct =
              kmu[it * np + ip] * std::pow(t_grid[it], other.theta / 2.0) /
              (phi_theta(other, params, pp.rx) *
               phi_theta(other, params, pp.ry));
          const double scale = std::max(std::abs(direct), 1e-300);
          reweight_error =
              std::max(reweight_error, std::abs(direct - reweighted) / scale);
        }
    }
    if (reweight_error > 1e-12) pass = false;
  }

  rep.constants = {{"reweight_identity_error", reweight_error}};
  rep.stats = {{"tables", tables}, {"tails_influence_max", tails_matter}};
  rep.notes.push_back("C* tabulated for the shifted kernel e^t k_mu; e^{kappa t} folded into C for t <= 1");
  if (boundary_max || tails_matter) {
    rep.verdict = Verdict::unresolved;
    if (boundary_max)
      rep.notes.push_back("maximizing pair on the sampling boundary; widen the ladder");
    if (tails_matter)
      rep.notes.push_back("an unresolved zonal tail could move C*; raise l_max");
  } else {
    rep.verdict = pass ? Verdict::pass : Verdict::fail;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Long-time bound
// ---------------------------------------------------------------------------

BoundReport verify_longtime(const ModelParams& params, const ModeBasisSet& bases,
                            const GroundState& gs,
                            const std::vector<double>& t_grid,
                            const std::vector<PointPair>& pairs, int l_max) {
  BoundReport rep;
  rep.name = "longtime";
  const double b = b_exponent(params);
  rep.parameters = {{"model", model_json(params)},
                    {"b", b},
                    {"t_grid", t_grid},
                    {"lambda1", gs.lambda1},
                    {"l_max", l_max}};

  const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
  const double lambda2 = std::min(bases.basis(0).eigenvalues[1],
                                  bases.basis(1).eigenvalues[0]);
  if ((lambda2 - gs.lambda1) * t_max < 5.0) {
    rep.verdict = Verdict::unresolved;
    rep.notes.push_back("t_grid too short to reach spectral-gap dominance");
    return rep;
  }

  const RadialGrid& grid = bases.grid();
  const double z0 = zonal_harmonics(params.dim, 0, 1.0)[0];
  const double psi_peak = gs.psi0.maxCoeff();

  // Pairs whose ground-state weight sits below the eigenvector noise floor
  // only measure roundoff; they are excluded and reported.
  int excluded = 0;
  std::vector<PointPair> used_pairs;
  for (const PointPair& pp : pairs) {
    const double px = interp_nodal(grid, gs.psi0, pp.rx);
    const double py = interp_nodal(grid, gs.psi0, pp.ry);
    if (px < 1e-8 * psi_peak || py < 1e-8 * psi_peak) {
      ++excluded;
      continue;
    }
    used_pairs.push_back(pp);
  }

  std::vector<double> big_r;
  for (double t : t_grid) {
    double r_t = 0.0;
    for (const PointPair& pp : used_pairs) {
      const KernelEvaluation ev = assemble_kernel(
          bases, t, pp.rx, pp.ry, pp.cos_gamma, l_max, gs.lambda1);
      const double denom = interp_nodal(grid, gs.psi0, pp.rx) *
                           interp_nodal(grid, gs.psi0, pp.ry) * z0;
      r_t = std::max(r_t, ev.value_kmu / denom);
    }
    big_r.push_back(r_t);
  }

  std::vector<double> x, y;
  for (size_t i = 0; i < t_grid.size(); ++i) {
    x.push_back(std::pow(t_grid[i], -b));
    y.push_back(std::log(big_r[i]));
  }
  const LineFit fit = fit_line(x, y);
  const double c1 = std::exp(fit.intercept);
  const double c2 = fit.slope;
  const double r_limit = big_r[std::distance(
      t_grid.begin(), std::max_element(t_grid.begin(), t_grid.end()))];

  rep.constants = {{"c1", c1}, {"c2", c2}, {"lambda0", -gs.lambda1}};
  rep.stats = {{"R", big_r},
               {"fit_max_residual", fit.max_residual},
               {"R_at_t_max", r_limit},
               {"excluded_pairs", excluded},
               {"used_pairs", used_pairs.size()}};
  rep.verdict = (c1 > 0.0 && c2 > 0.0 && fit.max_residual <= 0.2 &&
                 std::abs(r_limit - 1.0) <= 1e-3)
                    ? Verdict::pass
                    : Verdict::fail;
  return rep;
}

// ---------------------------------------------------------------------------
// Ground-state asymptotics
// ---------------------------------------------------------------------------

BoundReport verify_groundstate_asymptotics(const ModelParams& params,
                                           const GroundState& gs,
                                           const RadialGrid& grid) {
  BoundReport rep;
  rep.name = "groundstate_asymptotics";
  const double r_lo = 2.0, r_hi = 0.7 * grid.r_max;
  rep.parameters = {{"model", model_json(params)},
                    {"window", Json::array({r_lo, r_hi})},
                    {"lambda1", gs.lambda1}};

  std::vector<double> ratios, radii;
  for (int j = 0; j < grid.size(); ++j) {
    const double r = grid.nodes[j];
    if (r < r_lo || r > r_hi) continue;
    if (gs.psi0[j] < 1e-300) {
      rep.verdict = Verdict::unresolved;
      rep.notes.push_back("ground state underflows inside the window");
      return rep;
    }
    radii.push_back(r);
    ratios.push_back(gs.psi0[j] / groundstate_asymptotic(params, r));
  }
  if (ratios.size() < 8) {
    rep.verdict = Verdict::unresolved;
    rep.notes.push_back("too few nodes inside the comparison window");
    return rep;
  }

  const double band = *std::max_element(ratios.begin(), ratios.end()) /
                      *std::min_element(ratios.begin(), ratios.end());

  // Log-slope of the ratio should flatten toward the outer window edge.
  const size_t n = ratios.size();
  const auto log_slope = [&](size_t i, size_t k) {
    return (std::log(ratios[k]) - std::log(ratios[i])) /
           (std::log(radii[k]) - std::log(radii[i]));
  };
  const double slope_inner = log_slope(0, n / 4);
  const double slope_outer = log_slope(3 * n / 4, n - 1);

  rep.constants = {{"band", band}};
  rep.stats = {{"ratio", ratio_stats(ratios)},
               {"log_slope_inner", slope_inner},
               {"log_slope_outer", slope_outer},
               {"window_nodes", n}};
  rep.verdict = band <= 3.0 ? Verdict::pass : Verdict::fail;
  return rep;
}

}  // namespace degen
