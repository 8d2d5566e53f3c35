#include "degenkernel/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace degen {

RadialGrid build_grid(double r_max, int m, double g) {
  if (!(r_max > 0.0)) throw std::invalid_argument("build_grid: r_max must be > 0");
  if (m < 16) throw std::invalid_argument("build_grid: need at least 16 nodes");
  if (!(g >= 1.0)) throw std::invalid_argument("build_grid: grading must be >= 1");

  RadialGrid grid;
  grid.r_max = r_max;
  grid.grading = g;
  grid.nodes.resize(m);
  for (int j = 0; j < m; ++j)
    grid.nodes[j] = r_max * std::pow(double(j + 1) / double(m + 1), g);

  grid.faces.resize(m + 1);
  grid.faces[0] = 0.5 * grid.nodes[0];
  for (int j = 1; j < m; ++j)
    grid.faces[j] = 0.5 * (grid.nodes[j - 1] + grid.nodes[j]);
  grid.faces[m] = r_max;
  return grid;
}

RadialGrid::Interp RadialGrid::locate(double r) const {
  const int m = size();
  if (r <= nodes[0]) return {0, 0.0, false};
  if (r >= nodes[m - 1]) {
    // linear decay to the Dirichlet value 0 at r_max
    const double w = std::min((r - nodes[m - 1]) / (r_max - nodes[m - 1]), 1.0);
    return {m - 1, w, true};
  }
  int lo = 0, hi = m - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (nodes[mid] <= r ? lo : hi) = mid;
  }
  return {lo, (r - nodes[lo]) / (nodes[lo + 1] - nodes[lo]), false};
}

ModeOperator assemble_mode(const ModelParams& params, const RadialGrid& grid,
                           int ell, bool laplace_override) {
  if (ell < 0) throw std::invalid_argument("assemble_mode: ell must be >= 0");
  const int m = grid.size();
  ModeOperator op{ell, Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m - 1),
                  Eigen::VectorXd::Zero(m),      grid,
                  params,                        laplace_override};

  const int n = params.dim;
  const double centrifugal = double(ell) * (ell + n - 2);

  for (int j = 0; j + 1 < m; ++j) {
    const double face = grid.faces[j + 1];
    op.stiff_off[j] =
        -std::pow(face, n - 1) / (grid.nodes[j + 1] - grid.nodes[j]);
  }

  for (int j = 0; j < m; ++j) {
    const double r = grid.nodes[j];
    const double dr = grid.cell_width(j);
    double diag = 0.0;
    if (j > 0) diag -= op.stiff_off[j - 1];
    if (j + 1 < m) diag -= op.stiff_off[j];
    // Outer Dirichlet flux against the zero boundary value at r_max.
    if (j == m - 1)
      diag += std::pow(grid.faces[m], n - 1) / (grid.r_max - grid.nodes[m - 1]);
    // Zero-flux inner face; nothing added for j == 0.
    diag += centrifugal * std::pow(r, n - 3) * dr;
    if (!laplace_override)
      diag += std::pow(r, params.beta + n - 1) / (1.0 + std::pow(r, params.alpha)) * dr;
    op.stiff_diag[j] = diag;

    const double density =
        laplace_override ? 1.0 : 1.0 / (1.0 + std::pow(r, params.alpha));
    op.mass[j] = std::pow(r, n - 1) * density * dr;
  }
  return op;
}

double ModeOperator::form(const Eigen::VectorXd& u) const {
  const int m = static_cast<int>(u.size());
  double s = u.cwiseAbs2().dot(stiff_diag);
  for (int j = 0; j + 1 < m; ++j) s += 2.0 * stiff_off[j] * u[j] * u[j + 1];
  return s;
}

Eigen::VectorXd ModeOperator::apply_stiffness(const Eigen::VectorXd& u) const {
  const int m = static_cast<int>(u.size());
  Eigen::VectorXd out = stiff_diag.cwiseProduct(u);
  for (int j = 0; j + 1 < m; ++j) {
    out[j] += stiff_off[j] * u[j + 1];
    out[j + 1] += stiff_off[j] * u[j];
  }
  return out;
}

}  // namespace degen
