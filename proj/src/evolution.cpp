#include "degenkernel/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace degen {

Eigen::VectorXd delta_init(const ModeOperator& op, int b) {
  const int m = op.grid.size();
  if (b < 0 || b >= m) throw std::invalid_argument("delta_init: bad node index");
  Eigen::VectorXd f = Eigen::VectorXd::Zero(m);
  f[b] = 1.0 / op.mass[b];
  return f;
}

namespace {

// Thomas algorithm for a symmetric tridiagonal system (diag, off).
// The matrix M + dt/2 K is SPD for dt > 0, so no pivoting is needed.
Eigen::VectorXd tridiag_solve(const Eigen::VectorXd& diag,
                              const Eigen::VectorXd& off, Eigen::VectorXd rhs) {
  const int m = static_cast<int>(diag.size());
  Eigen::VectorXd c(m - 1);
  double piv = diag[0];
  if (piv == 0.0) throw std::runtime_error("tridiag_solve: singular system");
  c[0] = off[0] / piv;
  rhs[0] /= piv;
  for (int j = 1; j < m; ++j) {
    piv = diag[j] - off[j - 1] * c[j - 1];
    if (piv == 0.0) throw std::runtime_error("tridiag_solve: singular system");
    if (j < m - 1) c[j] = off[j] / piv;
    rhs[j] = (rhs[j] - off[j - 1] * rhs[j - 1]) / piv;
  }
  for (int j = m - 2; j >= 0; --j) rhs[j] -= c[j] * rhs[j + 1];
  return rhs;
}

}  // namespace

Eigen::VectorXd evolve(const ModeOperator& op, Eigen::VectorXd f0, double t,
                       int steps) {
  if (steps < 1) throw std::invalid_argument("evolve: steps must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("evolve: t must be > 0");
  const int m = op.grid.size();
  const double half_dt = 0.5 * t / steps;

  const Eigen::VectorXd lhs_diag = op.mass + half_dt * op.stiff_diag;
  const Eigen::VectorXd lhs_off = half_dt * op.stiff_off;
  const Eigen::VectorXd rhs_diag = op.mass - half_dt * op.stiff_diag;
  const Eigen::VectorXd rhs_off = -half_dt * op.stiff_off;

  Eigen::VectorXd u = std::move(f0);
  Eigen::VectorXd rhs(m);
  for (int n = 0; n < steps; ++n) {
    rhs = rhs_diag.cwiseProduct(u);
    for (int j = 0; j + 1 < m; ++j) {
      rhs[j] += rhs_off[j] * u[j + 1];
      rhs[j + 1] += rhs_off[j] * u[j];
    }
    u = tridiag_solve(lhs_diag, lhs_off, std::move(rhs));
  }
  return u;
}

}  // namespace degen
