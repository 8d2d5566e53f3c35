#pragma once

#include <Eigen/Core>

#include "degenkernel/grid.hpp"

namespace degen {

/// Discrete mu-Dirac at node b: e_b / m_b, so that evolving it yields the
/// column k_mu(., r_b) of the mode kernel.
Eigen::VectorXd delta_init(const ModeOperator& op, int b);

/// Fixed-step Crank-Nicolson for M du/dt = -K u:
///   (M + dt/2 K) u^{n+1} = (M - dt/2 K) u^n,  dt = t / steps.
/// Tridiagonal Thomas solves; unconditionally stable, ||u^{n+1}||_M <= ||u^n||_M.
/// Independent of the spectral engine by construction (cross-validation oracle).
Eigen::VectorXd evolve(const ModeOperator& op, Eigen::VectorXd f0, double t,
                       int steps);

}  // namespace degen
