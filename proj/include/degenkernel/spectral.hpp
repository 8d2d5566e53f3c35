#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "degenkernel/grid.hpp"

namespace degen {

/// Full M-orthonormal eigendecomposition of one mode operator:
/// K v_i = lambda_i M v_i with lambda_1 <= ... <= lambda_M (eigenvalues of -A
/// restricted to mode ell, all positive) and v_i^T M v_j = delta_ij.
struct EigenBasis {
  int ell = 0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // columns, on grid nodes
  double residual_bound = 0.0;   // max sampled ||K v - lambda M v||_2
  double orthonormality_error = 0.0;

  int size() const { return static_cast<int>(eigenvalues.size()); }

  /// Smallest time at which the discrete spectrum is fully relaxed:
  /// exp(-lambda_M t) < 1e-12.
  double resolvable_t_min() const;
};

/// Diagonal similarity to a standard symmetric tridiagonal problem, then a
/// divide-and-conquer eigensolve. Throws on LAPACK failure.
EigenBasis solve_mode(const ModeOperator& op, bool with_vectors = true);

/// Mode-ell radial mu-kernel at nodes: sum_i e^{-lambda_i t} v_i[a] v_i[b].
double kmu_mode(const EigenBasis& basis, double t, int a, int b);

/// Spectral semigroup action sum_i e^{-lambda_i t} (v_i^T M f) v_i.
/// t = 0 returns f unchanged; negative t is rejected.
Eigen::VectorXd apply_semigroup(const EigenBasis& basis,
                                const Eigen::VectorXd& mass, double t,
                                const Eigen::VectorXd& f);

/// Lowest ell=0 eigenpair, sign-fixed positive and M-normalized.
struct GroundState {
  double lambda1 = 0.0;       // smallest eigenvalue of -A (so lambda_0 = -lambda1)
  Eigen::VectorXd psi0;       // strictly positive at all nodes
};

/// Extracts the ground state. The far tail of the eigenvector (below 1e-6 of
/// peak) is rebuilt by a backward three-term recurrence from the Dirichlet
/// boundary, which tracks the decaying solution with relative accuracy where
/// the dense solve only delivers absolute accuracy.
GroundState ground_state(const EigenBasis& basis, const ModeOperator& op);

/// Zonal harmonic kernels Z_0(c)..Z_lmax(c) on S^{N-1}, normalized so that
/// k(t,x,y) = sum_ell k_ell(t,|x|,|y|) Z_ell(cos gamma). For N=3 this is
/// (2 ell + 1)/(4 pi) P_ell(c).
std::vector<double> zonal_harmonics(int n, int lmax, double c);

/// Lazily solved family of mode bases sharing one grid and parameter set.
/// Optionally backed by an on-disk cache keyed by a content hash of
/// (code version, model, grid, ell).
class ModeBasisSet {
 public:
  ModeBasisSet(const ModelParams& params, const RadialGrid& grid,
               std::string cache_dir = {});

  const ModeOperator& op(int ell) const;
  const EigenBasis& basis(int ell) const;
  const ModelParams& params() const { return params_; }
  const RadialGrid& grid() const { return grid_; }

  /// Number of eigensolves served from the disk cache.
  int cache_hits() const { return cache_hits_; }
  int solves() const { return solves_; }

  /// Every basis solved (or loaded) so far, keyed by ell.
  const std::map<int, EigenBasis>& solved() const { return bases_; }

 private:
  ModelParams params_;
  RadialGrid grid_;
  std::string cache_dir_;
  mutable std::map<int, ModeOperator> ops_;
  mutable std::map<int, EigenBasis> bases_;
  mutable int cache_hits_ = 0;
  mutable int solves_ = 0;
};

/// Assembled kernel value at a point pair given by radii and angle.
struct KernelEvaluation {
  double t = 0.0;
  double rx = 0.0, ry = 0.0, cos_gamma = 1.0;
  double value_kmu = 0.0;
  double value_k = 0.0;  // k = k_mu / (1+|y|^alpha)
  double tail_bound = 0.0;
  bool resolved = true;  // tail_bound <= 1e-6 * |value_kmu|
};

/// Mode-ell kernel at arbitrary radii via linear interpolation of node
/// values; eigenvalues are shifted by `shift` (used to factor out the
/// long-time decay e^{-lambda_1 t} without underflow).
double mode_kernel_value(const EigenBasis& basis, const RadialGrid& grid,
                         double t, double r1, double r2, double shift = 0.0);

/// Zonal synthesis k_mu(t,x,y) = sum_ell k_ell(t,|x|,|y|) Z_ell(cos gamma),
/// truncated at l_max. Beyond l_max, |k_ell| Z_ell(1) is accumulated into the
/// tail bound until three consecutive terms fall below 1e-12 of the partial
/// sum (solving further modes on demand).
KernelEvaluation assemble_kernel(const ModeBasisSet& bases, double t, double rx,
                                 double ry, double cos_gamma, int l_max,
                                 double shift = 0.0);

}  // namespace degen
