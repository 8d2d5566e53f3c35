#pragma once

#include <Eigen/Core>

#include "degenkernel/model.hpp"

namespace degen {

/// Graded radial mesh on (0, r_max): nodes r_j = r_max (j/(M+1))^g, j=1..M,
/// faces at consecutive midpoints with r_{1/2} = r_1/2 and r_{M+1/2} = r_max.
struct RadialGrid {
  Eigen::VectorXd nodes;  // size M, strictly increasing, all < r_max
  Eigen::VectorXd faces;  // size M+1, interleaving the nodes
  double r_max = 0.0;
  double grading = 1.0;

  int size() const { return static_cast<int>(nodes.size()); }

  /// Face-to-face width of cell j.
  double cell_width(int j) const { return faces[j + 1] - faces[j]; }

  /// Index i and weight w such that f(r) ~ (1-w) f(nodes[i]) + w f(nodes[i+1]).
  /// Radii below nodes[0] clamp to i=0, w=0; above the last node they
  /// interpolate linearly to 0 at r_max (Dirichlet truncation).
  struct Interp {
    int index;
    double weight;
    bool beyond_last;  // interpolating toward the zero boundary value
  };
  Interp locate(double r) const;
};

RadialGrid build_grid(double r_max, int m, double g);

/// Per-angular-mode stiffness/mass pair for the radial Sturm-Liouville problem.
/// Stiffness is symmetric tridiagonal with nonpositive off-diagonals; mass is
/// a positive diagonal carrying the weighted measure. The discrete form
/// u^T K u approximates the radial part of
///   int |grad u|^2 dx + int V u^2 dmu   (mode ell),
/// per unit solid angle.
struct ModeOperator {
  int ell = 0;
  Eigen::VectorXd stiff_diag;  // size M
  Eigen::VectorXd stiff_off;   // size M-1, all <= 0
  Eigen::VectorXd mass;        // size M, all > 0
  RadialGrid grid;
  ModelParams params;
  bool laplace_override = false;  // a == 1, V == 0 diagnostic mode

  /// u^T K u.
  double form(const Eigen::VectorXd& u) const;

  /// K u.
  Eigen::VectorXd apply_stiffness(const Eigen::VectorXd& u) const;

  /// u^T M v (the discrete mu-inner product, per unit solid angle).
  double mass_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return u.dot(mass.cwiseProduct(v));
  }
};

/// Finite-volume assembly of mode ell. With laplace_override the measure
/// density and potential are replaced by 1 and 0, exposing the classical
/// Dirichlet Laplacian on the ball for oracle checks.
ModeOperator assemble_mode(const ModelParams& params, const RadialGrid& grid,
                           int ell, bool laplace_override = false);

}  // namespace degen
