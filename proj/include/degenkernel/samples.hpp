#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "degenkernel/grid.hpp"
#include "degenkernel/spectral.hpp"

namespace degen {

/// A radial test function in the form domain, evaluable on any grid.
/// Gaussian bumps and hats are analytic; eigen-mixtures are pinned to the
/// base grid as piecewise-linear profiles so that refinement compares the
/// same function on both meshes.
struct TestFunction {
  enum class Kind { gaussian, hat, eigen_mixture };
  Kind kind = Kind::gaussian;

  // gaussian: exp(-(r-center)^2 / width^2)
  double center = 0.0, width = 1.0;
  // hat: tent with peak 1 at apex, support [left, right]
  double left = 0.0, apex = 0.0, right = 0.0;
  // eigen_mixture: nodal profile on the base grid
  std::shared_ptr<const Eigen::VectorXd> base_nodes;
  std::shared_ptr<const Eigen::VectorXd> base_values;
  double base_r_max = 0.0;

  double operator()(double r) const;
  Eigen::VectorXd values_on(const RadialGrid& grid) const;
  std::string describe() const;
};

/// Deterministic sample generator (seeded; fixed across platforms).
/// Cycles gaussian / hat / eigen-mixture; mixtures use the first 10
/// eigenvectors of basis0 with standard normal coefficients and are skipped
/// when basis0 is null.
std::vector<TestFunction> make_test_functions(const RadialGrid& base_grid,
                                              const EigenBasis* basis0,
                                              int n_samples, std::uint64_t seed);

}  // namespace degen
