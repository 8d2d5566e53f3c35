#include "degenkernel/samples.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace degen {

namespace {

// Hand-rolled distributions on top of mt19937_64: std::*_distribution is
// implementation-defined, and reports must reproduce bit-for-bit per seed.
double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

double normal(std::mt19937_64& rng) {
  // Box-Muller, one sample per call.
  const double u1 = std::max(uniform01(rng), 1e-300);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double interp_profile(const Eigen::VectorXd& nodes, const Eigen::VectorXd& vals,
                      double r_max, double r) {
  const int m = static_cast<int>(nodes.size());
  if (r <= nodes[0]) return vals[0];
  if (r >= r_max) return 0.0;
  if (r >= nodes[m - 1]) {
    const double w = (r - nodes[m - 1]) / (r_max - nodes[m - 1]);
    return (1.0 - w) * vals[m - 1];
  }
  int lo = 0, hi = m - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (nodes[mid] <= r ? lo : hi) = mid;
  }
  const double w = (r - nodes[lo]) / (nodes[lo + 1] - nodes[lo]);
  return (1.0 - w) * vals[lo] + w * vals[lo + 1];
}

}  // namespace

double TestFunction::operator()(double r) const {
  switch (kind) {
    case Kind::gaussian: {
      const double z = (r - center) / width;
      return std::exp(-z * z);
    }
    case Kind::hat: {
      if (r <= left || r >= right) return 0.0;
      return r <= apex ? (r - left) / (apex - left) : (right - r) / (right - apex);
    }
    case Kind::eigen_mixture:
      return interp_profile(*base_nodes, *base_values, base_r_max, r);
  }
  return 0.0;
}

Eigen::VectorXd TestFunction::values_on(const RadialGrid& grid) const {
  Eigen::VectorXd u(grid.size());
  for (int j = 0; j < grid.size(); ++j) u[j] = (*this)(grid.nodes[j]);
  return u;
}

std::string TestFunction::describe() const {
  switch (kind) {
    case Kind::gaussian:
      return "gaussian(c=" + std::to_string(center) + ",w=" + std::to_string(width) + ")";
    case Kind::hat:
      return "hat(apex=" + std::to_string(apex) + ")";
    case Kind::eigen_mixture:
      return "eigen_mixture";
  }
  return "?";
}

std::vector<TestFunction> make_test_functions(const RadialGrid& base_grid,
                                              const EigenBasis* basis0,
                                              int n_samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TestFunction> out;
  out.reserve(n_samples);
  const int m = base_grid.size();
  const auto nodes = std::make_shared<Eigen::VectorXd>(base_grid.nodes);

  for (int i = 0; i < n_samples; ++i) {
    const int cycle = i % 3;
    TestFunction f;
    if (cycle == 0 || (cycle == 2 && basis0 == nullptr)) {
      f.kind = TestFunction::Kind::gaussian;
      f.center = uniform(rng, 0.0, base_grid.r_max / 2.0);
      f.width = std::exp(uniform(rng, std::log(0.05), std::log(2.0)));
    } else if (cycle == 1) {
      f.kind = TestFunction::Kind::hat;
      const int c = 1 + static_cast<int>(uniform01(rng) * (m - 2));
      f.left = base_grid.nodes[c - 1];
      f.apex = base_grid.nodes[c];
      f.right = base_grid.nodes[c + 1];
    } else {
      f.kind = TestFunction::Kind::eigen_mixture;
      const int n_modes = std::min(10, basis0->size());
      Eigen::VectorXd profile = Eigen::VectorXd::Zero(m);
      for (int k = 0; k < n_modes; ++k)
        profile += normal(rng) * basis0->eigenvectors.col(k);
      f.base_nodes = nodes;
      f.base_values = std::make_shared<Eigen::VectorXd>(std::move(profile));
      f.base_r_max = base_grid.r_max;
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace degen
