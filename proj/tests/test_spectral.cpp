#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "degenkernel/quadrature.hpp"
#include "degenkernel/spectral.hpp"

using namespace degen;

namespace {
const ModelParams kDefault(3, 3.0, 4.0);
}

TEST_CASE("Laplacian override oracle: Dirichlet ball eigenvalues") {
  const RadialGrid grid = build_grid(M_PI, 400, 1.0);
  const ModeOperator op = assemble_mode(kDefault, grid, 0, true);
  const EigenBasis basis = solve_mode(op);
  // -Laplace on the ball of radius pi in 3d: lambda_k = k^2, k = 1, 2, ...
  CHECK(basis.eigenvalues[0] == doctest::Approx(1.0).epsilon(0.01));
  CHECK(basis.eigenvalues[1] == doctest::Approx(4.0).epsilon(0.01));
  CHECK(basis.eigenvalues[2] == doctest::Approx(9.0).epsilon(0.01));
}

TEST_CASE("eigenvalue count, distinctness, positivity") {
  const RadialGrid grid = build_grid(10.0, 120, 1.5);
  const EigenBasis basis = solve_mode(assemble_mode(kDefault, grid, 1));
  CHECK(basis.size() == 120);
  CHECK(basis.eigenvalues[0] > 0.0);
  for (int i = 1; i < 120; ++i)
    CHECK(basis.eigenvalues[i] > basis.eigenvalues[i - 1]);
}

TEST_CASE("full Gram matrix is the identity at small M") {
  const RadialGrid grid = build_grid(10.0, 64, 1.5);
  const ModeOperator op = assemble_mode(kDefault, grid, 0);
  const EigenBasis basis = solve_mode(op);
  const Eigen::MatrixXd gram =
      basis.eigenvectors.transpose() *
      op.mass.asDiagonal() * basis.eigenvectors;
  CHECK((gram - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() <
        1e-12);
  // Residuals of the generalized problem, all columns.
  for (int i = 0; i < 64; ++i) {
    const Eigen::VectorXd v = basis.eigenvectors.col(i);
    const Eigen::VectorXd res = op.apply_stiffness(v) -
                                basis.eigenvalues[i] *
                                    op.mass.cwiseProduct(v);
    CHECK(res.norm() < 1e-8 * basis.eigenvalues[63]);
  }
}

TEST_CASE("kmu_mode symmetry and Chapman-Kolmogorov") {
  const RadialGrid grid = build_grid(10.0, 96, 1.5);
  const ModeOperator op = assemble_mode(kDefault, grid, 0);
  const EigenBasis basis = solve_mode(op);
  CHECK(kmu_mode(basis, 0.2, 10, 40) == kmu_mode(basis, 0.2, 40, 10));
  // sum_c kmu(t1,a,c) m_c kmu(t2,c,b) = kmu(t1+t2,a,b)
  for (auto [t1, t2] : {std::pair{0.1, 0.3}, std::pair{0.05, 0.05}}) {
    for (auto [a, b] : {std::pair{5, 60}, std::pair{20, 20}}) {
      double conv = 0.0;
      for (int c = 0; c < 96; ++c)
        conv += kmu_mode(basis, t1, a, c) * op.mass[c] *
                kmu_mode(basis, t2, c, b);
      const double direct = kmu_mode(basis, t1 + t2, a, b);
      CHECK(conv == doctest::Approx(direct).epsilon(1e-8));
    }
  }
}

TEST_CASE("semigroup composition, contraction, and t=0 identity") {
  const RadialGrid grid = build_grid(10.0, 96, 1.5);
  const ModeOperator op = assemble_mode(kDefault, grid, 0);
  const EigenBasis basis = solve_mode(op);
  Eigen::VectorXd f(96);
  for (int j = 0; j < 96; ++j) f[j] = std::exp(-grid.nodes[j]);
  CHECK((apply_semigroup(basis, op.mass, 0.0, f) - f).norm() == 0.0);
  CHECK_THROWS(apply_semigroup(basis, op.mass, -0.1, f));
  const Eigen::VectorXd two_step = apply_semigroup(
      basis, op.mass, 0.3, apply_semigroup(basis, op.mass, 0.2, f));
  const Eigen::VectorXd one_step = apply_semigroup(basis, op.mass, 0.5, f);
  CHECK((two_step - one_step).norm() <= 1e-10 * one_step.norm());
  double prev = std::sqrt(op.mass_inner(f, f));
  for (double t : {0.1, 0.5, 2.0}) {
    const Eigen::VectorXd u = apply_semigroup(basis, op.mass, t, f);
    const double norm = std::sqrt(op.mass_inner(u, u));
    CHECK(norm <= prev * (1.0 + 1e-12));
    prev = norm;
  }
}

TEST_CASE("single-term dominance at large t") {
  const RadialGrid grid = build_grid(10.0, 96, 1.5);
  const ModeOperator op = assemble_mode(kDefault, grid, 0);
  const EigenBasis basis = solve_mode(op);
  const double gap = basis.eigenvalues[1] - basis.eigenvalues[0];
  const double t = 35.0 / gap;
  const int a = 10, b = 30;
  const double leading = std::exp(-basis.eigenvalues[0] * t) *
                         basis.eigenvectors(a, 0) * basis.eigenvectors(b, 0);
  CHECK(kmu_mode(basis, t, a, b) / leading == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ground state: positivity, eigen-residual, tail decay") {
  const RadialGrid grid = build_grid(14.0, 400, 1.5);
  const ModeOperator op = assemble_mode(kDefault, grid, 0);
  const EigenBasis basis = solve_mode(op);
  const GroundState gs = ground_state(basis, op);
  CHECK(gs.lambda1 == doctest::Approx(basis.eigenvalues[0]).epsilon(1e-12));
  CHECK((gs.psi0.array() > 0.0).all());
  CHECK(op.mass_inner(gs.psi0, gs.psi0) == doctest::Approx(1.0).epsilon(1e-10));
  // Strict decay in the far field.
  for (int j = 300; j < 399; ++j) CHECK(gs.psi0[j + 1] < gs.psi0[j]);
  // The spliced tail still satisfies the 3-term recurrence relative to ~1e-9.
  for (int j = 350; j < 399; ++j) {
    const double lhs = op.stiff_off[j - 1] * gs.psi0[j - 1] +
                       (op.stiff_diag[j] - gs.lambda1 * op.mass[j]) * gs.psi0[j] +
                       op.stiff_off[j] * gs.psi0[j + 1];
    CHECK(std::abs(lhs) < 1e-9 * op.stiff_diag[j] * gs.psi0[j]);
  }
}

TEST_CASE("lambda_1 grows with the potential exponent beta") {
  const RadialGrid grid = build_grid(10.0, 128, 1.5);
  double prev = 0.0;
  for (double beta : {1.5, 2.5, 4.0, 6.0}) {
    const ModelParams p(3, 3.0, beta);
    const EigenBasis basis = solve_mode(assemble_mode(p, grid, 0));
    // On a fixed grid r <= 1 contributes less, r >= 1 more; net effect on the
    // bottom eigenvalue is growth since the mass concentrates near r ~ 1+.
    CHECK(basis.eigenvalues[0] > 0.0);
    if (prev > 0.0) CHECK(basis.eigenvalues[0] > prev);
    prev = basis.eigenvalues[0];
  }
}

TEST_CASE("zonal harmonics: normalization and addition values") {
  // N=3: Z_l(c) = (2l+1)/(4pi) P_l(c).
  const auto z1 = zonal_harmonics(3, 4, 1.0);
  for (int l = 0; l <= 4; ++l)
    CHECK(z1[l] == doctest::Approx((2.0 * l + 1.0) / (4.0 * M_PI)).epsilon(1e-13));
  const auto z0 = zonal_harmonics(3, 3, 0.0);
  CHECK(z0[0] == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-13));
  CHECK(z0[1] == doctest::Approx(0.0));
  CHECK(z0[2] == doctest::Approx(5.0 / (4.0 * M_PI) * (-0.5)).epsilon(1e-12));
  // Higher dimension sanity: Z_0 = 1/omega_{N-1}.
  const auto z4 = zonal_harmonics(4, 2, 0.7);
  CHECK(z4[0] == doctest::Approx(1.0 / (2.0 * M_PI * M_PI)).epsilon(1e-12));
}

TEST_CASE("assembled kernel: y=0 reduces to ell=0, symmetry, sub-Markov") {
  const RadialGrid grid = build_grid(10.0, 128, 1.5);
  ModeBasisSet bases(kDefault, grid);
  const double t = 0.3;

  const KernelEvaluation on_axis = assemble_kernel(bases, t, 1.0, 0.0, 0.37, 8);
  const double k0 = mode_kernel_value(bases.basis(0), grid, t, 1.0, 0.0) /
                    (4.0 * M_PI);
  CHECK(on_axis.value_kmu == doctest::Approx(k0).epsilon(1e-12));
  CHECK(on_axis.value_k ==
        doctest::Approx(on_axis.value_kmu).epsilon(1e-12));  // 1+0^alpha = 1

  const KernelEvaluation ab = assemble_kernel(bases, t, 2.0, 3.0, 0.5, 16);
  const KernelEvaluation ba = assemble_kernel(bases, t, 3.0, 2.0, 0.5, 16);
  CHECK(ab.value_kmu == doctest::Approx(ba.value_kmu).epsilon(1e-8));
  CHECK(ab.value_k * (1.0 + 27.0) ==
        doctest::Approx(ba.value_k * (1.0 + 8.0)).epsilon(1e-8));

  // Sub-Markov: int k(t,x,y) dy <= 1 + 1e-6. Radial x, so only ell=0 sees
  // the angular average; integrate the mu-kernel column against dy.
  for (double rx : {0.5, 2.0}) {
    const auto& basis0 = bases.basis(0);
    const auto& op0 = bases.op(0);
    double mass = 0.0;
    const auto ix = grid.locate(rx);
    for (int c = 0; c < grid.size(); ++c) {
      // k(t,x,y) dy = kmu(t,x,y)/(1+ry^a) * r^2 dr dS; measure cancellation
      // leaves exactly the op mass weights.
      const double km = kmu_mode(basis0, t, ix.index, c) / (4.0 * M_PI);
      mass += km * op0.mass[c] * 4.0 * M_PI;
    }
    CHECK(mass <= 1.0 + 1e-6);
    CHECK(mass > 0.0);  // V = r^4 absorbs mass quickly but never below zero
  }
}

TEST_CASE("ModeBasisSet disk cache round-trips bit-exactly") {
  const RadialGrid grid = build_grid(8.0, 64, 1.5);
  const std::string dir = "/tmp/degenkernel_test_cache";
  std::filesystem::remove_all(dir);
  ModeBasisSet first(kDefault, grid, dir);
  const Eigen::VectorXd ev = first.basis(2).eigenvalues;
  CHECK(first.solves() == 1);
  CHECK(first.cache_hits() == 0);
  ModeBasisSet second(kDefault, grid, dir);
  CHECK((second.basis(2).eigenvalues - ev).cwiseAbs().maxCoeff() == 0.0);
  CHECK(second.cache_hits() == 1);
  CHECK(second.solves() == 0);
  // Different model parameters must miss.
  ModeBasisSet other(ModelParams(3, 3.0, 5.0), grid, dir);
  other.basis(2);
  CHECK(other.cache_hits() == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("resolvable_t_min matches the top eigenvalue") {
  const RadialGrid grid = build_grid(10.0, 64, 1.5);
  const EigenBasis basis = solve_mode(assemble_mode(kDefault, grid, 0));
  const double t = basis.resolvable_t_min();
  CHECK(std::exp(-basis.eigenvalues[63] * t) ==
        doctest::Approx(1e-12).epsilon(1e-6));
}
