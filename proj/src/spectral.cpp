#include "degenkernel/spectral.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace degen {

double EigenBasis::resolvable_t_min() const {
  return std::log(1e12) / eigenvalues[size() - 1];
}

EigenBasis solve_mode(const ModeOperator& op, bool with_vectors) {
  const int m = op.grid.size();
  const Eigen::VectorXd inv_sqrt_mass = op.mass.cwiseSqrt().cwiseInverse();

  // Diagonal similarity H = D K D with D = M^{-1/2}; then K v = lambda M v
  // becomes the standard problem H z = lambda z with v = D z.
  std::vector<double> diag(m), off(m - 1);
  for (int j = 0; j < m; ++j) diag[j] = op.stiff_diag[j] / op.mass[j];
  for (int j = 0; j + 1 < m; ++j)
    off[j] = op.stiff_off[j] * inv_sqrt_mass[j] * inv_sqrt_mass[j + 1];

  EigenBasis basis;
  basis.ell = op.ell;
  basis.eigenvalues.resize(m);
  if (with_vectors) {
    basis.eigenvectors.resize(m, m);
    const int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', m, diag.data(),
                                    off.data(), basis.eigenvectors.data(), m);
    if (info != 0)
      throw std::runtime_error("solve_mode: dstevd failed, info=" +
                               std::to_string(info) + ", ell=" +
                               std::to_string(op.ell) + ", m=" + std::to_string(m));
    basis.eigenvectors.array().colwise() *= inv_sqrt_mass.array();
  } else {
    const int info =
        LAPACKE_dstevd(LAPACK_COL_MAJOR, 'N', m, diag.data(), off.data(), nullptr, m);
    if (info != 0)
      throw std::runtime_error("solve_mode: dstevd (values) failed, info=" +
                               std::to_string(info));
  }
  for (int j = 0; j < m; ++j) basis.eigenvalues[j] = diag[j];

  if (with_vectors) {
    // Spot-check residuals and M-orthonormality on a few pairs; the full
    // Gram matrix is checked at small m in the test suite.
    const double lam_max = basis.eigenvalues[m - 1];
    const std::vector<int> probe = {0, 1, m / 2, m - 2, m - 1};
    for (int i : probe) {
      const Eigen::VectorXd v = basis.eigenvectors.col(i);
      const double res =
          (op.apply_stiffness(v) - basis.eigenvalues[i] * op.mass.cwiseProduct(v))
              .norm();
      basis.residual_bound = std::max(basis.residual_bound, res);
      for (int j : probe) {
        const double g = op.mass_inner(v, basis.eigenvectors.col(j));
        basis.orthonormality_error = std::max(
            basis.orthonormality_error, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    }
    if (basis.residual_bound > 1e-8 * lam_max)
      throw std::runtime_error("solve_mode: eigen-residual exceeds tolerance");
    if (basis.orthonormality_error > 1e-10)
      throw std::runtime_error("solve_mode: M-orthonormality lost");
  }
  return basis;
}

double kmu_mode(const EigenBasis& basis, double t, int a, int b) {
  if (!(t > 0.0)) throw std::invalid_argument("kmu_mode: t must be > 0");
  const int m = basis.size();
  const double lam1 = basis.eigenvalues[0];
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double rel = (basis.eigenvalues[i] - lam1) * t;
    if (rel > 37.0 * M_LN10) break;  // e^{-rel} < 1e-16 relative
    sum += std::exp(-basis.eigenvalues[i] * t) * basis.eigenvectors(a, i) *
           basis.eigenvectors(b, i);
  }
  return sum;
}

Eigen::VectorXd apply_semigroup(const EigenBasis& basis,
                                const Eigen::VectorXd& mass, double t,
                                const Eigen::VectorXd& f) {
  if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be >= 0");
  if (t == 0.0) return f;
  const Eigen::VectorXd coeff =
      basis.eigenvectors.transpose() * mass.cwiseProduct(f);
  const Eigen::VectorXd decay =
      (-basis.eigenvalues.array() * t).exp() * coeff.array();
  return basis.eigenvectors * decay;
}

GroundState ground_state(const EigenBasis& basis, const ModeOperator& op) {
  if (basis.ell != 0)
    throw std::invalid_argument("ground_state: needs the ell=0 basis");
  const int m = basis.size();
  const double lam1 = basis.eigenvalues[0];
  Eigen::VectorXd v = basis.eigenvectors.col(0);

  int peak = 0;
  v.cwiseAbs().maxCoeff(&peak);
  if (v[peak] < 0.0) v = -v;
  const double vpeak = v[peak];

  // First node beyond the peak where the dense solve's absolute accuracy
  // stops being enough relative accuracy for the exponential tail.
  int split = -1;
  for (int j = peak; j < m; ++j) {
    if (std::abs(v[j]) < 1e-6 * vpeak) {
      split = j;
      break;
    }
  }

  if (split >= 0 && split < m - 2) {
    // Backward recurrence of (K - lambda_1 M) u = 0 from the Dirichlet end:
    // the solution decaying in r grows inward, so this direction is stable.
    Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
    u[m - 1] = 1.0;
    double ghost = 0.0;  // boundary value beyond the last node
    for (int j = m - 1; j > split; --j) {
      const double upper = (j + 1 < m) ? u[j + 1] : ghost;
      const double center = (op.stiff_diag[j] - lam1 * op.mass[j]) * u[j];
      const double off_up = (j + 1 < m) ? op.stiff_off[j] * upper : 0.0;
      u[j - 1] = -(center + off_up) / op.stiff_off[j - 1];
      if (std::abs(u[j - 1]) > 1e250) {
        u.tail(m - j + 1) *= 1e-200;
        u[j - 1] *= 1e-200;
      }
    }
    const double scale = v[split] / u[split];
    for (int j = split + 1; j < m; ++j) v[j] = scale * u[j];
  }

  if ((v.array() <= 0.0).any())
    throw std::runtime_error("ground_state: eigenvector not positive");

  v /= std::sqrt(op.mass_inner(v, v));
  return {lam1, v};
}

std::vector<double> zonal_harmonics(int n, int lmax, double c) {
  // Gegenbauer recurrence with lambda = (N-2)/2; for N=3 this reduces to
  // Legendre polynomials and Z_ell = (2 ell + 1)/(4 pi) P_ell.
  const double lam = (n - 2) / 2.0;
  const double omega = sphere_surface_area(n);
  std::vector<double> z(lmax + 1);
  double c_prev2 = 1.0;
  double c_prev1 = 2.0 * lam * c;
  for (int ell = 0; ell <= lmax; ++ell) {
    double geg;
    if (ell == 0)
      geg = 1.0;
    else if (ell == 1)
      geg = c_prev1;
    else {
      geg = (2.0 * (ell + lam - 1.0) * c * c_prev1 -
             (ell + 2.0 * lam - 2.0) * c_prev2) /
            ell;
      c_prev2 = c_prev1;
      c_prev1 = geg;
    }
    z[ell] = (2.0 * ell + n - 2.0) / (n - 2.0) * geg / omega;
  }
  return z;
}

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

constexpr const char* kCodeVersion = "degenkernel-1.0";

std::string cache_key(const ModelParams& p, const RadialGrid& g, int ell) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s|%d|%.17g|%.17g|%.17g|%d|%.17g|%d",
                kCodeVersion, p.dim, p.alpha, p.beta, g.r_max, g.size(),
                g.grading, ell);
  char name[32];
  std::snprintf(name, sizeof name, "%016llx",
                static_cast<unsigned long long>(fnv1a(buf)));
  return name;
}

bool load_basis(const std::string& path, int m, EigenBasis* basis) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  int32_t fm = 0, fell = 0;
  in.read(reinterpret_cast<char*>(&fm), sizeof fm);
  in.read(reinterpret_cast<char*>(&fell), sizeof fell);
  if (!in || fm != m) return false;
  basis->ell = fell;
  basis->eigenvalues.resize(m);
  basis->eigenvectors.resize(m, m);
  in.read(reinterpret_cast<char*>(basis->eigenvalues.data()), m * sizeof(double));
  in.read(reinterpret_cast<char*>(basis->eigenvectors.data()),
          static_cast<std::streamsize>(m) * m * sizeof(double));
  in.read(reinterpret_cast<char*>(&basis->residual_bound), sizeof(double));
  in.read(reinterpret_cast<char*>(&basis->orthonormality_error), sizeof(double));
  return static_cast<bool>(in);
}

void store_basis(const std::string& path, const EigenBasis& basis) {
  const int32_t m = basis.size();
  const int32_t ell = basis.ell;
  std::ofstream out(path + ".tmp", std::ios::binary);
  if (!out) return;
  out.write(reinterpret_cast<const char*>(&m), sizeof m);
  out.write(reinterpret_cast<const char*>(&ell), sizeof ell);
  out.write(reinterpret_cast<const char*>(basis.eigenvalues.data()),
            m * sizeof(double));
  out.write(reinterpret_cast<const char*>(basis.eigenvectors.data()),
            static_cast<std::streamsize>(m) * m * sizeof(double));
  out.write(reinterpret_cast<const char*>(&basis.residual_bound), sizeof(double));
  out.write(reinterpret_cast<const char*>(&basis.orthonormality_error),
            sizeof(double));
  out.close();
  std::filesystem::rename(path + ".tmp", path);
}

}  // namespace

ModeBasisSet::ModeBasisSet(const ModelParams& params, const RadialGrid& grid,
                           std::string cache_dir)
    : params_(params), grid_(grid), cache_dir_(std::move(cache_dir)) {
  if (!cache_dir_.empty()) std::filesystem::create_directories(cache_dir_);
}

const ModeOperator& ModeBasisSet::op(int ell) const {
  auto it = ops_.find(ell);
  if (it == ops_.end())
    it = ops_.emplace(ell, assemble_mode(params_, grid_, ell)).first;
  return it->second;
}

const EigenBasis& ModeBasisSet::basis(int ell) const {
  auto it = bases_.find(ell);
  if (it != bases_.end()) return it->second;

  const ModeOperator& mode_op = op(ell);
  std::string path;
  if (!cache_dir_.empty())
    path = cache_dir_ + "/" + cache_key(params_, grid_, ell) + ".eig";

  EigenBasis basis;
  if (!path.empty() && load_basis(path, grid_.size(), &basis)) {
    ++cache_hits_;
  } else {
    basis = solve_mode(mode_op);
    ++solves_;
    if (!path.empty()) store_basis(path, basis);
  }
  return bases_.emplace(ell, std::move(basis)).first->second;
}

namespace {

struct InterpStencil {
  int i0 = 0, i1 = -1;
  double w0 = 0.0, w1 = 0.0;
};

InterpStencil stencil(const RadialGrid& grid, int ell, double r) {
  const auto loc = grid.locate(r);
  InterpStencil st;
  if (loc.beyond_last) {
    st.i0 = loc.index;
    st.w0 = 1.0 - loc.weight;
  } else if (r <= grid.nodes[0]) {
    st.i0 = 0;
    // ell >= 1 modes vanish at the origin; ell = 0 is flat (zero flux).
    st.w0 = (ell == 0) ? 1.0 : r / grid.nodes[0];
  } else {
    st.i0 = loc.index;
    st.i1 = loc.index + 1;
    st.w0 = 1.0 - loc.weight;
    st.w1 = loc.weight;
  }
  return st;
}

}  // namespace

double mode_kernel_value(const EigenBasis& basis, const RadialGrid& grid,
                         double t, double r1, double r2, double shift) {
  if (!(t > 0.0)) throw std::invalid_argument("mode_kernel_value: t must be > 0");
  const InterpStencil s1 = stencil(grid, basis.ell, r1);
  const InterpStencil s2 = stencil(grid, basis.ell, r2);
  const int m = basis.size();
  const double lam1 = basis.eigenvalues[0];
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    if ((basis.eigenvalues[i] - lam1) * t > 37.0 * M_LN10) break;
    double p = s1.w0 * basis.eigenvectors(s1.i0, i);
    if (s1.i1 >= 0) p += s1.w1 * basis.eigenvectors(s1.i1, i);
    double q = s2.w0 * basis.eigenvectors(s2.i0, i);
    if (s2.i1 >= 0) q += s2.w1 * basis.eigenvectors(s2.i1, i);
    sum += std::exp(-(basis.eigenvalues[i] - shift) * t) * p * q;
  }
  return sum;
}

KernelEvaluation assemble_kernel(const ModeBasisSet& bases, double t, double rx,
                                 double ry, double cos_gamma, int l_max,
                                 double shift) {
  if (!(t > 0.0)) throw std::invalid_argument("assemble_kernel: t must be > 0");
  const int n = bases.params().dim;
  const int hard_cap = l_max + 48;
  const std::vector<double> z = zonal_harmonics(n, l_max, cos_gamma);
  const std::vector<double> z1 = zonal_harmonics(n, hard_cap, 1.0);

  KernelEvaluation ev;
  ev.t = t;
  ev.rx = rx;
  ev.ry = ry;
  ev.cos_gamma = cos_gamma;

  double kmu = 0.0;
  for (int ell = 0; ell <= l_max; ++ell)
    kmu += mode_kernel_value(bases.basis(ell), bases.grid(), t, rx, ry, shift) *
           z[ell];

  double tail = 0.0;
  int consecutive_small = 0;
  for (int ell = l_max + 1; ell <= hard_cap; ++ell) {
    const double term =
        std::abs(mode_kernel_value(bases.basis(ell), bases.grid(), t, rx, ry,
                                   shift)) *
        z1[ell];
    tail += term;
    if (term < 1e-12 * std::abs(kmu)) {
      if (++consecutive_small >= 3) break;
    } else {
      consecutive_small = 0;
    }
  }

  ev.value_kmu = kmu;
  ev.value_k = kmu / (1.0 + std::pow(ry, bases.params().alpha));
  ev.tail_bound = tail;
  ev.resolved = tail <= 1e-6 * std::abs(kmu);
  return ev;
}

}  // namespace degen
