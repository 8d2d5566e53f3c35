#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "degenkernel/quadrature.hpp"

namespace degen {

/// Parameters of the operator A = (1+|x|^alpha) Laplacian - |x|^beta on R^N.
/// Requires N >= 3, alpha > 2, beta > alpha - 2.
struct ModelParams {
  int dim;       // N
  double alpha;  // diffusion weight exponent
  double beta;   // potential exponent

  ModelParams(int n, double a, double b) : dim(n), alpha(a), beta(b) {
    if (n < 3) throw std::invalid_argument("ModelParams: N must be >= 3");
    if (!(a > 2.0)) throw std::invalid_argument("ModelParams: alpha must be > 2");
    if (!(b > a - 2.0))
      throw std::invalid_argument("ModelParams: beta must be > alpha - 2");
  }

  double diffusion(double r) const { return 1.0 + std::pow(r, alpha); }
  double potential(double r) const { return std::pow(r, beta); }
};

/// Radial density of the weighted measure d(mu) = (1+|x|^alpha)^{-1} dx.
struct WeightedMeasure {
  ModelParams params;

  explicit WeightedMeasure(const ModelParams& p) : params(p) {}

  /// In (0,1], equals 1 at r=0, strictly decreasing.
  double density(double r) const { return 1.0 / (1.0 + std::pow(r, params.alpha)); }
  double radial_volume(double r) const { return std::pow(r, params.dim - 1); }
};

/// The weight (1+r^alpha)^{gamma/alpha} with
///   gamma = alpha*(2-theta)/4 + (theta-N)/2,   theta >= N.
/// Construction enforces gamma < (alpha-N)/2 and 2*gamma - alpha < -N,
/// so the weight is decreasing and square-integrable against mu.
struct ThetaWeight {
  double theta;
  double gamma;
  double exponent;  // gamma / alpha

  ThetaWeight(const ModelParams& p, double th)
      : theta(th),
        gamma(p.alpha * (2.0 - th) / 4.0 + (th - p.dim) / 2.0),
        exponent(gamma / p.alpha) {
    if (!(th >= p.dim))
      throw std::invalid_argument("ThetaWeight: theta must be >= N");
    if (!(gamma < (p.alpha - p.dim) / 2.0))
      throw std::invalid_argument("ThetaWeight: gamma must be < (alpha-N)/2");
    if (!(2.0 * gamma - p.alpha < -p.dim))
      throw std::invalid_argument("ThetaWeight: weight not in L^2_mu");
  }
};

/// phi_theta(r) = (1+r^alpha)^{(2-theta)/4 + (theta-N)/(2 alpha)}.
inline double phi_theta(const ThetaWeight& tw, const ModelParams& p, double r) {
  return std::pow(1.0 + std::pow(r, p.alpha), tw.exponent);
}

/// Rate function psi(t) = t^{1+2/theta}; psi(t)/t is non-decreasing.
inline double rate_psi(double theta, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("rate_psi: t must be > 0");
  return std::pow(t, 1.0 + 2.0 / theta);
}

/// K(t) = sqrt(U^{-1}(t)) with U(t) = int_t^inf du/psi(u) = (theta/2) t^{-2/theta},
/// giving K(t) = (theta/(2t))^{theta/4}.
inline double ultracontractivity_K(double theta, double t) {
  if (!(t > 0.0))
    throw std::invalid_argument("ultracontractivity_K: t must be > 0");
  return std::pow(theta / (2.0 * t), theta / 4.0);
}

/// Kernel prefactor K(2t)^2 = (theta/(4t))^{theta/2}.
inline double kernel_prefactor(double theta, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_prefactor: t must be > 0");
  return std::pow(theta / (4.0 * t), theta / 2.0);
}

/// Drift ratio A phi / phi for phi = (1+r^alpha)^{gamma/alpha}:
///   r^{alpha-2} [ gamma (gamma-alpha) r^alpha/(1+r^alpha)
///               + gamma (alpha-2+N) ] - r^beta.
/// Returns the limit 0 at r = 0.
inline double lyapunov_drift(const ModelParams& p, double gamma, double r) {
  if (r == 0.0) return 0.0;
  const double ra = std::pow(r, p.alpha);
  const double bracket =
      gamma * (gamma - p.alpha) * ra / (1.0 + ra) + gamma * (p.alpha - 2.0 + p.dim);
  return std::pow(r, p.alpha - 2.0) * bracket - std::pow(r, p.beta);
}

/// b = (beta - alpha + 2) / (beta + alpha - 2), in (0,1).
inline double b_exponent(const ModelParams& p) {
  return (p.beta - p.alpha + 2.0) / (p.beta + p.alpha - 2.0);
}

/// Asymptotic profile of the ground state for r >= 1:
///   r^{-(N-1)/2 - (beta-alpha)/4} exp(-int_1^r s^{beta/2} (1+s^alpha)^{-1/2} ds).
inline double groundstate_asymptotic(const ModelParams& p, double r) {
  if (!(r >= 1.0))
    throw std::invalid_argument("groundstate_asymptotic: r must be >= 1");
  const double pre_exp = -(p.dim - 1) / 2.0 - (p.beta - p.alpha) / 4.0;
  const double inner = integrate(
      [&p](double s) {
        return std::pow(s, p.beta / 2.0) / std::sqrt(1.0 + std::pow(s, p.alpha));
      },
      1.0, r, 1e-8);
  return std::pow(r, pre_exp) * std::exp(-inner);
}

/// Surface area of the unit sphere S^{N-1}.
inline double sphere_surface_area(int n) {
  return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
}

}  // namespace degen
