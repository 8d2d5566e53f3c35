#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace degen {

/// Adaptive Gauss(7)/Kronrod(15) quadrature on [a,b].
/// Bisects until the embedded error estimate of every subinterval is below
/// rel_tol * |integral|. Throws on failure to converge within max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, int max_depth = 48);

namespace detail {

// 15-point Kronrod nodes/weights on [-1,1] plus the embedded 7-point Gauss
// weights (odd Kronrod positions).
inline constexpr double kronrod_nodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double kronrod_weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double gauss_weights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct GkResult {
  double value;
  double error;
};

inline GkResult gauss_kronrod_15(const std::function<double(double)>& f,
                                 double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double fx = f(mid + half * kronrod_nodes[i]);
    k += kronrod_weights[i] * fx;
    if (i % 2 == 1) g += gauss_weights[i / 2] * fx;
  }
  return {k * half, std::abs(k - g) * half};
}

inline double integrate_rec(const std::function<double(double)>& f, double a,
                            double b, double abs_tol, int depth,
                            int max_depth) {
  const GkResult r = gauss_kronrod_15(f, a, b);
  if (r.error <= abs_tol || depth >= max_depth) {
    if (depth >= max_depth && r.error > abs_tol)
      throw std::runtime_error("integrate: adaptive quadrature did not converge");
    return r.value;
  }
  const double mid = 0.5 * (a + b);
  return integrate_rec(f, a, mid, 0.5 * abs_tol, depth + 1, max_depth) +
         integrate_rec(f, mid, b, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, int max_depth) {
  if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
  if (a == b) return 0.0;
  const detail::GkResult coarse = detail::gauss_kronrod_15(f, a, b);
  const double scale = std::max(std::abs(coarse.value), 1e-300);
  return detail::integrate_rec(f, a, b, rel_tol * scale, 0, max_depth);
}

}  // namespace degen
