#pragma once

// Fundamental solutions and their derivatives.
//
//   Phi_k    = (i/4) H0(k r)            Helmholtz, (Delta + k^2) Phi = -delta
//   Phi_ik   = (1/2pi) K0(k r)          modified,  (Delta - k^2) Phi = -delta
//   Phi_0    = -(1/2pi) ln r            Laplace (kernel of S_0)
//   G_k      = (i/8k^2)(H0(kr) + (2i/pi) K0(kr))     biharmonic, d = 2
//            = (e^{ikr} - e^{-kr}) / (8 pi k^2 r)    biharmonic, d = 3
//
// G_k splits as (Delta + k^2) G_k = -Phi_ik and (Delta - k^2) G_k = -Phi_k.
// The jump constant Gamma(d/2)/(2 pi^{d/2}) of the representation formula is
// the leading coefficient of d_n Delta G_k at the source; it is not needed at
// runtime since the representation check works on boundary traces.

#include <utility>

#include "biharm/common.hpp"

namespace biharm {

enum class Branch { Helmholtz, Modified, Laplace };

/// k > 0 together with the branch selecting which fundamental solution is meant.
struct WaveNumber {
  double k = 1.0;
  Branch branch = Branch::Helmholtz;

  static WaveNumber helmholtz(double k) { return {k, Branch::Helmholtz}; }
  static WaveNumber modified(double k) { return {k, Branch::Modified}; }
  static WaveNumber laplace() { return {0.0, Branch::Laplace}; }
};

/// Phi(r) and its first two radial derivatives.
struct RadialKernel {
  Complex value;
  Complex d1;
  Complex d2;
};

inline constexpr double kCoincidenceDistance = 1e-14;

RadialKernel radial(const WaveNumber& b, double r);

Complex phi(const WaveNumber& b, const Vec2& x, const Vec2& y);
/// Gradient of Phi(x, y) with respect to y.
Vec2c grad_phi_y(const WaveNumber& b, const Vec2& x, const Vec2& y);
/// d Phi(x, y) / d n(y).
Complex dphi_dn(const WaveNumber& b, const Vec2& x, const Vec2& y, const Vec2& ny);
/// d^2 Phi(x, y) / d n(x) d n(y); with nx an arbitrary unit vector this is a
/// directional x-derivative of the double-layer kernel.
Complex d2phi_dnxdny(const WaveNumber& b, const Vec2& x, const Vec2& y, const Vec2& nx, const Vec2& ny);

/// Same as d2phi_dnxdny but from precomputed radial derivatives and d = x - y.
inline Complex mixed_normal_derivative(const RadialKernel& rk, const Vec2& d, double r, const Vec2& nx,
                                       const Vec2& ny) {
  const double a = nx.dot(d);
  const double bb = ny.dot(d);
  const double r2 = r * r;
  return -rk.d2 * (a * bb / r2) - rk.d1 * (nx.dot(ny) / r) + rk.d1 * (a * bb / (r2 * r));
}

/// Biharmonic fundamental solution and radial derivatives of G and Delta G.
struct BiharmRadial {
  Complex g;       ///< G_k(r)
  Complex dg;      ///< dG/dr
  Complex lap;     ///< Delta G_k(r)
  Complex dlap;    ///< d(Delta G)/dr
};

/// Value at r >= 0 (continuous at 0); dimension 2 or 3.
Complex biharm_g(double k, double r, int dim = 2);
/// Gradient with respect to x of G_k(|x - y|); x != y.
Eigen::VectorXcd biharm_grad_g(double k, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
/// Delta G_k(r), r > 0.
Complex biharm_lap_g(double k, double r, int dim = 2);
/// All radial quantities, r > 0.
BiharmRadial biharm_radial(double k, double r, int dim = 2);

/// Far-field kernel pair (d/dn(y) e^{-ik xhat.y}, e^{-ik xhat.y}) times
/// i e^{-i(d-1)pi/4} k^{(d-3)/2} / (2 (2pi)^{(d-1)/2}).
std::pair<Complex, Complex> ff_kernel_minus(double k, const Vec2& xhat, const Vec2& y, const Vec2& ny);
/// Far-field kernel pair (d/dn(y) e^{k xhat.y}, e^{k xhat.y}) times
/// k^{(d-3)/2} / (2 (2pi)^{(d-1)/2}). Throws std::overflow_error when k xhat.y > 600.
std::pair<Complex, Complex> ff_kernel_plus(double k, const Vec2& xhat, const Vec2& y, const Vec2& ny);

Complex ff_prefactor_minus(double k, int dim = 2);
double ff_prefactor_plus(double k, int dim = 2);

inline constexpr double kFarFieldExponentLimit = 600.0;

}  // namespace biharm
