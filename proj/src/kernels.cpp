#include "biharm/kernels.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "biharm/specfun.hpp"

namespace biharm {

namespace {

constexpr double kInv2Pi = 1.0 / (2.0 * kPi);

void require_separated(double r) {
  if (!(r >= kCoincidenceDistance)) {
    throw CoincidenceError("kernel evaluated at coincident points (|x - y| = " + std::to_string(r) + ")");
  }
}

void require_dim(int dim) {
  if (dim != 2 && dim != 3) throw DomainError("biharmonic kernel: dimension must be 2 or 3");
}

void require_wavenumber(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wave number must be positive and finite");
}

// Y1(z) + (2/pi) K1(z) for small z; the 1/z poles cancel analytically.
double y1_plus_k1_series(double z) {
  const double q = 0.25 * z * z;
  double term = 1.0;  // (z^2/4)^k / (k! (k+1)!)
  double psi_a = -kEulerGamma;             // psi(k+1)
  double psi_b = 1.0 - kEulerGamma;        // psi(k+2)
  double sum = 0.0;
  for (int k = 0; k < 40; ++k) {
    if (k % 2 == 0) sum += 2.0 * (psi_a + psi_b) * term;
    term *= q / ((k + 1.0) * (k + 2.0));
    psi_a += 1.0 / (k + 1.0);
    psi_b += 1.0 / (k + 2.0);
    if (term < 1e-18) break;
  }
  const double j1 = specfun::bessel_j(1, z);
  const double i1 = specfun::bessel_i(1, z);
  return (2.0 / kPi) * std::log(0.5 * z) * (j1 + i1) - z / (2.0 * kPi) * sum;
}

// (e^{iz} - e^{-z}) / z and its z-derivative by Taylor series, small z.
std::array<Complex, 2> exp_difference_series(double z) {
  Complex value = 0.0;
  Complex deriv = 0.0;
  Complex ipow = kI;  // i^n
  double sign = -1.0; // (-1)^n
  double fact = 1.0;  // n!
  double zpow = 1.0;  // z^{n-1}
  for (int n = 1; n <= 30; ++n) {
    fact *= n;
    const Complex c = (ipow - sign) / fact;
    value += c * zpow;
    if (n >= 2) deriv += c * (n - 1.0) * (zpow / z);
    zpow *= z;
    ipow *= kI;
    sign = -sign;
    if (zpow / fact < 1e-20) break;
  }
  return {value, deriv};
}

}  // namespace

RadialKernel radial(const WaveNumber& b, double r) {
  require_separated(r);
  switch (b.branch) {
    case Branch::Helmholtz: {
      require_wavenumber(b.k);
      const double z = b.k * r;
      const auto c = specfun::cyl01(z);
      const Complex h0(c.j0, c.y0);
      const Complex h1(c.j1, c.y1);
      return {0.25 * kI * h0, -0.25 * kI * b.k * h1, -0.25 * kI * b.k * b.k * (h0 - h1 / z)};
    }
    case Branch::Modified: {
      require_wavenumber(b.k);
      const double z = b.k * r;
      const double k0 = specfun::macdonald_k(0, z);
      const double k1 = specfun::macdonald_k(1, z);
      return {kInv2Pi * k0, -kInv2Pi * b.k * k1, kInv2Pi * b.k * b.k * (k0 + k1 / z)};
    }
    case Branch::Laplace:
      return {-kInv2Pi * std::log(r), -kInv2Pi / r, kInv2Pi / (r * r)};
  }
  throw DomainError("unknown kernel branch");
}

Complex phi(const WaveNumber& b, const Vec2& x, const Vec2& y) { return radial(b, (x - y).norm()).value; }

Vec2c grad_phi_y(const WaveNumber& b, const Vec2& x, const Vec2& y) {
  const Vec2 d = x - y;
  const double r = d.norm();
  const RadialKernel rk = radial(b, r);
  return (-rk.d1 / r) * d.cast<Complex>();
}

Complex dphi_dn(const WaveNumber& b, const Vec2& x, const Vec2& y, const Vec2& ny) {
  const Vec2 d = x - y;
  const double r = d.norm();
  return radial(b, r).d1 * (-ny.dot(d) / r);
}

Complex d2phi_dnxdny(const WaveNumber& b, const Vec2& x, const Vec2& y, const Vec2& nx, const Vec2& ny) {
  const Vec2 d = x - y;
  const double r = d.norm();
  return mixed_normal_derivative(radial(b, r), d, r, nx, ny);
}

Complex biharm_g(double k, double r, int dim) {
  require_wavenumber(k);
  require_dim(dim);
  if (r < 0.0) throw DomainError("biharm_g: negative radius");
  const double z = k * r;
  if (dim == 2) {
    if (z < 1e-8) return kI / (8.0 * k * k);
    const auto c = specfun::cyl01(z);
    const double k0 = specfun::macdonald_k(0, z);
    // H0 + (2i/pi) K0 = J0 + i (Y0 + (2/pi) K0)
    return kI / (8.0 * k * k) * Complex(c.j0, c.y0 + (2.0 / kPi) * k0);
  }
  if (z < 0.1) return exp_difference_series(z)[0] / (8.0 * kPi * k);
  return (std::exp(kI * z) - std::exp(-z)) / (8.0 * kPi * k * k * r);
}

Complex biharm_lap_g(double k, double r, int dim) { return biharm_radial(k, r, dim).lap; }

BiharmRadial biharm_radial(double k, double r, int dim) {
  require_wavenumber(k);
  require_dim(dim);
  if (!(r > 0.0)) throw DomainError("biharmonic kernel derivatives are singular at r = 0");
  const double z = k * r;
  BiharmRadial out;
  if (dim == 2) {
    const auto c = specfun::cyl01(z);
    const double k0 = specfun::macdonald_k(0, z);
    const double k1 = specfun::macdonald_k(1, z);
    const double s1 = z < 1.0 ? y1_plus_k1_series(z) : c.y1 + (2.0 / kPi) * k1;
    out.g = z < 1e-8 ? kI / (8.0 * k * k) : kI / (8.0 * k * k) * Complex(c.j0, c.y0 + (2.0 / kPi) * k0);
    out.dg = -kI / (8.0 * k) * Complex(c.j1, s1);
    out.lap = -0.125 * kI * Complex(c.j0, c.y0 - (2.0 / kPi) * k0);
    out.dlap = 0.125 * kI * k * Complex(c.j1, c.y1 - (2.0 / kPi) * k1);
    return out;
  }
  const Complex eik = std::exp(kI * z);
  const double emk = std::exp(-z);
  if (z < 0.1) {
    const auto s = exp_difference_series(z);
    out.g = s[0] / (8.0 * kPi * k);
    out.dg = s[1] / (8.0 * kPi);
  } else {
    out.g = (eik - emk) / (8.0 * kPi * k * k * r);
    out.dg = ((kI * z - 1.0) * eik + (z + 1.0) * emk) / (8.0 * kPi * k * k * r * r);
  }
  out.lap = -(eik + emk) / (8.0 * kPi * r);
  out.dlap = -((kI * z - 1.0) * eik - (z + 1.0) * emk) / (8.0 * kPi * r * r);
  return out;
}

Eigen::VectorXcd biharm_grad_g(double k, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw DomainError("biharm_grad_g: dimension mismatch");
  const Eigen::VectorXd d = x - y;
  const double r = d.norm();
  const BiharmRadial br = biharm_radial(k, r, static_cast<int>(x.size()));
  return (br.dg / r) * d.cast<Complex>();
}

Complex ff_prefactor_minus(double k, int dim) {
  require_wavenumber(k);
  require_dim(dim);
  const double dm1 = dim - 1.0;
  return kI * std::exp(-kI * (dm1 * kPi / 4.0)) * std::pow(k, (dim - 3.0) / 2.0) /
         (2.0 * std::pow(2.0 * kPi, dm1 / 2.0));
}

double ff_prefactor_plus(double k, int dim) {
  require_wavenumber(k);
  require_dim(dim);
  return std::pow(k, (dim - 3.0) / 2.0) / (2.0 * std::pow(2.0 * kPi, (dim - 1.0) / 2.0));
}

std::pair<Complex, Complex> ff_kernel_minus(double k, const Vec2& xhat, const Vec2& y, const Vec2& ny) {
  const Complex c = ff_prefactor_minus(k, 2);
  const Complex e = std::exp(-kI * (k * xhat.dot(y)));
  return {c * (-kI * k * xhat.dot(ny)) * e, c * e};
}

std::pair<Complex, Complex> ff_kernel_plus(double k, const Vec2& xhat, const Vec2& y, const Vec2& ny) {
  const double c = ff_prefactor_plus(k, 2);
  const double arg = k * xhat.dot(y);
  if (arg > kFarFieldExponentLimit) {
    throw std::overflow_error("far-field kernel: k xhat.y = " + std::to_string(arg) + " exceeds " +
                              std::to_string(kFarFieldExponentLimit));
  }
  const double e = std::exp(arg);
  return {Complex(c * k * xhat.dot(ny) * e, 0.0), Complex(c * e, 0.0)};
}

}  // namespace biharm
