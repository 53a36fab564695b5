#include "biharm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace biharm::specfun {

namespace {

constexpr double kRescale = 1e-250;
constexpr double kRescaleAbove = 1e250;

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// Normalized J_0..J_top by downward recurrence, top chosen so the neglected tail
// is below double precision.
std::vector<double> miller_j(int mmax, double x) {
  const double big = std::max<double>(mmax, x);
  int start = static_cast<int>(big + 20.0 + std::sqrt(40.0 * (big + 1.0)));
  start += start % 2;
  std::vector<double> j(static_cast<std::size_t>(start) + 1, 0.0);
  double next = 0.0;
  double cur = 1.0;
  j[static_cast<std::size_t>(start)] = cur;
  double sum = 0.0;
  for (int m = start; m >= 1; --m) {
    const double prev = (2.0 * m / x) * cur - next;
    next = cur;
    cur = prev;
    j[static_cast<std::size_t>(m - 1)] = cur;
    if (m - 1 > 0 && (m - 1) % 2 == 0) sum += 2.0 * cur;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescale;
      next *= kRescale;
      sum *= kRescale;
      for (int q = m - 1; q <= start; ++q) j[static_cast<std::size_t>(q)] *= kRescale;
    }
  }
  sum += j[0];
  for (double& v : j) v /= sum;
  return j;
}

// Hankel asymptotic expansion for integer order nu, returns (J_nu, Y_nu).
std::pair<double, double> hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > last) break;  // divergent tail
    last = std::abs(term);
    if (k % 2 == 0) {
      p += ((k / 2) % 2 == 1 ? -1.0 : 1.0) * term;
    } else {
      q += (((k - 1) / 2) % 2 == 1 ? -1.0 : 1.0) * term;
    }
    if (last < 1e-17) break;
  }
  // chi = x - (nu/2 + 1/4) pi, expanded to avoid rounding in the subtraction.
  const double phase = (0.5 * nu + 0.25) * kPi;
  const double cx = std::cos(x);
  const double sx = std::sin(x);
  const double cp = std::cos(phase);
  const double sp = std::sin(phase);
  const double cchi = cx * cp + sx * sp;
  const double schi = sx * cp - cx * sp;
  const double amp = std::sqrt(2.0 / (kPi * x));
  return {amp * (p * cchi - q * schi), amp * (p * schi + q * cchi)};
}

// Y_0 and Y_1 from the Neumann series over Miller J values.
std::pair<double, double> neumann_y01(const std::vector<double>& j, double x) {
  const double lg = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0;
  double s1 = 0.0;
  const std::size_t top = j.size();
  for (std::size_t k = 1; 2 * k < top; ++k) {
    const double sgn = (k % 2 == 1) ? -1.0 : 1.0;
    s0 += sgn * j[2 * k] / static_cast<double>(k);
    const double jp = (2 * k + 1 < top) ? j[2 * k + 1] : 0.0;
    s1 += sgn * (j[2 * k - 1] - jp) / (2.0 * static_cast<double>(k));
  }
  const double y0 = (2.0 / kPi) * lg * j[0] - (4.0 / kPi) * s0;
  const double dy0 = (2.0 / kPi) * (j[0] / x - lg * j[1]) - (4.0 / kPi) * s1;
  return {y0, -dy0};
}

// e^{x} K_nu(x) = int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt, trapezoid rule.
// The integrand is entire and decays double-exponentially, so the rule
// converges geometrically in 1/h.
double k_scaled_integral(int nu, double x) {
  const double h = std::min(0.1, 0.5 / std::sqrt(x));
  double sum = 0.5;  // t = 0 contributes cosh(0) = 1, half weight
  for (int step = 1; step < 100000; ++step) {
    const double t = step * h;
    const double f = std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
    sum += f;
    if (f < 1e-18 * sum) break;
  }
  return h * sum;
}

// Scaled e^{-x} I_0..I_mmax by downward recurrence.
std::vector<double> miller_i_scaled(int mmax, double x) {
  int start = mmax + 30 + static_cast<int>(std::sqrt(80.0 * (x + 1.0)));
  std::vector<double> vals(static_cast<std::size_t>(start) + 1, 0.0);
  double next = 0.0;
  double cur = 1.0;
  vals[static_cast<std::size_t>(start)] = cur;
  double sum = 2.0 * cur;
  for (int m = start; m >= 1; --m) {
    const double prev = (2.0 * m / x) * cur + next;
    next = cur;
    cur = prev;
    vals[static_cast<std::size_t>(m - 1)] = cur;
    sum += (m - 1 > 0 ? 2.0 : 1.0) * cur;
    if (cur > kRescaleAbove) {
      cur *= kRescale;
      next *= kRescale;
      sum *= kRescale;
      for (int q = m - 1; q <= start; ++q) vals[static_cast<std::size_t>(q)] *= kRescale;
    }
  }
  vals.resize(static_cast<std::size_t>(mmax) + 1);
  for (double& v : vals) v /= sum;
  return vals;
}

std::vector<double> k_scaled_sequence(int mmax, double x) {
  std::vector<double> k(static_cast<std::size_t>(std::max(mmax, 1)) + 1);
  k[0] = k_scaled_integral(0, x);
  k[1] = k_scaled_integral(1, x);
  for (int m = 1; m < mmax; ++m) {
    k[static_cast<std::size_t>(m) + 1] =
        k[static_cast<std::size_t>(m) - 1] + (2.0 * m / x) * k[static_cast<std::size_t>(m)];
  }
  k.resize(static_cast<std::size_t>(mmax) + 1);
  return k;
}

}  // namespace

Cyl01 cyl01(double x) {
  require_positive(x, "cyl01");
  const auto j = miller_j(1, x);
  Cyl01 out{j[0], j[1], 0.0, 0.0};
  if (x < kAsymptoticCrossover) {
    std::tie(out.y0, out.y1) = neumann_y01(j, x);
  } else {
    std::tie(out.j0, out.y0) = hankel_asymptotic(0, x);
    std::tie(out.j1, out.y1) = hankel_asymptotic(1, x);
  }
  return out;
}

CylSequence cyl_sequence(int mmax, double x) {
  require_positive(x, "cyl_sequence");
  mmax = std::max(mmax, 1);
  auto j = miller_j(mmax, x);
  double y0 = 0.0;
  double y1 = 0.0;
  if (x < kAsymptoticCrossover) {
    std::tie(y0, y1) = neumann_y01(j, x);
  } else {
    double j0a = 0.0;
    double j1a = 0.0;
    std::tie(j0a, y0) = hankel_asymptotic(0, x);
    std::tie(j1a, y1) = hankel_asymptotic(1, x);
    // Miller normalization by the sum rule is exact, but use the asymptotic
    // J_0/J_1 as the scale when they are well away from a zero.
    const double scale = std::abs(j0a) > std::abs(j1a) ? j0a / j[0] : j1a / j[1];
    for (double& v : j) v *= scale;
  }
  CylSequence out;
  out.j.assign(j.begin(), j.begin() + mmax + 1);
  out.y.resize(static_cast<std::size_t>(mmax) + 1);
  out.y[0] = y0;
  out.y[1] = y1;
  for (int m = 1; m < mmax; ++m) {
    out.y[static_cast<std::size_t>(m) + 1] =
        (2.0 * m / x) * out.y[static_cast<std::size_t>(m)] - out.y[static_cast<std::size_t>(m) - 1];
  }
  return out;
}

Mod01 mod01(double x) {
  require_positive(x, "mod01");
  const auto is = miller_i_scaled(1, x);
  const double ex = std::exp(x);
  const double emx = std::exp(-x);
  return {is[0] * ex, is[1] * ex, k_scaled_integral(0, x) * emx, k_scaled_integral(1, x) * emx};
}

ModSequence mod_sequence(int mmax, double x) {
  require_positive(x, "mod_sequence");
  if (x > kOverflowArgument) throw std::overflow_error("mod_sequence: I_m overflows for x > 700");
  mmax = std::max(mmax, 0);
  ModSequence out;
  out.i = miller_i_scaled(mmax, x);
  out.k = k_scaled_sequence(mmax, x);
  const double ex = std::exp(x);
  for (double& v : out.i) v *= ex;
  for (double& v : out.k) v /= ex;
  return out;
}

std::vector<double> macdonald_k_sequence(int mmax, double x) {
  require_positive(x, "macdonald_k_sequence");
  auto k = k_scaled_sequence(std::max(mmax, 0), x);
  const double emx = std::exp(-x);
  for (double& v : k) v *= emx;
  return k;
}

double bessel_j(int m, double x) {
  require_positive(x, "bessel_j");
  const int am = std::abs(m);
  const double v = cyl_sequence(am, x).j[static_cast<std::size_t>(am)];
  return m < 0 ? parity(am) * v : v;
}

double bessel_y(int m, double x) {
  require_positive(x, "bessel_y");
  const int am = std::abs(m);
  const double v = cyl_sequence(am, x).y[static_cast<std::size_t>(am)];
  return m < 0 ? parity(am) * v : v;
}

Complex hankel1(int m, double x) {
  require_positive(x, "hankel1");
  const int am = std::abs(m);
  const auto s = cyl_sequence(am, x);
  const Complex v{s.j[static_cast<std::size_t>(am)], s.y[static_cast<std::size_t>(am)]};
  return m < 0 ? parity(am) * v : v;
}

double bessel_i_scaled(int m, double x) {
  require_positive(x, "bessel_i");
  const int am = std::abs(m);
  return miller_i_scaled(am, x)[static_cast<std::size_t>(am)];
}

double bessel_i(int m, double x) {
  require_positive(x, "bessel_i");
  if (x > kOverflowArgument) {
    throw std::overflow_error("bessel_i: overflow for x > 700, use bessel_i_scaled");
  }
  return bessel_i_scaled(m, x) * std::exp(x);
}

double macdonald_k_scaled(int m, double x) {
  require_positive(x, "macdonald_k");
  const int am = std::abs(m);
  return k_scaled_sequence(am, x)[static_cast<std::size_t>(am)];
}

double macdonald_k(int m, double x) { return macdonald_k_scaled(m, x) * std::exp(-x); }

Complex value(Fn fn, int m, double x) {
  switch (fn) {
    case Fn::J: return bessel_j(m, x);
    case Fn::Y: return bessel_y(m, x);
    case Fn::H1: return hankel1(m, x);
    case Fn::I: return bessel_i(m, x);
    case Fn::K: return macdonald_k(m, x);
  }
  throw DomainError("value: unknown function id");
}

Complex deriv(Fn fn, int m, double x) {
  require_positive(x, "deriv");
  switch (fn) {
    case Fn::J:
    case Fn::Y:
    case Fn::H1:
      return value(fn, m - 1, x) - (static_cast<double>(m) / x) * value(fn, m, x);
    case Fn::I:
      return value(fn, m - 1, x) - (static_cast<double>(m) / x) * value(fn, m, x);
    case Fn::K:
      return -0.5 * (value(fn, m - 1, x) + value(fn, m + 1, x));
  }
  throw DomainError("deriv: unknown function id");
}

SphericalSequence spherical_sequence(int lmax, double x) {
  require_positive(x, "spherical_sequence");
  lmax = std::max(lmax, 1);
  const std::size_t n = static_cast<std::size_t>(lmax) + 1;
  SphericalSequence s;
  s.j.assign(n, 0.0);
  s.y.assign(n, 0.0);
  s.k.assign(n, 0.0);

  // j_l: downward recurrence, normalized against whichever of j_0, j_1 is larger.
  {
    const double big = std::max<double>(lmax, x);
    const int start = static_cast<int>(big + 20.0 + std::sqrt(40.0 * (big + 1.0)));
    std::vector<double> w(static_cast<std::size_t>(start) + 2, 0.0);
    w[static_cast<std::size_t>(start)] = 1.0;
    for (int l = start; l >= 1; --l) {
      w[static_cast<std::size_t>(l) - 1] =
          ((2.0 * l + 1.0) / x) * w[static_cast<std::size_t>(l)] - w[static_cast<std::size_t>(l) + 1];
      if (std::abs(w[static_cast<std::size_t>(l) - 1]) > kRescaleAbove) {
        for (int q = l - 1; q <= start; ++q) w[static_cast<std::size_t>(q)] *= kRescale;
      }
    }
    const double j0 = std::sin(x) / x;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const double scale = std::abs(j0) >= std::abs(j1) ? j0 / w[0] : j1 / w[1];
    for (std::size_t l = 0; l < n; ++l) s.j[l] = w[l] * scale;
  }

  s.y[0] = -std::cos(x) / x;
  s.y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  const double kpref = kPi / (2.0 * x) * std::exp(-x);
  s.k[0] = kpref;
  s.k[1] = kpref * (1.0 + 1.0 / x);
  for (int l = 1; l < lmax; ++l) {
    const auto li = static_cast<std::size_t>(l);
    s.y[li + 1] = ((2.0 * l + 1.0) / x) * s.y[li] - s.y[li - 1];
    s.k[li + 1] = s.k[li - 1] + ((2.0 * l + 1.0) / x) * s.k[li];
  }

  s.dj.assign(n, 0.0);
  s.dy.assign(n, 0.0);
  s.dk.assign(n, 0.0);
  s.dj[0] = -s.j[1];
  s.dy[0] = -s.y[1];
  s.dk[0] = -s.k[0] * (1.0 + 1.0 / x);
  for (std::size_t l = 1; l < n; ++l) {
    const double c = (static_cast<double>(l) + 1.0) / x;
    s.dj[l] = s.j[l - 1] - c * s.j[l];
    s.dy[l] = s.y[l - 1] - c * s.y[l];
    s.dk[l] = -s.k[l - 1] - c * s.k[l];
  }
  return s;
}

namespace {
void require_order(int l, const char* fn) {
  if (l < 0) throw DomainError(std::string(fn) + ": order must be non-negative");
}
}  // namespace

double spherical_j(int l, double x) {
  require_order(l, "spherical_j");
  return spherical_sequence(l, x).j[static_cast<std::size_t>(l)];
}

double spherical_y(int l, double x) {
  require_order(l, "spherical_y");
  return spherical_sequence(l, x).y[static_cast<std::size_t>(l)];
}

Complex spherical_h1(int l, double x) {
  require_order(l, "spherical_h1");
  const auto s = spherical_sequence(l, x);
  return {s.j[static_cast<std::size_t>(l)], s.y[static_cast<std::size_t>(l)]};
}

double spherical_k(int l, double x) {
  require_order(l, "spherical_k");
  return spherical_sequence(l, x).k[static_cast<std::size_t>(l)];
}

Complex spherical_h1_deriv(int l, double x) {
  require_order(l, "spherical_h1_deriv");
  const auto s = spherical_sequence(l, x);
  return {s.dj[static_cast<std::size_t>(l)], s.dy[static_cast<std::size_t>(l)]};
}

double spherical_j_deriv(int l, double x) {
  require_order(l, "spherical_j_deriv");
  return spherical_sequence(l, x).dj[static_cast<std::size_t>(l)];
}

double spherical_k_deriv(int l, double x) {
  require_order(l, "spherical_k_deriv");
  return spherical_sequence(l, x).dk[static_cast<std::size_t>(l)];
}

}  // namespace biharm::specfun
