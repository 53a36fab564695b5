#include "biharm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "biharm/specfun.hpp"

namespace biharm {

namespace {

// Values and argument-derivatives of the cylinder functions of order m (any sign)
// from order sequences 0..M+1.
struct CylModes {
  std::vector<double> j, y, k;
  double x;

  static CylModes at(int mmax, double x) {
    CylModes c;
    c.x = x;
    const auto cs = specfun::cyl_sequence(mmax + 1, x);
    c.j = cs.j;
    c.y = cs.y;
    c.k = specfun::macdonald_k_sequence(mmax + 1, x);
    return c;
  }

  // f'_m = f_{m-1} - (m/x) f_m for m >= 1, f'_0 = -f_1
  static double dcyl(const std::vector<double>& f, int m, double x) {
    const auto mi = static_cast<std::size_t>(m);
    return m == 0 ? -f[1] : f[mi - 1] - (m / x) * f[mi];
  }

  // Order |m| values with the reflection sign for J, Y (K is even).
  double sign(int m) const { return (m < 0 && (-m) % 2 == 1) ? -1.0 : 1.0; }
  double jv(int m) const { return sign(m) * j[static_cast<std::size_t>(std::abs(m))]; }
  double djv(int m) const { return sign(m) * dcyl(j, std::abs(m), x); }
  Complex hv(int m) const {
    const auto a = static_cast<std::size_t>(std::abs(m));
    return sign(m) * Complex(j[a], y[a]);
  }
  Complex dhv(int m) const { return sign(m) * Complex(dcyl(j, std::abs(m), x), dcyl(y, std::abs(m), x)); }
  double kv(int m) const { return k[static_cast<std::size_t>(std::abs(m))]; }
  double dkv(int m) const {
    const auto a = static_cast<std::size_t>(std::abs(m));
    return a == 0 ? -k[1] : -0.5 * (k[a - 1] + k[a + 1]);
  }
};

Complex ipow(int m) {
  static const Complex p[4] = {1.0, kI, -1.0, -kI};
  return p[((m % 4) + 4) % 4];
}

// Solves a H + b K = rhs0, a H' + b K' = rhs1 through the normalized unknowns
// alpha = a H, beta = b K so large orders do not overflow the determinant.
struct ModeSolution {
  Complex a, b, alpha, beta;
  double residual;
};

ModeSolution solve_mode(Complex h, Complex dh, double kk, double dkk, Complex rhs0, Complex rhs1) {
  const Complex lh = dh / h;
  const double lk = dkk / kk;
  if (std::abs(lk - lh) == 0.0) throw DomainError("oracle: degenerate mode system");
  const Complex beta = (rhs1 - rhs0 * lh) / (lk - lh);
  const Complex alpha = rhs0 - beta;
  ModeSolution s{alpha / h, beta / kk, alpha, beta, 0.0};
  const double scale = std::abs(rhs0) + std::abs(rhs1);
  if (scale > 0.0) {
    const Complex r0 = s.a * h + s.b * kk - rhs0;
    const Complex r1 = s.a * dh + s.b * dkk - rhs1;
    s.residual = (std::abs(r0) + std::abs(r1)) / scale;
  }
  return s;
}

void require_argument(double z) {
  if (!(z > 0.0) || !(z < kOracleMaxArgument)) {
    throw DomainError("oracle: k R must lie in (0, " + std::to_string(kOracleMaxArgument) + "), got " +
                      std::to_string(z));
  }
}

}  // namespace

DiskCoefficients disk_solve(const DiskProblem& p, int max_modes) {
  if (!(p.radius > 0.0)) throw DomainError("disk_solve: radius must be positive");
  const double z = p.k * p.radius;
  require_argument(z);
  const CylModes c = CylModes::at(max_modes, z);
  std::vector<ModeSolution> pos;
  double max_scale = 0.0;
  double max_raw = 0.0;
  int order = -1;
  for (int m = 0; m <= max_modes; ++m) {
    const Complex cm = p.amplitude * ipow(m);
    auto s = solve_mode(c.hv(m), c.dhv(m), c.kv(m), c.dkv(m), -cm * c.jv(m), -cm * c.djv(m));
    if (!std::isfinite(std::abs(s.a)) || !std::isfinite(std::abs(s.b))) break;
    pos.push_back(s);
    const double scale = std::abs(s.alpha) + std::abs(s.beta);
    const double raw = std::abs(s.a) + std::abs(s.b);
    max_scale = std::max(max_scale, scale);
    max_raw = std::max(max_raw, raw);
    if (m >= z && scale <= 1e-17 * max_scale && raw <= 1e-14 * max_raw) {
      order = m;
      break;
    }
  }
  if (max_scale == 0.0 && !pos.empty()) order = 0;  // zero incident amplitude
  if (order < 0) {
    throw DomainError("disk_solve: series did not converge within " + std::to_string(max_modes) + " modes (k R = " +
                      std::to_string(z) + ")");
  }
  DiskCoefficients out;
  out.problem = p;
  out.order = order;
  out.a.resize(static_cast<std::size_t>(2 * order + 1));
  out.b.resize(static_cast<std::size_t>(2 * order + 1));
  for (int m = -order; m <= order; ++m) {
    const Complex cm = p.amplitude * ipow(m);
    const auto s = m >= 0 ? pos[static_cast<std::size_t>(m)]
                          : solve_mode(c.hv(m), c.dhv(m), c.kv(m), c.dkv(m), -cm * c.jv(m), -cm * c.djv(m));
    out.a[static_cast<std::size_t>(m + order)] = s.a;
    out.b[static_cast<std::size_t>(m + order)] = s.b;
    out.max_mode_residual = std::max(out.max_mode_residual, s.residual);
  }
  return out;
}

OracleSample disk_eval(const DiskCoefficients& co, double r, double theta) {
  if (!(r >= co.problem.radius)) throw DomainError("disk_eval: r must not be below the disk radius");
  const double k = co.problem.k;
  const double x = k * r;
  const CylModes c = CylModes::at(co.order, x);
  OracleSample s{};
  for (int m = -co.order; m <= co.order; ++m) {
    const Complex e = std::exp(kI * (m * (theta - co.problem.angle)));
    const Complex ah = co.a_at(m) * c.hv(m);
    const Complex bk = co.b_at(m) * c.kv(m);
    const Complex adh = co.a_at(m) * c.dhv(m);
    const Complex bdk = co.b_at(m) * c.dkv(m);
    s.u += (ah + bk) * e;
    s.lap_u += k * k * (-ah + bk) * e;
    s.dr_u += k * (adh + bdk) * e;
    s.dr_lap_u += k * k * k * (-adh + bdk) * e;
  }
  return s;
}

OracleSample disk_incident(const DiskProblem& p, double r, double theta) {
  const Vec2 d(std::cos(p.angle), std::sin(p.angle));
  const Vec2 x(r * std::cos(theta), r * std::sin(theta));
  const Complex u = p.amplitude * std::exp(kI * (p.k * x.dot(d)));
  const double radial = d.dot(x / r);
  const Complex dr = kI * p.k * radial * u;
  return {u, -p.k * p.k * u, dr, -p.k * p.k * dr};
}

FarFieldPair disk_farfield(const DiskCoefficients& co, const std::vector<Vec2>& directions) {
  const double k = co.problem.k;
  const auto count = static_cast<Eigen::Index>(directions.size());
  FarFieldPair out{directions, CVector::Zero(count), CVector::Zero(count)};
  const double cm = std::sqrt(2.0 / (kPi * k));
  const double cp = std::sqrt(kPi / (2.0 * k));
  for (Eigen::Index i = 0; i < count; ++i) {
    const double theta = direction_angle(directions[static_cast<std::size_t>(i)]);
    for (int m = -co.order; m <= co.order; ++m) {
      const Complex e = std::exp(kI * (m * (theta - co.problem.angle)));
      out.ff_minus(i) += -2.0 * k * k * co.a_at(m) * cm * std::exp(-kI * (m * kPi / 2.0 + kPi / 4.0)) * e;
      out.ff_plus(i) += 2.0 * k * k * co.b_at(m) * cp * e;
    }
  }
  return out;
}

SphereCoefficients sphere_solve(const SphereProblem& p, int max_modes) {
  if (!(p.radius > 0.0)) throw DomainError("sphere_solve: radius must be positive");
  const double z = p.k * p.radius;
  require_argument(z);
  const auto s = specfun::spherical_sequence(max_modes, z);
  SphereCoefficients out;
  out.problem = p;
  double max_scale = 0.0;
  double max_raw = 0.0;
  for (int l = 0; l <= max_modes; ++l) {
    const auto li = static_cast<std::size_t>(l);
    const Complex cl = ipow(l) * (2.0 * l + 1.0);
    const auto m = solve_mode(Complex(s.j[li], s.y[li]), Complex(s.dj[li], s.dy[li]), s.k[li], s.dk[li],
                              -cl * s.j[li], -cl * s.dj[li]);
    if (!std::isfinite(std::abs(m.a)) || !std::isfinite(std::abs(m.b))) break;
    out.a.push_back(m.a);
    out.b.push_back(m.b);
    out.max_mode_residual = std::max(out.max_mode_residual, m.residual);
    const double scale = std::abs(m.alpha) + std::abs(m.beta);
    const double raw = std::abs(m.a) + std::abs(m.b);
    max_scale = std::max(max_scale, scale);
    max_raw = std::max(max_raw, raw);
    if (l >= z && scale <= 1e-17 * max_scale && raw <= 1e-14 * max_raw) {
      out.order = l;
      return out;
    }
  }
  throw DomainError("sphere_solve: series did not converge within " + std::to_string(max_modes) + " modes");
}

OracleSample sphere_eval(const SphereCoefficients& co, double r, double theta) {
  if (!(r >= co.problem.radius)) throw DomainError("sphere_eval: r must not be below the sphere radius");
  const double k = co.problem.k;
  const auto s = specfun::spherical_sequence(co.order, k * r);
  const double ct = std::cos(theta);
  OracleSample out{};
  for (int l = 0; l <= co.order; ++l) {
    const auto li = static_cast<std::size_t>(l);
    const double pl = std::legendre(static_cast<unsigned>(l), ct);
    const Complex ah = co.a[li] * Complex(s.j[li], s.y[li]);
    const Complex bk = co.b[li] * s.k[li];
    const Complex adh = co.a[li] * Complex(s.dj[li], s.dy[li]);
    const Complex bdk = co.b[li] * s.dk[li];
    out.u += (ah + bk) * pl;
    out.lap_u += k * k * (-ah + bk) * pl;
    out.dr_u += k * (adh + bdk) * pl;
    out.dr_lap_u += k * k * k * (-adh + bdk) * pl;
  }
  return out;
}

OracleSample sphere_incident(const SphereProblem& p, double r, double theta) {
  const Complex u = std::exp(kI * (p.k * r * std::cos(theta)));
  const Complex dr = kI * p.k * std::cos(theta) * u;
  return {u, -p.k * p.k * u, dr, -p.k * p.k * dr};
}

SphereFarField sphere_farfield(const SphereCoefficients& co, const std::vector<double>& theta) {
  const double k = co.problem.k;
  const auto count = static_cast<Eigen::Index>(theta.size());
  SphereFarField out{theta, CVector::Zero(count), CVector::Zero(count)};
  for (Eigen::Index i = 0; i < count; ++i) {
    const double ct = std::cos(theta[static_cast<std::size_t>(i)]);
    for (int l = 0; l <= co.order; ++l) {
      const auto li = static_cast<std::size_t>(l);
      const double pl = std::legendre(static_cast<unsigned>(l), ct);
      out.ff_minus(i) += -2.0 * k * k * co.a[li] * ipow(-(l + 1)) / k * pl;
      out.ff_plus(i) += 2.0 * k * k * co.b[li] * (kPi / (2.0 * k)) * pl;
    }
  }
  return out;
}

}  // namespace biharm
