#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"

#include "biharm/kernels.hpp"
#include "biharm/specfun.hpp"

using namespace biharm;

namespace {

const WaveNumber kBranches[] = {WaveNumber::helmholtz(1.3), WaveNumber::modified(1.3), WaveNumber::laplace()};

// Laplacian of f(r) in dimension d from radial derivatives: f'' + (d-1)/r f'.
Complex fd_radial_laplacian(const std::function<Complex(double)>& f, double r, int dim, double h) {
  const Complex f0 = f(r), fp = f(r + h), fm = f(r - h);
  return (fp - 2.0 * f0 + fm) / (h * h) + (dim - 1.0) / r * (fp - fm) / (2 * h);
}

}  // namespace

TEST_CASE("phi reference values") {
  const Vec2 x(0.3, -0.2);
  const Vec2 y = x + Vec2(0.6, 0.8);
  CHECK(std::abs(phi(WaveNumber::modified(1.0), x, y) - 0.421024438240708333 / (2 * kPi)) < 1e-13);
  const Complex want = 0.25 * kI * Complex(0.765197686557966552, 0.088256964215676958);
  CHECK(std::abs(phi(WaveNumber::helmholtz(1.0), x, y) - want) < 1e-13);
  CHECK(std::abs(phi(WaveNumber::laplace(), x, x + Vec2(0, 2.0)) + std::log(2.0) / (2 * kPi)) < 1e-15);
  for (const auto& b : kBranches) {
    CHECK(phi(b, x, y) == phi(b, y, x));
    CHECK_THROWS_AS(phi(b, x, x), CoincidenceError);
    CHECK_THROWS_AS(dphi_dn(b, x, x + Vec2(1e-15, 0), Vec2(1, 0)), CoincidenceError);
  }
}

TEST_CASE("kernel derivatives match finite differences") {
  const Vec2 x(0.1, 0.2);
  const Vec2 y = x + 0.7 * Vec2(std::cos(0.4), std::sin(0.4));
  const Vec2 nx = Vec2(std::cos(1.1), std::sin(1.1));
  const Vec2 ny = Vec2(std::cos(-2.0), std::sin(-2.0));
  const double h = 1e-5;
  for (const auto& b : kBranches) {
    const Vec2c g = grad_phi_y(b, x, y);
    const Complex gx = (phi(b, x, y + Vec2(h, 0)) - phi(b, x, y - Vec2(h, 0))) / (2 * h);
    const Complex gy = (phi(b, x, y + Vec2(0, h)) - phi(b, x, y - Vec2(0, h))) / (2 * h);
    CHECK(std::abs(g(0) - gx) < 1e-8);
    CHECK(std::abs(g(1) - gy) < 1e-8);
    const Complex dn = dphi_dn(b, x, y, ny);
    CHECK(std::abs(dn - (phi(b, x, y + h * ny) - phi(b, x, y - h * ny)) / (2 * h)) < 1e-8);
    const Complex mixed = d2phi_dnxdny(b, x, y, nx, ny);
    const Complex fd = (dphi_dn(b, x + h * nx, y, ny) - dphi_dn(b, x - h * nx, y, ny)) / (2 * h);
    CHECK(std::abs(mixed - fd) < 1e-8);
    // symmetric under (x, nx) <-> (y, ny)
    CHECK(std::abs(mixed - d2phi_dnxdny(b, y, x, ny, nx)) < 1e-14);
    // normal derivative vanishes for a normal orthogonal to x - y
    const Vec2 d = (x - y).normalized();
    CHECK(std::abs(dphi_dn(b, x, y, Vec2(-d.y(), d.x()))) < 1e-15);
  }
}

TEST_CASE("fundamental solutions solve their equations away from the source") {
  const double k = 1.3, r = 0.9, h = 1e-4;
  const auto f_h = [&](double s) { return radial(WaveNumber::helmholtz(k), s).value; };
  const auto f_m = [&](double s) { return radial(WaveNumber::modified(k), s).value; };
  const auto f_l = [&](double s) { return radial(WaveNumber::laplace(), s).value; };
  CHECK(std::abs(fd_radial_laplacian(f_h, r, 2, h) + k * k * f_h(r)) < 1e-7);
  CHECK(std::abs(fd_radial_laplacian(f_m, r, 2, h) - k * k * f_m(r)) < 1e-7);
  CHECK(std::abs(fd_radial_laplacian(f_l, r, 2, h)) < 1e-7);
  for (const auto& b : kBranches) {
    const RadialKernel rk = radial(b, r);
    const auto f = [&](double s) { return radial(b, s).value; };
    CHECK(std::abs(rk.d1 - (f(r + h) - f(r - h)) / (2 * h)) < 1e-8);
    CHECK(std::abs(rk.d2 - (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h)) < 1e-6);
  }
}

TEST_CASE("biharmonic kernel limits at the origin") {
  const double k = 1.7;
  CHECK(std::abs(biharm_g(k, 0.0, 2) - kI / (8 * k * k)) < 1e-16);
  for (double r : {1e-6, 1e-8}) CHECK(std::abs(biharm_g(k, r, 2) - kI / (8 * k * k)) < 1e-9);
  const Complex g3 = Complex(1, 1) / (8 * kPi * k);
  CHECK(std::abs(biharm_g(k, 0.0, 3) - g3) < 1e-16);
  CHECK(std::abs(biharm_g(k, 1e-7, 3) - g3) < 1e-8);
  // series and closed form agree across the switch
  CHECK(std::abs(biharm_g(k, 0.1 / k * (1 - 1e-9), 3) - biharm_g(k, 0.1 / k, 3)) < 1e-10);
  CHECK_THROWS_AS(biharm_lap_g(k, 0.0, 2), DomainError);
  CHECK_THROWS_AS(biharm_radial(k, 0.0, 3), DomainError);
  CHECK_THROWS_AS(biharm_g(k, 1.0, 4), DomainError);
}

TEST_CASE("biharmonic kernel radial derivatives") {
  const double k = 1.1, h = 1e-5;
  for (int dim : {2, 3}) {
    for (double r : {0.03, 0.5, 2.0, 9.0}) {
      const BiharmRadial br = biharm_radial(k, r, dim);
      CHECK(std::abs(br.g - biharm_g(k, r, dim)) < 1e-15);
      const double hh = std::min(h, r / 10);
      const Complex dg = (biharm_g(k, r + hh, dim) - biharm_g(k, r - hh, dim)) / (2 * hh);
      CHECK(std::abs(br.dg - dg) < 1e-8 * std::max(1.0, std::abs(dg)));
      const Complex lap = fd_radial_laplacian([&](double s) { return biharm_g(k, s, dim); }, r, dim, hh);
      CHECK(std::abs(br.lap - lap) < 1e-5 * std::max(1.0, std::abs(lap)));
      const double hd = std::min(1e-5, r / 1000);
      const Complex dlap = (biharm_lap_g(k, r + hd, dim) - biharm_lap_g(k, r - hd, dim)) / (2 * hd);
      CHECK(std::abs(br.dlap - dlap) < 1e-6 * std::max(1.0, std::abs(dlap)));
    }
  }
}

TEST_CASE("biharmonic kernel satisfies the fourth-order equation") {
  const double k = 1.0;
  for (int dim : {2, 3}) {
    for (double r : {0.5, 2.0}) {
      // apply the radial Laplacian to Delta G (analytic) by finite differences
      const double h = 1e-3;
      const Complex bilap = fd_radial_laplacian([&](double s) { return biharm_lap_g(k, s, dim); }, r, dim, h);
      const Complex residual = bilap - std::pow(k, 4) * biharm_g(k, r, dim);
      CHECK(std::abs(residual) < 1e-4);
    }
  }
}

TEST_CASE("decomposition into the two second-order kernels") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.05, 12.0);
  const double k = 1.4;
  for (int i = 0; i < 20; ++i) {
    const double r = dist(rng);
    const BiharmRadial br = biharm_radial(k, r, 2);
    const Complex phik = radial(WaveNumber::helmholtz(k), r).value;
    const Complex phiik = radial(WaveNumber::modified(k), r).value;
    CHECK(std::abs(br.lap + k * k * br.g + phiik) < 1e-10);
    CHECK(std::abs(br.lap - k * k * br.g + phik) < 1e-10);
    const BiharmRadial b3 = biharm_radial(k, r, 3);
    CHECK(std::abs(b3.lap + k * k * b3.g + std::exp(-k * r) / (4 * kPi * r)) < 1e-10);
    CHECK(std::abs(b3.lap - k * k * b3.g + std::exp(kI * k * r) / (4 * kPi * r)) < 1e-10);
  }
}

TEST_CASE("gradient of the biharmonic kernel") {
  const double k = 0.9;
  Eigen::VectorXd x(3), y(3);
  x << 0.3, -0.1, 0.5;
  y << -0.4, 0.2, 0.1;
  const Eigen::VectorXcd g = biharm_grad_g(k, x, y);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(3);
    e(i) = h;
    const Complex fd = (biharm_g(k, (x + e - y).norm(), 3) - biharm_g(k, (x - e - y).norm(), 3)) / (2 * h);
    CHECK(std::abs(g(i) - fd) < 1e-8);
  }
  CHECK_THROWS_AS(biharm_grad_g(k, x, x), DomainError);
}

TEST_CASE("radiation behavior and singularity orders") {
  const double k = 1.0;
  for (int dim : {2, 3}) {
    double prev = 1e300;
    for (double r : {10.0, 20.0, 40.0}) {
      const BiharmRadial br = biharm_radial(k, r, dim);
      const double v = std::abs(br.dg - kI * k * br.g) * std::pow(r, (dim - 1) / 2.0);
      CHECK(v < prev);
      prev = v;
    }
    for (double r : {1.0, 2.0, 4.0}) {
      CHECK(std::abs(biharm_g(k, r, dim)) * std::pow(r, (dim - 1) / 2.0) < 1.0);
    }
  }
  // 2D: Delta G ~ ln r, |grad G| bounded; 3D: Delta G ~ 1/r, |grad G| ~ r^{-1} times vanishing
  const double a = 1e-4, b = 1e-6;
  CHECK(std::abs(biharm_lap_g(k, b, 2) / biharm_lap_g(k, a, 2)) ==
        doctest::Approx(std::log(b) / std::log(a)).epsilon(0.05));
  CHECK(std::abs(biharm_lap_g(k, b, 3) / biharm_lap_g(k, a, 3)) == doctest::Approx(a / b).epsilon(1e-3));
  CHECK(std::abs(biharm_radial(k, b, 2).dg) < std::abs(biharm_radial(k, a, 2).dg));
  CHECK(std::abs(biharm_radial(k, b, 3).dg) < 1.0);
}

TEST_CASE("far-field kernels") {
  const double k = 2.0;
  const Vec2 xhat(std::cos(0.3), std::sin(0.3));
  const Vec2 y = 0.8 * Vec2(-std::sin(0.3), std::cos(0.3));
  const Vec2 ny(0.6, 0.8);
  const auto [dm, vm] = ff_kernel_minus(k, xhat, y, ny);
  CHECK(std::abs(vm - ff_prefactor_minus(k)) < 1e-15);
  CHECK(std::abs(std::abs(vm) - 1 / (2 * std::sqrt(2 * kPi * k))) < 1e-15);
  CHECK(std::abs(vm - std::exp(kI * kPi / 4.0) / std::sqrt(8 * kPi * k)) < 1e-15);
  const auto [dp, vp] = ff_kernel_plus(k, xhat, y, ny);
  CHECK(std::abs(vp - 1 / (2 * std::sqrt(2 * kPi * k))) < 1e-15);
  // conjugation symmetry of the exponential part
  const Vec2 z(0.4, -0.3);
  const auto a = ff_kernel_minus(k, xhat, z, ny);
  const auto b = ff_kernel_minus(k, -xhat, z, ny);
  const auto b2 = ff_kernel_minus(k, xhat, -z, ny);
  const Complex c = ff_prefactor_minus(k);
  CHECK(std::abs(a.second / c - std::conj(b.second / c)) < 1e-15);
  CHECK(std::abs(b2.second - b.second) < 1e-15);
  // derivative entries match finite differences along n(y)
  const double h = 1e-6;
  const auto fp = ff_kernel_plus(k, xhat, z + h * ny, ny).second;
  const auto fm = ff_kernel_plus(k, xhat, z - h * ny, ny).second;
  CHECK(std::abs(ff_kernel_plus(k, xhat, z, ny).first - (fp - fm) / (2 * h)) < 1e-8);
  const auto gp = ff_kernel_minus(k, xhat, z + h * ny, ny).second;
  const auto gm = ff_kernel_minus(k, xhat, z - h * ny, ny).second;
  CHECK(std::abs(a.first - (gp - gm) / (2 * h)) < 1e-8);
  CHECK(ff_kernel_plus(k, xhat, z, ny).first.imag() == 0.0);
  CHECK_THROWS_AS(ff_kernel_plus(1.0, Vec2(1, 0), Vec2(601, 0), ny), std::overflow_error);
  CHECK_NOTHROW(ff_kernel_plus(1.0, Vec2(1, 0), Vec2(599, 0), ny));
}
