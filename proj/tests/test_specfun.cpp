#include <cmath>
#include <vector>

#include "doctest.h"

#include "biharm/specfun.hpp"

using namespace biharm;
using namespace biharm::specfun;

namespace {

struct Reference {
  int m;
  double x;
  double first;
  double second;
};

// 30-digit values, frozen from an arbitrary-precision evaluation.
const std::vector<Reference> kCylinder = {
    {0, 0.1, 0.997501562066040032, -1.5342386513503668083},
    {1, 1.0, 0.44005058574493351596, -0.78121282130028871655},
    {5, 2.5, 0.019501625134503219886, -3.830176000740751863},
    {20, 7.0, 1.7314903330306922009e-8, -981473.90463283281045},
    {3, 30.0, 0.12921122875972498304, -0.06803569025319872277},
    {10, 50.0, -0.11384784914946938567, 0.005723897182053513546},
    {0, 99.0, -0.05447423527049907344, -0.058847076763805432723},
    {12, 99.0, -0.0015052760501176727776, -0.08047305237306600485},
    {37, 99.0, -0.08321940776335898086, 0.0026855330099771181593},
};

const std::vector<Reference> kModified = {
    {0, 0.01, 1.000025000156250434, 4.7212447301610949443},
    {1, 0.5, 0.25789430539089631636, 1.6564411200033008937},
    {4, 3.0, 0.32570518193793544067, 0.3058512099861091735},
    {0, 20.0, 43558282.559553533272, 5.7412378153365242927e-10},
    {7, 40.0, 8022986222282039.0425, 1.5347966431111496323e-18},
    {15, 12.0, 2.9999530015258752403, 0.0086741117154767093725},
};

struct SphericalReference {
  int l;
  double x;
  double j, y, k;
};

const std::vector<SphericalReference> kSpherical = {
    {0, 0.5, 0.95885107720840600055, -1.7551651237807454322, 1.9054722647301799369},
    {2, 1.0, 0.062035052011373861102, -3.6050175661599689548, 4.0450457242682260127},
    {5, 3.0, 0.016397480955999103311, -2.2470233284653900902, 1.2715609654111771821},
    {10, 20.0, 0.03968669864462637131, -0.036843410496289961749, 2.2531468015242620821e-9},
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Ascending series in extended precision: sum (s x^2/4)^j / (j! (m+j)!) (x/2)^m,
// s = -1 for J_m and +1 for I_m.
long double power_series(int m, long double x, int s) {
  long double term = 1.0L;
  for (int j = 1; j <= m; ++j) term *= x / (2.0L * j);
  long double sum = term;
  const long double q = s * x * x / 4.0L;
  for (int j = 1; j < 400; ++j) {
    term *= q / (static_cast<long double>(j) * (m + j));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("cylinder functions match frozen references") {
  for (const auto& r : kCylinder) {
    CAPTURE(r.m);
    CAPTURE(r.x);
    CHECK(rel(bessel_j(r.m, r.x), r.first) < 1e-11);
    CHECK(rel(bessel_y(r.m, r.x), r.second) < 1e-11);
    const Complex h = hankel1(r.m, r.x);
    CHECK(rel(h.real(), r.first) < 1e-11);
    CHECK(rel(h.imag(), r.second) < 1e-11);
  }
}

TEST_CASE("modified functions match frozen references") {
  for (const auto& r : kModified) {
    CAPTURE(r.m);
    CAPTURE(r.x);
    CHECK(rel(bessel_i(r.m, r.x), r.first) < 1e-12);
    CHECK(rel(macdonald_k(r.m, r.x), r.second) < 1e-12);
    CHECK(rel(bessel_i_scaled(r.m, r.x), r.first * std::exp(-r.x)) < 1e-12);
    CHECK(rel(macdonald_k_scaled(r.m, r.x), r.second * std::exp(r.x)) < 1e-12);
  }
}

TEST_CASE("J and I agree with the extended-precision power series for moderate arguments") {
  for (int m = 0; m <= 20; ++m) {
    for (double x : {0.05, 0.3, 1.0, 2.7, 6.0, 9.5}) {
      CAPTURE(m);
      CAPTURE(x);
      const double j = static_cast<double>(power_series(m, x, -1));
      const double i = static_cast<double>(power_series(m, x, +1));
      CHECK(std::abs(bessel_j(m, x) - j) <= 1e-13 * std::max(std::abs(j), 1e-3 * std::pow(x / 2, m) / std::tgamma(m + 1.0)));
      CHECK(rel(bessel_i(m, x), i) < 1e-13);
    }
  }
}

TEST_CASE("Wronskians hold over the working range") {
  double worst = 0.0;
  for (int m = -20; m <= 20; ++m) {
    for (int s = 0; s <= 200; ++s) {
      const double x = 0.1 * std::pow(500.0, s / 200.0);
      const double wj = bessel_j(m + 1, x) * bessel_y(m, x) - bessel_j(m, x) * bessel_y(m + 1, x);
      worst = std::max(worst, std::abs(wj * kPi * x / 2.0 - 1.0));
      const double wi = bessel_i(m, x) * macdonald_k(m + 1, x) + bessel_i(m + 1, x) * macdonald_k(m, x);
      worst = std::max(worst, std::abs(wi * x - 1.0));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("reflection identities for negative orders") {
  for (int m = 1; m <= 9; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    CHECK(bessel_j(-m, 3.3) == doctest::Approx(sign * bessel_j(m, 3.3)).epsilon(1e-14));
    CHECK(bessel_y(-m, 3.3) == doctest::Approx(sign * bessel_y(m, 3.3)).epsilon(1e-14));
    CHECK(bessel_i(-m, 3.3) == doctest::Approx(bessel_i(m, 3.3)).epsilon(1e-14));
    CHECK(macdonald_k(-m, 3.3) == doctest::Approx(macdonald_k(m, 3.3)).epsilon(1e-14));
  }
}

TEST_CASE("derivatives match centered differences") {
  const double h = 1e-5;
  for (Fn fn : {Fn::J, Fn::Y, Fn::H1, Fn::I, Fn::K}) {
    for (int m : {0, 1, 4}) {
      for (double x : {0.7, 3.0, 27.0}) {
        const Complex fd = (value(fn, m, x + h) - value(fn, m, x - h)) / (2 * h);
        const Complex d = deriv(fn, m, x);
        CHECK(std::abs(d - fd) < 1e-8 * std::max(1.0, std::abs(d)));
      }
    }
  }
}

TEST_CASE("bulk evaluators agree with scalar ones") {
  for (double x : {0.2, 4.0, 24.9, 25.1, 60.0}) {
    const auto c = cyl01(x);
    CHECK(c.j0 == doctest::Approx(bessel_j(0, x)).epsilon(1e-14));
    CHECK(c.y1 == doctest::Approx(bessel_y(1, x)).epsilon(1e-14));
    const auto md = mod01(x);
    CHECK(md.k1 == doctest::Approx(macdonald_k(1, x)).epsilon(1e-14));
    CHECK(md.i0 == doctest::Approx(bessel_i(0, x)).epsilon(1e-14));
    const auto seq = cyl_sequence(15, x);
    CHECK(seq.j[15] == doctest::Approx(bessel_j(15, x)).epsilon(1e-13));
    const auto ms = mod_sequence(15, x);
    CHECK(ms.k[15] == doctest::Approx(macdonald_k(15, x)).epsilon(1e-13));
  }
}

TEST_CASE("Y is continuous across the asymptotic crossover") {
  const double dx = kAsymptoticCrossover * 1e-12;
  const double below = bessel_y(0, kAsymptoticCrossover - dx);
  const double above = bessel_y(0, kAsymptoticCrossover);
  CHECK(std::abs(below - dx * bessel_y(1, kAsymptoticCrossover) - above) < 1e-13);
}

TEST_CASE("spherical functions match frozen references") {
  for (const auto& r : kSpherical) {
    CAPTURE(r.l);
    CAPTURE(r.x);
    CHECK(rel(spherical_j(r.l, r.x), r.j) < 1e-12);
    CHECK(rel(spherical_y(r.l, r.x), r.y) < 1e-12);
    CHECK(rel(spherical_k(r.l, r.x), r.k) < 1e-12);
  }
}

TEST_CASE("spherical Wronskian and derivatives") {
  for (int l = 0; l <= 15; ++l) {
    for (double x : {0.3, 1.0, 5.0, 20.0}) {
      const auto s = spherical_sequence(l, x);
      const double w = s.j[l] * s.dy[l] - s.dj[l] * s.y[l];
      CHECK(std::abs(w * x * x - 1.0) < 1e-12);
      const double h = 1e-5 * x;
      CHECK(spherical_k_deriv(l, x) ==
            doctest::Approx((spherical_k(l, x + h) - spherical_k(l, x - h)) / (2 * h)).epsilon(1e-7));
      const Complex dh = spherical_h1_deriv(l, x);
      CHECK(dh.real() == doctest::Approx(s.dj[l]).epsilon(1e-13));
      CHECK(dh.imag() == doctest::Approx(s.dy[l]).epsilon(1e-13));
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_j(0, 0.0), DomainError);
  CHECK_THROWS_AS(macdonald_k(2, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(0, 800.0), std::overflow_error);
  CHECK(std::isfinite(bessel_i_scaled(3, 800.0)));
  CHECK(std::isfinite(macdonald_k_scaled(3, 800.0)));
}

TEST_CASE("Wronskians in derivative form") {
  for (int m : {0, 3, 20}) {
    for (double x : {0.1, 1.0, 13.0, 50.0}) {
      const double wjy = bessel_j(m, x) * deriv(Fn::Y, m, x).real() - deriv(Fn::J, m, x).real() * bessel_y(m, x);
      CHECK(std::abs(wjy * kPi * x / 2 - 1) < 1e-12);
      const double wik = bessel_i(m, x) * deriv(Fn::K, m, x).real() - deriv(Fn::I, m, x).real() * macdonald_k(m, x);
      CHECK(std::abs(wik * x + 1) < 1e-12);
    }
  }
}

TEST_CASE("three-term recurrences") {
  for (int m = 1; m < 12; ++m) {
    const double x = 4.2;
    const Complex h = (2.0 * m / x) * hankel1(m, x) - hankel1(m - 1, x);
    CHECK(std::abs(h - hankel1(m + 1, x)) < 1e-12 * std::abs(hankel1(m + 1, x)));
    const double k = (2.0 * m / x) * macdonald_k(m, x) + macdonald_k(m - 1, x);
    CHECK(rel(k, macdonald_k(m + 1, x)) < 1e-13);
  }
}

TEST_CASE("small and large argument behavior") {
  // Y_0 ~ (2/pi) ln x as x -> 0+
  const double r1 = bessel_y(0, 1e-6) / ((2 / kPi) * std::log(1e-6));
  const double r2 = bessel_y(0, 1e-9) / ((2 / kPi) * std::log(1e-9));
  CHECK(std::abs(r2 - 1) < std::abs(r1 - 1));
  CHECK(std::abs(r2 - 1) < 0.05);
  CHECK(std::abs(std::abs(hankel1(0, 50.0)) / std::sqrt(2 / (kPi * 50.0)) - 1) < 0.01);
  CHECK(std::abs(macdonald_k(0, 30.0) / (std::sqrt(kPi / 60.0) * std::exp(-30.0)) - 1) < 0.02);
  CHECK(hankel1(-3, 2.0) == -hankel1(3, 2.0));
  // relative deviation from the leading asymptotic term decays like 1/x
  std::vector<double> dev;
  for (double x : {20.0, 40.0, 80.0}) {
    dev.push_back(std::abs(macdonald_k(0, x) / (std::sqrt(kPi / (2 * x)) * std::exp(-x)) - 1) * x);
  }
  CHECK(dev[1] == doctest::Approx(dev[0]).epsilon(0.05));
  CHECK(dev[2] == doctest::Approx(dev[1]).epsilon(0.05));
}

TEST_CASE("spherical closed forms") {
  for (double x : {0.4, 2.0, 17.0}) {
    const Complex h0 = spherical_h1(0, x);
    const Complex want = -kI * std::exp(kI * x) / x;
    CHECK(std::abs(h0 - want) < 1e-14 * std::abs(want));
    CHECK(rel(spherical_k(0, x), kPi / (2 * x) * std::exp(-x)) < 1e-14);
  }
  // h_1(x) = -e^{ix}(x + i)/x^2
  const Complex h1 = spherical_h1(1, 2.0);
  const Complex want = -std::exp(2.0 * kI) * (2.0 + kI) / 4.0;
  CHECK(std::abs(h1 - want) < 1e-12 * std::abs(want));
}
