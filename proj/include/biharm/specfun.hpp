#pragma once

// Cylinder and spherical Bessel-type functions of real positive argument.
//
// Integer orders only (negative orders go through the reflection identities);
// half-integer orders appear only through the spherical functions
// h_l = sqrt(pi/(2x)) H_{l+1/2}, k_l = sqrt(pi/(2x)) K_{l+1/2}.
//
// Regimes:
//   J_m      downward Miller recurrence, normalized by J_0 + 2 sum J_{2k} = 1
//   Y_0, Y_1 Neumann series over the Miller values for x < 25, Hankel
//            asymptotic expansion for x >= 25; Y_m by upward recurrence
//   K_0, K_1 trapezoid rule on exp(-x cosh t) cosh(nu t); K_m upward
//   I_m      downward Miller recurrence normalized by e^{-x}(I_0 + 2 sum I_k) = 1
//
// Every function is pure and thread-safe.

#include <vector>

#include "biharm/common.hpp"

namespace biharm::specfun {

/// Argument at which Y_0, Y_1 switch from the Neumann series to the asymptotic expansion.
inline constexpr double kAsymptoticCrossover = 25.0;

/// Above this argument the unscaled I_m overflows; use the scaled variants.
inline constexpr double kOverflowArgument = 700.0;

enum class Fn { J, Y, H1, I, K };

double bessel_j(int m, double x);
double bessel_y(int m, double x);
Complex hankel1(int m, double x);
double bessel_i(int m, double x);
/// e^{-x} I_m(x); finite for every x > 0.
double bessel_i_scaled(int m, double x);
double macdonald_k(int m, double x);
/// e^{x} K_m(x); finite for every x > 0.
double macdonald_k_scaled(int m, double x);

/// Derivative with respect to x of the function selected by `fn`, order m.
Complex deriv(Fn fn, int m, double x);
/// Value of the function selected by `fn` (real functions have zero imaginary part).
Complex value(Fn fn, int m, double x);

/// J_0, J_1, Y_0, Y_1 in one pass; the kernels need all four at every node pair.
struct Cyl01 {
  double j0, j1, y0, y1;
};
Cyl01 cyl01(double x);

/// I_0, I_1, K_0, K_1 in one pass.
struct Mod01 {
  double i0, i1, k0, k1;
};
Mod01 mod01(double x);

/// Orders 0..mmax of J and Y at one argument.
struct CylSequence {
  std::vector<double> j;
  std::vector<double> y;
};
CylSequence cyl_sequence(int mmax, double x);

/// Orders 0..mmax of I and K at one argument (unscaled).
struct ModSequence {
  std::vector<double> i;
  std::vector<double> k;
};
ModSequence mod_sequence(int mmax, double x);

/// K_0..K_mmax alone; unlike mod_sequence it has no upper limit on x (values underflow to 0).
std::vector<double> macdonald_k_sequence(int mmax, double x);

double spherical_j(int l, double x);
double spherical_y(int l, double x);
Complex spherical_h1(int l, double x);
double spherical_k(int l, double x);
Complex spherical_h1_deriv(int l, double x);
double spherical_j_deriv(int l, double x);
double spherical_k_deriv(int l, double x);

/// Orders 0..lmax of j_l, y_l, k_l and their derivatives.
struct SphericalSequence {
  std::vector<double> j, y, k;
  std::vector<double> dj, dy, dk;
};
SphericalSequence spherical_sequence(int lmax, double x);

}  // namespace biharm::specfun
