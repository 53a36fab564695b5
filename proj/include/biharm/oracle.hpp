#pragma once

// Separable series solutions of the clamped-plate scattering problem for a
// plane wave hitting a disk (2D) or a sphere (3D, incidence along the z axis).
//
// 2D: u^s = sum_m (a_m H_m(kr) + b_m K_m(kr)) e^{im(theta - alpha)}
// 3D: u^s = sum_l (a_l h_l(kr) + b_l k_l(kr)) P_l(cos theta)
//
// Each mode solves a 2x2 system enforcing u^s = -u^i and d_r u^s = -d_r u^i on
// r = R. Since Delta acts as -k^2 on the H (h) part and +k^2 on the K (k)
// part, u_+ = 2k^2 sum b K and u_- = -2k^2 sum a H.

#include <vector>

#include "biharm/fields.hpp"

namespace biharm {

inline constexpr int kOracleMaxModes = 120;
inline constexpr double kOracleMaxArgument = 300.0;

struct DiskProblem {
  double radius = 1.0;
  double k = 1.0;
  double angle = 0.0;       ///< incident direction (cos, sin)
  double amplitude = 1.0;   ///< incident field amplitude
};

/// Coefficients for orders -M..M, stored at index m + M.
struct DiskCoefficients {
  DiskProblem problem;
  int order = 0;  ///< truncation M
  std::vector<Complex> a;
  std::vector<Complex> b;
  double max_mode_residual = 0.0;  ///< worst residual of the per-mode 2x2 systems

  Complex a_at(int m) const { return a[static_cast<std::size_t>(m + order)]; }
  Complex b_at(int m) const { return b[static_cast<std::size_t>(m + order)]; }
};

/// u^s, Delta u^s and their radial derivatives at one point.
struct OracleSample {
  Complex u;
  Complex lap_u;
  Complex dr_u;
  Complex dr_lap_u;

  Complex u_plus(double k) const { return lap_u + k * k * u; }
  Complex u_minus(double k) const { return lap_u - k * k * u; }
};

/// Throws DomainError for k R >= 300 or when the series does not converge within max_modes.
DiskCoefficients disk_solve(const DiskProblem& problem, int max_modes = kOracleMaxModes);
/// r >= R required; r = R gives the boundary traces.
OracleSample disk_eval(const DiskCoefficients& c, double r, double theta);
/// Incident plane wave and its radial derivatives, for boundary self-checks.
OracleSample disk_incident(const DiskProblem& p, double r, double theta);
FarFieldPair disk_farfield(const DiskCoefficients& c, const std::vector<Vec2>& directions);

struct SphereProblem {
  double radius = 1.0;
  double k = 1.0;
};

struct SphereCoefficients {
  SphereProblem problem;
  int order = 0;  ///< truncation L
  std::vector<Complex> a;
  std::vector<Complex> b;
  double max_mode_residual = 0.0;
};

SphereCoefficients sphere_solve(const SphereProblem& problem, int max_modes = kOracleMaxModes);
/// theta is the polar angle from the incidence axis; r >= R.
OracleSample sphere_eval(const SphereCoefficients& c, double r, double theta);
OracleSample sphere_incident(const SphereProblem& p, double r, double theta);

/// Far-field pair as functions of the polar angle.
struct SphereFarField {
  std::vector<double> theta;
  CVector ff_plus;
  CVector ff_minus;
};
SphereFarField sphere_farfield(const SphereCoefficients& c, const std::vector<double>& theta);

}  // namespace biharm
