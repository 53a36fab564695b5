#pragma once

// Numerical checks of identities that every radiating clamped-plate solution
// satisfies. Each check returns a CheckReport with one entry per compared
// quantity; the report passes when every entry does.

#include <functional>
#include <string>
#include <vector>

#include "biharm/fields.hpp"
#include "biharm/incident.hpp"
#include "biharm/oracle.hpp"

namespace biharm {

inline constexpr double kTwoSolveTolerance = 1e-5;
inline constexpr double kSingleSolveTolerance = 1e-8;
/// Below this scale an entry is judged on its absolute residual.
inline constexpr double kResidualScaleFloor = 1e-12;

struct CheckEntry {
  std::string label;
  Complex left;
  Complex right;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string id;
  std::string digest;  ///< hash of the inputs, for matching reports across runs
  double tolerance = 0.0;
  std::vector<CheckEntry> entries;
  double abs_residual = 0.0;  ///< max over entries
  double rel_residual = 0.0;  ///< max over entries
  bool pass = true;
  std::string note;

  /// Appends an entry and updates the aggregate residuals and pass flag.
  void add(std::string label, Complex left, Complex right);
  std::string to_json() const;
};

/// 64-bit FNV-1a of a description string, as 16 hex digits.
std::string digest_of(const std::string& text);

/// Boundary integral of Green's formula for the biharmonic equation,
///   -int (u dn Delta G + Delta u dn G - G dn Delta u - Delta G dn u) ds,
/// with G = G_k(|x - y|) and derivatives taken at y. Equals u^s(x) for x outside.
Complex representation_integral(const BoundaryTraces& traces, const QuadratureGrid& grid, double k, const Vec2& x);

/// Compares representation_integral with known field values at each point.
CheckReport check_representation(const BoundaryTraces& traces, const QuadratureGrid& grid, double k,
                                 const std::vector<Vec2>& points, const std::vector<Complex>& reference,
                                 double tolerance = kSingleSolveTolerance);
/// Same with traces from the jump relations and reference values from eval_scattered.
/// Throws NearBoundaryError / DomainError like eval_scattered.
CheckReport check_representation(const Solution& sol, const BoundaryCurve& curve, const std::vector<Vec2>& points,
                                 double tolerance = kSingleSolveTolerance);

/// The two boundary integrals of the flux identity.
///   first  = int (u dn conj(Delta u) + Delta u dn conj(u)) ds
///   second = int (Delta u dn conj(Delta u) + k^4 u dn conj(u)) ds
struct EnergyIntegrals {
  Complex first;
  Complex second;
};

EnergyIntegrals energy_integrals(const BoundaryTraces& traces, const QuadratureGrid& grid, double k);

/// Entry "identity": k^2 Im(first) against -Im(second). Entry "flux": the
/// outgoing flux -2k Im(second), which must be >= -sign_tolerance; stored as
/// left = flux, right = max(flux, 0) so a negative flux shows up as a residual.
CheckReport check_energy(const BoundaryTraces& traces, const QuadratureGrid& grid, double k,
                         double tolerance = kSingleSolveTolerance, double sign_tolerance = 1e-10);

/// Scattered field and far field of a Dirichlet solve for one incident field,
/// sharing one factorization across the incident fields of a check.
struct ScatteringRun {
  IncidentField incident;
  Solution solution;
};

/// Solves the clamped problem for each incident field with one LU factorization.
std::vector<ScatteringRun> solve_incidents(const BoundaryCurve& curve, const SolverConfig& cfg,
                                           const std::vector<IncidentField>& incidents);

/// 2 sqrt(2 pi) sqrt(k) / i, the factor in front of the far-field side of the
/// point-source reciprocity relations in the plane.
Complex pointsource_reciprocity_factor(double k);

/// Scattered fields at y for plane waves along xhat (branches k and ik) against
/// far fields at -xhat for point sources at y (branches k and ik).
CheckReport check_reciprocity_pointsource(const BoundaryCurve& curve, const SolverConfig& cfg, const Vec2& y,
                                          const Vec2& xhat, double tolerance = kTwoSolveTolerance);

/// Far fields at xhat for plane waves along yhat against far fields at -yhat
/// for plane waves along -xhat, both branches.
CheckReport check_reciprocity_farfield(const BoundaryCurve& curve, const SolverConfig& cfg, const Vec2& xhat,
                                       const Vec2& yhat, double tolerance = kTwoSolveTolerance);

/// Scattered fields at x for point sources at y against the swapped roles.
/// Throws ConfigError if x and y coincide.
CheckReport check_symmetry(const BoundaryCurve& curve, const SolverConfig& cfg, const Vec2& x, const Vec2& y,
                           double tolerance = kTwoSolveTolerance);

/// Field sampler returning u^s, Delta u^s and their radial derivatives at (r, theta).
using RadialSampler = std::function<OracleSample(double r, double theta)>;

inline constexpr int kRadiationDirections = 64;

/// For each radius, max over 64 directions of sqrt(r) |d_r w - i k w| for
/// w = u^s (entries "u@r") and w = Delta u^s (entries "lap_u@r"); left holds
/// the value at that radius, right the value at the previous radius. Passes
/// when both sequences strictly decrease. Throws DomainError unless the radii
/// increase.
CheckReport check_radiation(const RadialSampler& sampler, double k, const std::vector<double>& radii);
CheckReport check_radiation(const Solution& sol, const BoundaryCurve& curve, const std::vector<double>& radii);

/// Boundary traces of a disk oracle solution on the nodes of a circle grid.
BoundaryTraces disk_traces(const DiskCoefficients& c, const QuadratureGrid& grid);

}  // namespace biharm
