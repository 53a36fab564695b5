#pragma once

#include <memory>
#include <vector>

#include "biharm/bie.hpp"

namespace biharm {

/// Solved densities together with the system they belong to.
struct Solution {
  std::shared_ptr<const SystemMatrix> system;
  CVector phi;
  CVector psi;
  CVector chi;  ///< S_0^2 psi, the density of the coupling term

  const QuadratureGrid& grid() const { return system->grid; }
  double k() const { return system->config.k; }
  double eta() const { return system->config.eta; }
  /// Density of SL_ik in the plus potential: phi + i eta chi.
  CVector plus_density() const { return phi + (kI * eta()) * chi; }
};

Solution make_solution(std::shared_ptr<const SystemMatrix> system, DensityPair densities);

/// Field values at one exterior point. u and lap_u are formed from u_plus and
/// u_minus as (u_+ - u_-)/(2k^2) and (u_+ + u_-)/2.
struct FieldSample {
  Vec2 point = Vec2::Zero();
  Complex u_plus;
  Complex u_minus;
  Complex u;
  Complex lap_u;
};

FieldSample make_sample(const Vec2& x, Complex u_plus, Complex u_minus, double k);

struct FieldGradient {
  Vec2c u_plus;
  Vec2c u_minus;
  Vec2c u;
  Vec2c lap_u;
};

/// Points closer to the boundary than this are rejected: 3 (pi/n) max|x'|.
double near_boundary_cutoff(const QuadratureGrid& grid);

/// Throws NearBoundaryError within the cutoff and DomainError inside the obstacle.
FieldSample eval_scattered(const Solution& sol, const BoundaryCurve& curve, const Vec2& x);
FieldGradient eval_scattered_gradient(const Solution& sol, const BoundaryCurve& curve, const Vec2& x);

/// Far-field pair on a list of unit directions.
struct FarFieldPair {
  std::vector<Vec2> directions;
  CVector ff_plus;
  CVector ff_minus;
};

/// count directions at angles 2 pi j / count.
std::vector<Vec2> uniform_directions(int count);
double direction_angle(const Vec2& d);

/// From the densities, using the analytic far fields of the layer potentials.
FarFieldPair farfield(const Solution& sol, const std::vector<Vec2>& directions);

/// Exterior boundary traces of u_+, u_- and their normal derivatives from the
/// jump relations, plus the derived traces of u, Delta u.
struct BoundaryTraces {
  CVector u_plus, dn_u_plus;
  CVector u_minus, dn_u_minus;
  CVector u, dn_u;
  CVector lap_u, dn_lap_u;
};

BoundaryTraces boundary_traces(const Solution& sol);
/// Combine plus/minus traces into u, Delta u traces.
BoundaryTraces traces_from_split(CVector u_plus, CVector dn_u_plus, CVector u_minus, CVector dn_u_minus, double k);

/// Far-field pair from boundary traces via Green's representation.
FarFieldPair farfield_from_traces(const BoundaryTraces& tr, const QuadratureGrid& grid, double k,
                                  const std::vector<Vec2>& directions);

struct GridSpec {
  double xmin = -2.0, xmax = 2.0;
  double ymin = -2.0, ymax = 2.0;
  int nx = 41, ny = 41;

  void validate() const;
};

struct GridSample {
  FieldSample sample;
  bool masked = false;  ///< inside the obstacle or within the near-boundary cutoff
};

/// Row-major samples (x fastest). Interior and near-boundary points are masked.
std::vector<GridSample> field_grid(const Solution& sol, const BoundaryCurve& curve, const GridSpec& spec,
                                   int workers = 1);

}  // namespace biharm
