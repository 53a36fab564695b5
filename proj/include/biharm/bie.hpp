#pragma once

// Nystrom discretization of the clamped-plate boundary system.
//
// Unknowns are point values of (phi, psi) at the 2n grid nodes; the scattered
// field is represented as
//
//   u_+ = SL_ik phi - DL_ik psi + i eta SL_ik (S_0^2 psi)     (Delta - k^2) u_+ = 0
//   u_- = SL_k  phi - DL_k  psi                                (Delta + k^2) u_- = 0
//   u   = (u_+ - u_-) / (2k^2)
//
// and the Dirichlet conditions u = f, d_n u = g on the boundary give
//
//   [ S_ik - S_k       -K_ik + K_k + i eta S_ik S_0^2                   ] [phi]   [ 2k^2 f]
//   [ -K'_ik + K'_k    T_ik - T_k - i eta K'_ik S_0^2 + (i eta/2) S_0^2 ] [psi] = [-2k^2 g]
//
// Weakly singular kernels are split as L1(t, s) ln(4 sin^2((t - s)/2)) + L2(t, s)
// and integrated with the exact trigonometric weights for the logarithmic part.

#include <memory>

#include <Eigen/LU>

#include "biharm/geometry.hpp"
#include "biharm/incident.hpp"
#include "biharm/kernels.hpp"

namespace biharm {

struct SolverConfig {
  double k = 1.0;
  double eta = 1.0;
  int n = 64;
  int workers = 1;  ///< threads used for row-partitioned assembly

  /// Throws ConfigError on k <= 0, eta == 0 (or non-finite), n < 8, workers < 1.
  void validate() const;
};

enum class BoundaryOp {
  S,      ///< single layer
  K,      ///< double layer
  Kp,     ///< adjoint double layer (normal derivative of the single layer)
  TDiff,  ///< T_ik - T_k, the hypersingular difference; pass the Helmholtz wave number
};

/// Weights R_j, j = 0..2n-1, of the logarithmic quadrature rule
/// int_0^{2pi} ln(4 sin^2((t_i - s)/2)) f(s) ds ~ sum_j R_{|i-j|} f(t_j).
RVector kress_weights(int n);

/// Dense Nystrom matrix of one boundary operator on the grid.
/// The Laplace branch is only available for S.
CMatrix discretize_op(BoundaryOp op, const WaveNumber& b, const QuadratureGrid& grid, int workers = 1);

/// Spectral differentiation matrix d/dt on the 2n-point periodic grid.
RMatrix trig_diff_matrix(int n);

/// Hypersingular operator T_b (normal derivative of the double layer) via the
/// tangential-derivative identity, using a discretized single layer for the same b.
CMatrix hypersingular_op(const WaveNumber& b, const QuadratureGrid& grid, const CMatrix& single_layer);

/// Discretized factors of the system; kept for trace reconstruction.
struct BoundaryOperators {
  CMatrix s_k, s_ik, s_0;
  CMatrix k_k, k_ik;
  CMatrix kp_k, kp_ik;
  CMatrix t_diff;
  CMatrix s0_squared;
};

/// The 4n x 4n system for one (curve, k, eta, n).
struct SystemMatrix {
  SolverConfig config;
  QuadratureGrid grid;
  BoundaryOperators ops;
  CMatrix matrix;

  Eigen::Index nodes() const { return grid.size(); }
};

SystemMatrix assemble(const BoundaryCurve& curve, const SolverConfig& cfg);

/// Boundary data f = -u^i, g = -d_n u^i on the nodes.
struct DirichletData {
  CVector f;
  CVector g;
};

/// Throws ConfigError for point sources inside or on the curve.
DirichletData dirichlet_data(const IncidentField& inc, const BoundaryCurve& curve, const QuadratureGrid& grid,
                             double k);
/// Stacked right-hand side (2k^2 f, -2k^2 g).
CVector rhs_from_data(const DirichletData& data, double k);
CVector rhs_from_incident(const IncidentField& inc, const BoundaryCurve& curve, const QuadratureGrid& grid,
                          double k);

struct DensityPair {
  CVector phi;
  CVector psi;
};

struct SolveReport {
  double residual = 0.0;  ///< ||M x - b|| / ||b|| (0 for b = 0)
  double rcond = 0.0;     ///< reciprocal 1-norm condition estimate
};

inline constexpr double kMaxSolveResidual = 1e-10;

/// LU factorization of an assembled system, reusable across right-hand sides.
class Solver {
 public:
  /// Throws SingularSystemError if the matrix is singular to working precision.
  explicit Solver(std::shared_ptr<const SystemMatrix> system);

  /// Throws SingularSystemError if the refined residual stays above kMaxSolveResidual.
  DensityPair solve(const CVector& rhs, SolveReport* report = nullptr) const;

  double rcond() const { return rcond_; }
  const SystemMatrix& system() const { return *system_; }
  std::shared_ptr<const SystemMatrix> system_ptr() const { return system_; }

 private:
  std::shared_ptr<const SystemMatrix> system_;
  Eigen::PartialPivLU<CMatrix> lu_;
  double rcond_ = 0.0;
};

/// One-shot factor and solve.
DensityPair solve(const SystemMatrix& system, const CVector& rhs, SolveReport* report = nullptr);

/// Smallest singular value of the assembled matrix (dense SVD).
double smallest_singular_value(const SystemMatrix& system);

}  // namespace biharm
