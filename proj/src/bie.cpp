#include "biharm/bie.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "biharm/parallel.hpp"
#include "biharm/specfun.hpp"

namespace biharm {

namespace {

constexpr double kInv4Pi = 1.0 / (4.0 * kPi);
constexpr double kInv2Pi = 1.0 / (2.0 * kPi);

// Selection of operators computed by one fused pass over node pairs.
enum Slot { kSk, kSik, kKk, kKik, kKpk, kKpik, kTdiff, kSlotCount };

// Log-split kernel value at one node pair: L (full kernel) and L1 (log coefficient).
struct Split {
  Complex full;
  Complex log_part;
};

struct PairGeometry {
  Vec2 d;
  double r;
  double a;    // n(x) . d
  double b;    // n(y) . d
  double nn;   // n(x) . n(y)
};

// Fused assembly of the k-dependent operators selected in `wanted`.
void fill_operators(const QuadratureGrid& g, double k, const std::array<bool, kSlotCount>& wanted,
                    std::array<CMatrix, kSlotCount>& out, int workers) {
  const Eigen::Index m = g.size();
  const RVector weights = kress_weights(g.n);
  const double h = g.weight();
  for (int s = 0; s < kSlotCount; ++s) {
    if (wanted[static_cast<std::size_t>(s)]) out[static_cast<std::size_t>(s)].resize(m, m);
  }
  const bool need_cyl = wanted[kSk] || wanted[kKk] || wanted[kKpk] || wanted[kTdiff];
  const bool need_mod = wanted[kSik] || wanted[kKik] || wanted[kKpik] || wanted[kTdiff];
  const double k2 = k * k;
  // second radial derivative at 0 of the smooth part of Phi_ik - Phi_k
  const Complex e2 = k2 * (-(std::log(k / 2.0) + kEulerGamma) * kInv2Pi + kInv2Pi + kI / 8.0);

  auto put = [&](Slot s, Eigen::Index i, Eigen::Index j, const Split& v, double log_weight, double log_term) {
    // A_ij = R_{i-j} L1 + (pi/n) (L - L1 ln(4 sin^2((t_i - t_j)/2)))
    out[s](i, j) = log_weight * v.log_part + h * (v.full - v.log_part * log_term);
  };
  auto put_diag = [&](Slot s, Eigen::Index i, const Complex& l1, const Complex& l2) {
    out[s](i, i) = weights(0) * l1 + h * l2;
  };

  parallel_for(m, workers, [&](Eigen::Index i) {
    const Vec2 xi = g.x.col(i);
    const Vec2 ni = g.normal.col(i);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double jac = g.jacobian(j);
      if (i == j) {
        const double kappa = g.curvature(i);
        const double dl = -kappa * jac * kInv4Pi;
        const double lj = std::log(jac);
        if (wanted[kSk]) {
          put_diag(kSk, i, -kInv4Pi * jac,
                   (0.25 * kI - kEulerGamma * kInv2Pi - kInv2Pi * std::log(k * jac / 2.0)) * jac);
        }
        if (wanted[kSik]) {
          put_diag(kSik, i, -kInv4Pi * jac, (-kEulerGamma * kInv2Pi - kInv2Pi * std::log(k * jac / 2.0)) * jac);
        }
        if (wanted[kKk]) put_diag(kKk, i, 0.0, dl);
        if (wanted[kKik]) put_diag(kKik, i, 0.0, dl);
        if (wanted[kKpk]) put_diag(kKpk, i, 0.0, dl);
        if (wanted[kKpik]) put_diag(kKpik, i, 0.0, dl);
        if (wanted[kTdiff]) {
          put_diag(kTdiff, i, k2 * kInv4Pi * jac, (k2 * kInv4Pi - e2 + k2 * kInv2Pi * lj) * jac);
        }
        continue;
      }
      PairGeometry p;
      p.d = xi - g.x.col(j);
      p.r = p.d.norm();
      const Vec2 nj = g.normal.col(j);
      p.a = ni.dot(p.d);
      p.b = nj.dot(p.d);
      p.nn = ni.dot(nj);
      const double z = k * p.r;
      const double sn = std::sin(0.5 * (g.t(i) - g.t(j)));
      const double log_term = std::log(4.0 * sn * sn);
      const Eigen::Index diff = (i - j + m) % m;
      const double rw = weights(diff);

      specfun::Cyl01 c{};
      specfun::Mod01 md{};
      if (need_cyl) c = specfun::cyl01(z);
      if (need_mod) md = specfun::mod01(z);
      const Complex h0(c.j0, c.y0);
      const Complex h1(c.j1, c.y1);

      if (wanted[kSk]) put(kSk, i, j, {0.25 * kI * h0 * jac, -kInv4Pi * c.j0 * jac}, rw, log_term);
      if (wanted[kSik]) put(kSik, i, j, {kInv2Pi * md.k0 * jac, -kInv4Pi * md.i0 * jac}, rw, log_term);
      const double br = p.b / p.r;
      const double ar = p.a / p.r;
      if (wanted[kKk]) {
        put(kKk, i, j, {0.25 * kI * k * h1 * br * jac, -k * kInv4Pi * c.j1 * br * jac}, rw, log_term);
      }
      if (wanted[kKik]) {
        put(kKik, i, j, {k * kInv2Pi * md.k1 * br * jac, k * kInv4Pi * md.i1 * br * jac}, rw, log_term);
      }
      if (wanted[kKpk]) {
        put(kKpk, i, j, {-0.25 * kI * k * h1 * ar * jac, k * kInv4Pi * c.j1 * ar * jac}, rw, log_term);
      }
      if (wanted[kKpik]) {
        put(kKpik, i, j, {-k * kInv2Pi * md.k1 * ar * jac, -k * kInv4Pi * md.i1 * ar * jac}, rw, log_term);
      }
      if (wanted[kTdiff]) {
        // radial derivatives of Phi_ik - Phi_k and of its log coefficient F = -(I0 - J0)/(2pi)
        const RadialKernel e{kInv2Pi * md.k0 - 0.25 * kI * h0,
                             -k * kInv2Pi * md.k1 + 0.25 * kI * k * h1,
                             k2 * kInv2Pi * (md.k0 + md.k1 / z) + 0.25 * kI * k2 * (h0 - h1 / z)};
        const RadialKernel f{0.0, -k * kInv2Pi * (md.i1 + c.j1),
                             -k2 * kInv2Pi * (md.i0 - md.i1 / z + c.j0 - c.j1 / z)};
        const Complex full = mixed_normal_derivative(e, p.d, p.r, ni, nj) * jac;
        const Complex lp = 0.5 * mixed_normal_derivative(f, p.d, p.r, ni, nj) * jac;
        put(kTdiff, i, j, {full, lp}, rw, log_term);
      }
    }
  });
}

CMatrix laplace_single_layer(const QuadratureGrid& g, int workers) {
  const Eigen::Index m = g.size();
  const RVector weights = kress_weights(g.n);
  const double h = g.weight();
  CMatrix out(m, m);
  parallel_for(m, workers, [&](Eigen::Index i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double jac = g.jacobian(j);
      const double l1 = -kInv4Pi * jac;
      if (i == j) {
        out(i, i) = weights(0) * l1 + h * (-kInv2Pi * std::log(jac) * jac);
        continue;
      }
      const double r = (g.x.col(i) - g.x.col(j)).norm();
      const double sn = std::sin(0.5 * (g.t(i) - g.t(j)));
      const double full = -kInv2Pi * std::log(r) * jac;
      out(i, j) = weights((i - j + m) % m) * l1 + h * (full - l1 * std::log(4.0 * sn * sn));
    }
  });
  return out;
}

Slot slot_for(BoundaryOp op, Branch branch) {
  const bool helm = branch == Branch::Helmholtz;
  switch (op) {
    case BoundaryOp::S: return helm ? kSk : kSik;
    case BoundaryOp::K: return helm ? kKk : kKik;
    case BoundaryOp::Kp: return helm ? kKpk : kKpik;
    case BoundaryOp::TDiff: return kTdiff;
  }
  return kSk;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("solver: k must be positive, got " + std::to_string(k));
  if (!std::isfinite(eta) || eta == 0.0) throw ConfigError("solver: eta must be a nonzero real number");
  if (n < kMinGridParameter) {
    throw ConfigError("solver: n must be at least " + std::to_string(kMinGridParameter) + ", got " + std::to_string(n));
  }
  if (workers < 1) throw ConfigError("solver: workers must be at least 1");
}

RVector kress_weights(int n) {
  const Eigen::Index m = 2 * n;
  RVector r(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    double s = 0.0;
    for (int p = 1; p < n; ++p) s += std::cos(p * j * kPi / n) / p;
    const double alt = (j % 2 == 0) ? 1.0 : -1.0;
    r(j) = -2.0 * kPi / n * s - alt * kPi / (static_cast<double>(n) * n);
  }
  return r;
}

CMatrix discretize_op(BoundaryOp op, const WaveNumber& b, const QuadratureGrid& grid, int workers) {
  if (b.branch == Branch::Laplace) {
    if (op != BoundaryOp::S) throw DomainError("discretize_op: the Laplace branch is only available for S");
    return laplace_single_layer(grid, workers);
  }
  if (!(b.k > 0.0)) throw DomainError("discretize_op: wave number must be positive");
  if (op == BoundaryOp::TDiff && b.branch != Branch::Helmholtz) {
    throw DomainError("discretize_op: T_ik - T_k is requested with the Helmholtz wave number k");
  }
  std::array<bool, kSlotCount> wanted{};
  const Slot s = slot_for(op, b.branch);
  wanted[s] = true;
  std::array<CMatrix, kSlotCount> out;
  fill_operators(grid, b.k, wanted, out, workers);
  return std::move(out[s]);
}

RMatrix trig_diff_matrix(int n) {
  const Eigen::Index m = 2 * n;
  RMatrix d = RMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i == j) continue;
      const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = 0.5 * sign / std::tan(0.5 * kPi * static_cast<double>(i - j) / n);
    }
  }
  return d;
}

CMatrix hypersingular_op(const WaveNumber& b, const QuadratureGrid& grid, const CMatrix& single_layer) {
  if (b.branch == Branch::Laplace) throw DomainError("hypersingular_op: Laplace branch not supported");
  const RMatrix d = trig_diff_matrix(grid.n);
  const RVector inv_jac = grid.jacobian.cwiseInverse();
  // d/ds = (1/|x'|) d/dt
  const RMatrix ds = inv_jac.asDiagonal() * d;
  const double kk = b.branch == Branch::Helmholtz ? b.k * b.k : -b.k * b.k;
  const RVector n1 = grid.normal.row(0).transpose();
  const RVector n2 = grid.normal.row(1).transpose();
  CMatrix t = ds.cast<Complex>() * single_layer * ds.cast<Complex>();
  t += kk * (n1.asDiagonal() * single_layer * n1.asDiagonal() + n2.asDiagonal() * single_layer * n2.asDiagonal());
  return t;
}

SystemMatrix assemble(const BoundaryCurve& curve, const SolverConfig& cfg) {
  cfg.validate();
  SystemMatrix sys;
  sys.config = cfg;
  sys.grid = make_grid(curve, cfg.n);
  std::array<bool, kSlotCount> wanted;
  wanted.fill(true);
  std::array<CMatrix, kSlotCount> out;
  fill_operators(sys.grid, cfg.k, wanted, out, cfg.workers);
  BoundaryOperators& ops = sys.ops;
  ops.s_k = std::move(out[kSk]);
  ops.s_ik = std::move(out[kSik]);
  ops.k_k = std::move(out[kKk]);
  ops.k_ik = std::move(out[kKik]);
  ops.kp_k = std::move(out[kKpk]);
  ops.kp_ik = std::move(out[kKpik]);
  ops.t_diff = std::move(out[kTdiff]);
  ops.s_0 = laplace_single_layer(sys.grid, cfg.workers);
  ops.s0_squared = ops.s_0 * ops.s_0;

  const Eigen::Index m = sys.grid.size();
  const Complex ieta = kI * cfg.eta;
  sys.matrix.resize(2 * m, 2 * m);
  sys.matrix.topLeftCorner(m, m) = ops.s_ik - ops.s_k;
  sys.matrix.topRightCorner(m, m) = -ops.k_ik + ops.k_k + ieta * (ops.s_ik * ops.s0_squared);
  sys.matrix.bottomLeftCorner(m, m) = -ops.kp_ik + ops.kp_k;
  sys.matrix.bottomRightCorner(m, m) =
      ops.t_diff - ieta * (ops.kp_ik * ops.s0_squared) + (0.5 * ieta) * ops.s0_squared;
  if (!sys.matrix.allFinite()) throw DomainError("assemble: non-finite matrix entries");
  return sys;
}

DirichletData dirichlet_data(const IncidentField& inc, const BoundaryCurve& curve, const QuadratureGrid& grid,
                             double k) {
  if (inc.is_point_source()) {
    const double dist = curve.distance(inc.source);
    if (curve.contains(inc.source) || dist < 1e-8) {
      throw ConfigError("incident point source must lie strictly outside the obstacle");
    }
  }
  const Eigen::Index m = grid.size();
  DirichletData data{CVector(m), CVector(m)};
  for (Eigen::Index j = 0; j < m; ++j) {
    const IncidentSample s = eval_incident(inc, k, grid.x.col(j));
    data.f(j) = -s.value;
    data.g(j) = -(s.gradient(0) * grid.normal(0, j) + s.gradient(1) * grid.normal(1, j));
  }
  return data;
}

CVector rhs_from_data(const DirichletData& data, double k) {
  const Eigen::Index m = data.f.size();
  CVector rhs(2 * m);
  rhs.head(m) = (2.0 * k * k) * data.f;
  rhs.tail(m) = (-2.0 * k * k) * data.g;
  return rhs;
}

CVector rhs_from_incident(const IncidentField& inc, const BoundaryCurve& curve, const QuadratureGrid& grid,
                          double k) {
  return rhs_from_data(dirichlet_data(inc, curve, grid, k), k);
}

Solver::Solver(std::shared_ptr<const SystemMatrix> system) : system_(std::move(system)) {
  lu_.compute(system_->matrix);
  rcond_ = lu_.rcond();
  if (!(rcond_ > 1e-15)) {
    throw SingularSystemError("system matrix is singular to working precision (rcond = " + std::to_string(rcond_) + ")",
                              rcond_);
  }
}

DensityPair Solver::solve(const CVector& rhs, SolveReport* report) const {
  const CMatrix& a = system_->matrix;
  if (rhs.size() != a.rows()) throw DomainError("solve: right-hand side has the wrong length");
  const double bnorm = rhs.norm();
  CVector x = lu_.solve(rhs);
  // two steps of iterative refinement keep the residual at rounding level
  for (int it = 0; it < 2; ++it) x += lu_.solve(rhs - a * x);
  const double res = bnorm > 0.0 ? (a * x - rhs).norm() / bnorm : (x.norm() > 0.0 ? 1.0 : 0.0);
  if (report) {
    report->residual = res;
    report->rcond = rcond_;
  }
  if (!(res < kMaxSolveResidual)) {
    throw SingularSystemError("solve: relative residual " + std::to_string(res) + " exceeds tolerance", rcond_);
  }
  const Eigen::Index m = system_->nodes();
  return {x.head(m), x.tail(m)};
}

DensityPair solve(const SystemMatrix& system, const CVector& rhs, SolveReport* report) {
  const Solver solver(std::make_shared<const SystemMatrix>(system));
  return solver.solve(rhs, report);
}

double smallest_singular_value(const SystemMatrix& system) {
  Eigen::BDCSVD<CMatrix> svd(system.matrix);
  return svd.singularValues().minCoeff();
}

}  // namespace biharm
