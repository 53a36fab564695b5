#include "biharm/fields.hpp"

#include <cmath>
#include <string>

#include "biharm/parallel.hpp"

namespace biharm {

namespace {

void require_exterior(const Solution& sol, const BoundaryCurve& curve, const Vec2& x) {
  if (curve.contains(x)) throw DomainError("field evaluation inside the obstacle is not defined");
  const double cutoff = near_boundary_cutoff(sol.grid());
  const double dist = curve.distance(x);
  if (dist <= cutoff) {
    throw NearBoundaryError("field evaluation too close to the boundary: distance " + std::to_string(dist) +
                                " <= cutoff " + std::to_string(cutoff),
                            dist, cutoff);
  }
}

}  // namespace

Solution make_solution(std::shared_ptr<const SystemMatrix> system, DensityPair densities) {
  Solution s;
  s.chi = system->ops.s0_squared * densities.psi;
  s.system = std::move(system);
  s.phi = std::move(densities.phi);
  s.psi = std::move(densities.psi);
  return s;
}

FieldSample make_sample(const Vec2& x, Complex u_plus, Complex u_minus, double k) {
  return {x, u_plus, u_minus, (u_plus - u_minus) / (2.0 * k * k), 0.5 * (u_plus + u_minus)};
}

double near_boundary_cutoff(const QuadratureGrid& grid) { return 3.0 * grid.weight() * grid.jacobian.maxCoeff(); }

FieldSample eval_scattered(const Solution& sol, const BoundaryCurve& curve, const Vec2& x) {
  require_exterior(sol, curve, x);
  const QuadratureGrid& g = sol.grid();
  const double k = sol.k();
  const auto hk = WaveNumber::helmholtz(k);
  const auto mk = WaveNumber::modified(k);
  const CVector plus = sol.plus_density();
  const RVector w = g.arc_weights();
  Complex up = 0.0;
  Complex um = 0.0;
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    const Vec2 d = x - g.x.col(j);
    const double r = d.norm();
    const double br = -g.normal.col(j).dot(d) / r;  // d r / d n(y)
    const RadialKernel rh = radial(hk, r);
    const RadialKernel rm = radial(mk, r);
    um += w(j) * (rh.value * sol.phi(j) - rh.d1 * br * sol.psi(j));
    up += w(j) * (rm.value * plus(j) - rm.d1 * br * sol.psi(j));
  }
  return make_sample(x, up, um, k);
}

FieldGradient eval_scattered_gradient(const Solution& sol, const BoundaryCurve& curve, const Vec2& x) {
  require_exterior(sol, curve, x);
  const QuadratureGrid& g = sol.grid();
  const double k = sol.k();
  const auto hk = WaveNumber::helmholtz(k);
  const auto mk = WaveNumber::modified(k);
  const CVector plus = sol.plus_density();
  const RVector w = g.arc_weights();
  const Vec2 e[2] = {Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
  FieldGradient out;
  out.u_plus.setZero();
  out.u_minus.setZero();
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    const Vec2 d = x - g.x.col(j);
    const double r = d.norm();
    const Vec2 nj = g.normal.col(j);
    const RadialKernel rh = radial(hk, r);
    const RadialKernel rm = radial(mk, r);
    for (int c = 0; c < 2; ++c) {
      const double dc = d(c) / r;
      out.u_minus(c) += w(j) * (rh.d1 * dc * sol.phi(j) - mixed_normal_derivative(rh, d, r, e[c], nj) * sol.psi(j));
      out.u_plus(c) += w(j) * (rm.d1 * dc * plus(j) - mixed_normal_derivative(rm, d, r, e[c], nj) * sol.psi(j));
    }
  }
  out.u = (out.u_plus - out.u_minus) / (2.0 * k * k);
  out.lap_u = 0.5 * (out.u_plus + out.u_minus);
  return out;
}

std::vector<Vec2> uniform_directions(int count) {
  if (count < 1) throw ConfigError("direction count must be positive");
  std::vector<Vec2> dirs(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double a = 2.0 * kPi * j / count;
    dirs[static_cast<std::size_t>(j)] = Vec2(std::cos(a), std::sin(a));
  }
  return dirs;
}

double direction_angle(const Vec2& d) {
  double a = std::atan2(d.y(), d.x());
  if (a < 0) a += 2.0 * kPi;
  return a;
}

FarFieldPair farfield(const Solution& sol, const std::vector<Vec2>& directions) {
  const QuadratureGrid& g = sol.grid();
  const double k = sol.k();
  const CVector plus = sol.plus_density();
  const RVector w = g.arc_weights();
  const auto count = static_cast<Eigen::Index>(directions.size());
  FarFieldPair out{directions, CVector::Zero(count), CVector::Zero(count)};
  for (Eigen::Index i = 0; i < count; ++i) {
    const Vec2& xhat = directions[static_cast<std::size_t>(i)];
    Complex fp = 0.0;
    Complex fm = 0.0;
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      const Vec2 y = g.x.col(j);
      const Vec2 ny = g.normal.col(j);
      const auto [dm, vm] = ff_kernel_minus(k, xhat, y, ny);
      const auto [dp, vp] = ff_kernel_plus(k, xhat, y, ny);
      fm += w(j) * (vm * sol.phi(j) - dm * sol.psi(j));
      fp += w(j) * (vp * plus(j) - dp * sol.psi(j));
    }
    out.ff_plus(i) = fp;
    out.ff_minus(i) = fm;
  }
  return out;
}

BoundaryTraces traces_from_split(CVector u_plus, CVector dn_u_plus, CVector u_minus, CVector dn_u_minus, double k) {
  BoundaryTraces t;
  const double s = 1.0 / (2.0 * k * k);
  t.u = s * (u_plus - u_minus);
  t.dn_u = s * (dn_u_plus - dn_u_minus);
  t.lap_u = 0.5 * (u_plus + u_minus);
  t.dn_lap_u = 0.5 * (dn_u_plus + dn_u_minus);
  t.u_plus = std::move(u_plus);
  t.dn_u_plus = std::move(dn_u_plus);
  t.u_minus = std::move(u_minus);
  t.dn_u_minus = std::move(dn_u_minus);
  return t;
}

BoundaryTraces boundary_traces(const Solution& sol) {
  const SystemMatrix& sys = *sol.system;
  const BoundaryOperators& ops = sys.ops;
  const double k = sol.k();
  const CVector plus = sol.plus_density();
  const CMatrix t_k = hypersingular_op(WaveNumber::helmholtz(k), sys.grid, ops.s_k);
  const CMatrix t_ik = hypersingular_op(WaveNumber::modified(k), sys.grid, ops.s_ik);
  // exterior limits: SL -> S, d_n SL -> K' - 1/2, DL -> K + 1/2, d_n DL -> T
  CVector up = ops.s_ik * plus - ops.k_ik * sol.psi - 0.5 * sol.psi;
  CVector dup = ops.kp_ik * plus - 0.5 * plus - t_ik * sol.psi;
  CVector um = ops.s_k * sol.phi - ops.k_k * sol.psi - 0.5 * sol.psi;
  CVector dum = ops.kp_k * sol.phi - 0.5 * sol.phi - t_k * sol.psi;
  return traces_from_split(std::move(up), std::move(dup), std::move(um), std::move(dum), k);
}

FarFieldPair farfield_from_traces(const BoundaryTraces& tr, const QuadratureGrid& g, double k,
                                  const std::vector<Vec2>& directions) {
  const RVector w = g.arc_weights();
  const auto count = static_cast<Eigen::Index>(directions.size());
  FarFieldPair out{directions, CVector::Zero(count), CVector::Zero(count)};
  for (Eigen::Index i = 0; i < count; ++i) {
    const Vec2& xhat = directions[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      const auto [dm, vm] = ff_kernel_minus(k, xhat, g.x.col(j), g.normal.col(j));
      const auto [dp, vp] = ff_kernel_plus(k, xhat, g.x.col(j), g.normal.col(j));
      out.ff_minus(i) += w(j) * (tr.u_minus(j) * dm - tr.dn_u_minus(j) * vm);
      out.ff_plus(i) += w(j) * (tr.u_plus(j) * dp - tr.dn_u_plus(j) * vp);
    }
  }
  return out;
}

void GridSpec::validate() const {
  if (nx < 1 || ny < 1) throw ConfigError("grid: nx and ny must be positive");
  if (!(xmax >= xmin) || !(ymax >= ymin)) throw ConfigError("grid: bounds must satisfy min <= max");
}

std::vector<GridSample> field_grid(const Solution& sol, const BoundaryCurve& curve, const GridSpec& spec,
                                   int workers) {
  spec.validate();
  const Eigen::Index total = static_cast<Eigen::Index>(spec.nx) * spec.ny;
  std::vector<GridSample> out(static_cast<std::size_t>(total));
  const double dx = spec.nx > 1 ? (spec.xmax - spec.xmin) / (spec.nx - 1) : 0.0;
  const double dy = spec.ny > 1 ? (spec.ymax - spec.ymin) / (spec.ny - 1) : 0.0;
  parallel_for(total, workers, [&](Eigen::Index idx) {
    const Eigen::Index ix = idx % spec.nx;
    const Eigen::Index iy = idx / spec.nx;
    const Vec2 x(spec.xmin + ix * dx, spec.ymin + iy * dy);
    GridSample& s = out[static_cast<std::size_t>(idx)];
    try {
      s.sample = eval_scattered(sol, curve, x);
    } catch (const DomainError&) {
      s.masked = true;
      s.sample = FieldSample{};
      s.sample.point = x;
    }
  });
  return out;
}

}  // namespace biharm
