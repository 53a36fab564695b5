#include "biharm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "biharm/kernels.hpp"

namespace biharm {

namespace {

std::string describe(const BoundaryCurve& curve, const SolverConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(curve.kind());
  for (double p : curve.parameters()) os << ',' << p;
  os << ";k=" << cfg.k << ";eta=" << cfg.eta << ";n=" << cfg.n;
  return os.str();
}

std::string describe(const Vec2& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << v.x() << ',' << v.y() << ')';
  return os.str();
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

IncidentField plane(IncidentKind kind, const Vec2& direction) {
  IncidentField inc;
  inc.kind = kind;
  inc.direction = direction.normalized();
  return inc;
}

IncidentField source(IncidentKind kind, const Vec2& at) {
  IncidentField inc;
  inc.kind = kind;
  inc.source = at;
  return inc;
}

Complex farfield_at(const Solution& sol, const Vec2& direction, bool plus) {
  const FarFieldPair ff = farfield(sol, {direction.normalized()});
  return plus ? ff.ff_plus(0) : ff.ff_minus(0);
}

}  // namespace

void CheckReport::add(std::string label, Complex left, Complex right) {
  CheckEntry e;
  e.label = std::move(label);
  e.left = left;
  e.right = right;
  e.abs_residual = std::abs(left - right);
  const double scale = std::max(std::abs(left), std::abs(right));
  e.rel_residual = scale < kResidualScaleFloor ? e.abs_residual : e.abs_residual / scale;
  e.pass = e.rel_residual <= tolerance;
  abs_residual = std::max(abs_residual, e.abs_residual);
  rel_residual = std::max(rel_residual, e.rel_residual);
  pass = pass && e.pass;
  entries.push_back(std::move(e));
}

std::string CheckReport::to_json() const {
  nlohmann::json j;
  j["check_id"] = id;
  j["inputs_digest"] = digest;
  j["tolerance"] = tolerance;
  j["abs_residual"] = abs_residual;
  j["rel_residual"] = rel_residual;
  j["pass"] = pass;
  if (!note.empty()) j["note"] = note;
  j["entries"] = nlohmann::json::array();
  for (const CheckEntry& e : entries) {
    j["entries"].push_back({{"label", e.label},
                            {"left", complex_json(e.left)},
                            {"right", complex_json(e.right)},
                            {"abs_residual", e.abs_residual},
                            {"rel_residual", e.rel_residual},
                            {"pass", e.pass}});
  }
  return j.dump(2);
}

std::string digest_of(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Complex representation_integral(const BoundaryTraces& tr, const QuadratureGrid& grid, double k, const Vec2& x) {
  const RVector w = grid.arc_weights();
  Complex sum = 0.0;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const Vec2 d = grid.x.col(j) - x;
    const double r = d.norm();
    if (r < kCoincidenceDistance) throw CoincidenceError("representation_integral: x lies on a boundary node");
    const double dr_dn = grid.normal.col(j).dot(d) / r;
    const BiharmRadial g = biharm_radial(k, r);
    sum += w(j) * (tr.u(j) * g.dlap * dr_dn + tr.lap_u(j) * g.dg * dr_dn - g.g * tr.dn_lap_u(j) -
                   g.lap * tr.dn_u(j));
  }
  return -sum;
}

CheckReport check_representation(const BoundaryTraces& traces, const QuadratureGrid& grid, double k,
                                 const std::vector<Vec2>& points, const std::vector<Complex>& reference,
                                 double tolerance) {
  if (points.size() != reference.size()) throw DomainError("check_representation: points/reference size mismatch");
  CheckReport rep;
  rep.id = "representation";
  rep.tolerance = tolerance;
  std::string desc = "traces;n=" + std::to_string(grid.n) + ";k=" + std::to_string(k);
  for (const Vec2& p : points) desc += describe(p);
  rep.digest = digest_of(desc);
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.add("u@" + describe(points[i]), reference[i], representation_integral(traces, grid, k, points[i]));
  }
  return rep;
}

CheckReport check_representation(const Solution& sol, const BoundaryCurve& curve, const std::vector<Vec2>& points,
                                 double tolerance) {
  std::vector<Complex> reference;
  reference.reserve(points.size());
  for (const Vec2& p : points) reference.push_back(eval_scattered(sol, curve, p).u);
  CheckReport rep = check_representation(boundary_traces(sol), sol.grid(), sol.k(), points, reference, tolerance);
  std::string desc = describe(curve, sol.system->config);
  for (const Vec2& p : points) desc += describe(p);
  rep.digest = digest_of(desc);
  return rep;
}

EnergyIntegrals energy_integrals(const BoundaryTraces& tr, const QuadratureGrid& grid, double k) {
  const RVector w = grid.arc_weights();
  const double k4 = k * k * k * k;
  EnergyIntegrals e{0.0, 0.0};
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    e.first += w(j) * (tr.u(j) * std::conj(tr.dn_lap_u(j)) + tr.lap_u(j) * std::conj(tr.dn_u(j)));
    e.second += w(j) * (tr.lap_u(j) * std::conj(tr.dn_lap_u(j)) + k4 * tr.u(j) * std::conj(tr.dn_u(j)));
  }
  return e;
}

CheckReport check_energy(const BoundaryTraces& traces, const QuadratureGrid& grid, double k, double tolerance,
                         double sign_tolerance) {
  const EnergyIntegrals e = energy_integrals(traces, grid, k);
  CheckReport rep;
  rep.id = "energy";
  rep.tolerance = tolerance;
  rep.digest = digest_of("traces;n=" + std::to_string(grid.n) + ";k=" + std::to_string(k));
  rep.add("identity", k * k * e.first.imag(), -e.second.imag());

  const double flux = -2.0 * k * e.second.imag();
  CheckEntry sign;
  sign.label = "flux";
  sign.left = flux;
  sign.right = std::max(flux, 0.0);
  sign.abs_residual = std::abs(sign.left - sign.right);
  sign.rel_residual = sign.abs_residual;
  sign.pass = flux >= -sign_tolerance;
  rep.abs_residual = std::max(rep.abs_residual, sign.abs_residual);
  rep.pass = rep.pass && sign.pass;
  rep.entries.push_back(sign);
  return rep;
}

std::vector<ScatteringRun> solve_incidents(const BoundaryCurve& curve, const SolverConfig& cfg,
                                           const std::vector<IncidentField>& incidents) {
  auto system = std::make_shared<const SystemMatrix>(assemble(curve, cfg));
  const Solver solver(system);
  std::vector<ScatteringRun> runs;
  runs.reserve(incidents.size());
  for (const IncidentField& inc : incidents) {
    const CVector rhs = rhs_from_incident(inc, curve, system->grid, cfg.k);
    runs.push_back({inc, make_solution(system, solver.solve(rhs))});
  }
  return runs;
}

Complex pointsource_reciprocity_factor(double k) { return 2.0 * std::sqrt(2.0 * kPi) * std::sqrt(k) / kI; }

CheckReport check_reciprocity_pointsource(const BoundaryCurve& curve, const SolverConfig& cfg, const Vec2& y,
                                          const Vec2& xhat, double tolerance) {
  const Vec2 d = xhat.normalized();
  const auto runs = solve_incidents(curve, cfg,
                                    {plane(IncidentKind::PlaneWave, d), plane(IncidentKind::ModifiedPlaneWave, d),
                                     source(IncidentKind::PointSource, y),
                                     source(IncidentKind::ModifiedPointSource, y)});
  const FieldSample pw_k = eval_scattered(runs[0].solution, curve, y);
  const FieldSample pw_ik = eval_scattered(runs[1].solution, curve, y);
  const Solution& ps_k = runs[2].solution;
  const Solution& ps_ik = runs[3].solution;

  const Complex c = pointsource_reciprocity_factor(cfg.k);
  const Complex phase = std::exp(kI * (kPi / 4.0));
  CheckReport rep;
  rep.id = "reciprocity-pointsource";
  rep.tolerance = tolerance;
  rep.digest = digest_of("reciprocity-pointsource;" + describe(curve, cfg) + describe(y) + describe(d));
  rep.add("u+(y,xhat,k) | ff-(-xhat,y,ik)", pw_k.u_plus, c * phase * farfield_at(ps_ik, -d, false));
  rep.add("u-(y,xhat,k) | ff-(-xhat,y,k)", pw_k.u_minus, c * phase * farfield_at(ps_k, -d, false));
  rep.add("u+(y,xhat,ik) | ff+(-xhat,y,ik)", pw_ik.u_plus, c * kI * farfield_at(ps_ik, -d, true));
  rep.add("u-(y,xhat,ik) | ff+(-xhat,y,k)", pw_ik.u_minus, c * kI * farfield_at(ps_k, -d, true));
  return rep;
}

CheckReport check_reciprocity_farfield(const BoundaryCurve& curve, const SolverConfig& cfg, const Vec2& xhat,
                                       const Vec2& yhat, double tolerance) {
  const Vec2 dx = xhat.normalized();
  const Vec2 dy = yhat.normalized();
  const auto runs = solve_incidents(
      curve, cfg,
      {plane(IncidentKind::PlaneWave, dy), plane(IncidentKind::ModifiedPlaneWave, dy),
       plane(IncidentKind::PlaneWave, -dx), plane(IncidentKind::ModifiedPlaneWave, -dx)});
  const FarFieldPair y_k = farfield(runs[0].solution, {dx});
  const FarFieldPair y_ik = farfield(runs[1].solution, {dx});
  const FarFieldPair x_k = farfield(runs[2].solution, {-dy});
  const FarFieldPair x_ik = farfield(runs[3].solution, {-dy});

  const Complex phase = std::exp(kI * (kPi / 4.0));
  CheckReport rep;
  rep.id = "reciprocity-farfield";
  rep.tolerance = tolerance;
  rep.digest = digest_of("reciprocity-farfield;" + describe(curve, cfg) + describe(dx) + describe(dy));
  rep.add("ff+(xhat,yhat,k) | ff-(-yhat,-xhat,ik)", phase * y_k.ff_plus(0), x_ik.ff_minus(0));
  rep.add("ff-(xhat,yhat,k) | ff-(-yhat,-xhat,k)", y_k.ff_minus(0), x_k.ff_minus(0));
  rep.add("ff+(xhat,yhat,ik) | ff+(-yhat,-xhat,ik)", y_ik.ff_plus(0), x_ik.ff_plus(0));
  rep.add("ff-(xhat,yhat,ik) | ff+(-yhat,-xhat,k)", y_ik.ff_minus(0), phase * x_k.ff_plus(0));
  return rep;
}

CheckReport check_symmetry(const BoundaryCurve& curve, const SolverConfig& cfg, const Vec2& x, const Vec2& y,
                           double tolerance) {
  if ((x - y).norm() < kCoincidenceDistance) throw ConfigError("check_symmetry: x and y must differ");
  const auto runs = solve_incidents(curve, cfg,
                                    {source(IncidentKind::PointSource, y),
                                     source(IncidentKind::ModifiedPointSource, y),
                                     source(IncidentKind::PointSource, x),
                                     source(IncidentKind::ModifiedPointSource, x)});
  const FieldSample at_x_k = eval_scattered(runs[0].solution, curve, x);
  const FieldSample at_x_ik = eval_scattered(runs[1].solution, curve, x);
  const FieldSample at_y_k = eval_scattered(runs[2].solution, curve, y);
  const FieldSample at_y_ik = eval_scattered(runs[3].solution, curve, y);

  CheckReport rep;
  rep.id = "symmetry";
  rep.tolerance = tolerance;
  rep.digest = digest_of("symmetry;" + describe(curve, cfg) + describe(x) + describe(y));
  rep.add("u+(x,y,k) | u-(y,x,ik)", at_x_k.u_plus, at_y_ik.u_minus);
  rep.add("u-(x,y,k) | u-(y,x,k)", at_x_k.u_minus, at_y_k.u_minus);
  rep.add("u+(x,y,ik) | u+(y,x,ik)", at_x_ik.u_plus, at_y_ik.u_plus);
  rep.add("u-(x,y,ik) | u+(y,x,k)", at_x_ik.u_minus, at_y_k.u_plus);
  return rep;
}

CheckReport check_radiation(const RadialSampler& sampler, double k, const std::vector<double>& radii) {
  if (radii.empty()) throw DomainError("check_radiation: no radii given");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw DomainError("check_radiation: radii must increase");
  }
  CheckReport rep;
  rep.id = "radiation";
  rep.tolerance = 1.0;
  std::string desc = "radiation;k=" + std::to_string(k);
  for (double r : radii) desc += ";" + std::to_string(r);
  rep.digest = digest_of(desc);

  std::vector<double> mu(radii.size(), 0.0);
  std::vector<double> ml(radii.size(), 0.0);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    for (int j = 0; j < kRadiationDirections; ++j) {
      const OracleSample s = sampler(r, 2.0 * kPi * j / kRadiationDirections);
      mu[i] = std::max(mu[i], std::sqrt(r) * std::abs(s.dr_u - kI * k * s.u));
      ml[i] = std::max(ml[i], std::sqrt(r) * std::abs(s.dr_lap_u - kI * k * s.lap_u));
    }
  }
  // entries hold the ratio to the previous radius; a zero field counts as decreasing
  auto push = [&rep](const std::string& label, double cur, double prev) {
    CheckEntry e;
    e.label = label;
    e.left = cur;
    e.right = prev;
    e.abs_residual = cur;
    e.rel_residual = prev > 0.0 ? cur / prev : 0.0;
    e.pass = cur == 0.0 || cur < prev;
    rep.abs_residual = std::max(rep.abs_residual, e.abs_residual);
    rep.rel_residual = std::max(rep.rel_residual, e.rel_residual);
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(e);
  };
  for (std::size_t i = 1; i < radii.size(); ++i) {
    push("u@" + std::to_string(radii[i]), mu[i], mu[i - 1]);
    push("lap_u@" + std::to_string(radii[i]), ml[i], ml[i - 1]);
  }
  if (radii.size() == 1) {
    push("u@" + std::to_string(radii[0]), mu[0], mu[0]);
    push("lap_u@" + std::to_string(radii[0]), ml[0], ml[0]);
    rep.note = "single radius: no decay can be observed";
  }
  return rep;
}

CheckReport check_radiation(const Solution& sol, const BoundaryCurve& curve, const std::vector<double>& radii) {
  auto sampler = [&](double r, double theta) {
    const Vec2 dir(std::cos(theta), std::sin(theta));
    const Vec2 x = r * dir;
    const FieldSample s = eval_scattered(sol, curve, x);
    const FieldGradient g = eval_scattered_gradient(sol, curve, x);
    const Complex dr_u = g.u.x() * dir.x() + g.u.y() * dir.y();
    const Complex dr_lap = g.lap_u.x() * dir.x() + g.lap_u.y() * dir.y();
    return OracleSample{s.u, s.lap_u, dr_u, dr_lap};
  };
  CheckReport rep = check_radiation(sampler, sol.k(), radii);
  std::string desc = "radiation;" + describe(curve, sol.system->config);
  for (double r : radii) desc += ";" + std::to_string(r);
  rep.digest = digest_of(desc);
  return rep;
}

BoundaryTraces disk_traces(const DiskCoefficients& c, const QuadratureGrid& grid) {
  const double k = c.problem.k;
  const Eigen::Index m = grid.size();
  CVector u(m), dn_u(m), lap(m), dn_lap(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Vec2 p = grid.x.col(j);
    const OracleSample s = disk_eval(c, std::max(p.norm(), c.problem.radius), direction_angle(p));
    u(j) = s.u;
    dn_u(j) = s.dr_u;
    lap(j) = s.lap_u;
    dn_lap(j) = s.dr_lap_u;
  }
  const double k2 = k * k;
  return traces_from_split(lap + k2 * u, dn_lap + k2 * dn_u, lap - k2 * u, dn_lap - k2 * dn_u, k);
}

}  // namespace biharm
