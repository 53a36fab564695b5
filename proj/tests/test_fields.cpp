#include <cmath>
#include <memory>

#include "doctest.h"

#include "biharm/fields.hpp"
#include "biharm/incident.hpp"
#include "biharm/oracle.hpp"

using namespace biharm;

namespace {

Solution solve_for(const BoundaryCurve& curve, const SolverConfig& cfg, const IncidentField& inc) {
  auto system = std::make_shared<const SystemMatrix>(assemble(curve, cfg));
  const CVector rhs = rhs_from_incident(inc, curve, system->grid, cfg.k);
  return make_solution(system, solve(*system, rhs));
}

double max_rel(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("incident fields solve their reduced equations") {
  const double k = 1.3;
  const double h = 1e-3;
  for (const IncidentField& inc :
       {IncidentField::plane_wave(0.4), IncidentField::modified_plane_wave(1.1),
        IncidentField::point_source(Vec2(0.2, -0.1)), IncidentField::modified_point_source(Vec2(-0.3, 0.2))}) {
    const Vec2 x(1.4, 0.9);
    const IncidentSample s = eval_incident(inc, k, x);
    auto u = [&](double dx, double dy) { return eval_incident(inc, k, x + Vec2(dx, dy)).value; };
    const Complex lap = (u(h, 0) + u(-h, 0) + u(0, h) + u(0, -h) - 4.0 * u(0, 0)) / (h * h);
    CHECK(std::abs(lap - s.laplacian) < 1e-5 * std::abs(s.laplacian));
    CHECK(std::abs(s.laplacian - inc.laplacian_sign() * k * k * s.value) < 1e-14 * std::abs(s.laplacian) + 1e-300);
    const double hg = 1e-6;
    const Complex gx = (u(hg, 0) - u(-hg, 0)) / (2.0 * hg);
    const Complex gy = (u(0, hg) - u(0, -hg)) / (2.0 * hg);
    CHECK(std::abs(gx - s.gradient(0)) < 1e-8 * (1.0 + std::abs(gx)));
    CHECK(std::abs(gy - s.gradient(1)) < 1e-8 * (1.0 + std::abs(gy)));
  }
}

TEST_CASE("incident kind names round-trip") {
  for (auto kind : {IncidentKind::PlaneWave, IncidentKind::ModifiedPlaneWave, IncidentKind::PointSource,
                    IncidentKind::ModifiedPointSource}) {
    CHECK(incident_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(incident_kind_from_string("spherical"), ConfigError);
  CHECK_THROWS_AS(eval_incident(IncidentField::point_source(Vec2(1, 1)), 1.0, Vec2(1, 1)), CoincidenceError);
}

TEST_CASE("disk BEM agrees with the series solution") {
  const double k = 1.0;
  const auto circle = BoundaryCurve::circle(1.0);
  SolverConfig cfg;
  cfg.k = k;
  cfg.n = 64;
  const Solution sol = solve_for(circle, cfg, IncidentField::plane_wave(0.0));
  const auto oracle = disk_solve({1.0, k, 0.0, 1.0});

  const auto dirs = uniform_directions(360);
  const FarFieldPair bem = farfield(sol, dirs);
  const FarFieldPair ref = disk_farfield(oracle, dirs);
  CHECK(max_rel(bem.ff_minus, ref.ff_minus) < 1e-6);
  CHECK(max_rel(bem.ff_plus, ref.ff_plus) < 1e-6);

  for (int j = 0; j < 12; ++j) {
    const double t = 2.0 * kPi * j / 12;
    const FieldSample s = eval_scattered(sol, circle, 2.0 * Vec2(std::cos(t), std::sin(t)));
    const OracleSample o = disk_eval(oracle, 2.0, t);
    CHECK(std::abs(s.u - o.u) < 1e-7 * std::abs(o.u));
    CHECK(std::abs(s.lap_u - o.lap_u) < 1e-7 * std::abs(o.lap_u));
  }
}

TEST_CASE("far field from densities equals far field from boundary traces") {
  const auto kite = BoundaryCurve::kite();
  SolverConfig cfg;
  cfg.k = 1.2;
  cfg.n = 64;
  const Solution sol = solve_for(kite, cfg, IncidentField::plane_wave(0.7));
  const auto dirs = uniform_directions(24);
  const FarFieldPair a = farfield(sol, dirs);
  const FarFieldPair b = farfield_from_traces(boundary_traces(sol), sol.grid(), sol.k(), dirs);
  CHECK(max_rel(b.ff_minus, a.ff_minus) < 1e-9);
  CHECK(max_rel(b.ff_plus, a.ff_plus) < 1e-9);
}

TEST_CASE("boundary traces reproduce the clamped data") {
  const auto kite = BoundaryCurve::kite();
  const IncidentField inc = IncidentField::plane_wave(0.3);
  double previous = 1.0;
  for (int n : {32, 64, 128}) {
    SolverConfig cfg;
    cfg.k = 1.0;
    cfg.n = n;
    const Solution sol = solve_for(kite, cfg, inc);
    const BoundaryTraces tr = boundary_traces(sol);
    const DirichletData data = dirichlet_data(inc, kite, sol.grid(), cfg.k);
    CHECK((tr.u - data.f).cwiseAbs().maxCoeff() < 1e-12);
    // the normal derivative goes through the hypersingular operators, which converge more slowly
    const double dn_err = (tr.dn_u - data.g).cwiseAbs().maxCoeff();
    CHECK(dn_err < 0.1 * previous);
    previous = dn_err;
  }
  CHECK(previous < 1e-8);
}

TEST_CASE("field evaluation guards the boundary and interior") {
  const auto circle = BoundaryCurve::circle(1.0);
  SolverConfig cfg;
  cfg.n = 32;
  const Solution sol = solve_for(circle, cfg, IncidentField::plane_wave(0.0));
  CHECK_THROWS_AS(eval_scattered(sol, circle, Vec2(0.2, 0.1)), DomainError);
  CHECK_THROWS_AS(eval_scattered(sol, circle, Vec2(1.0 + 0.5 * near_boundary_cutoff(sol.grid()), 0.0)),
                  NearBoundaryError);
  CHECK_NOTHROW(eval_scattered(sol, circle, Vec2(1.0 + 2.0 * near_boundary_cutoff(sol.grid()), 0.0)));
  CHECK_THROWS_AS(eval_scattered_gradient(sol, circle, Vec2(0.0, 0.0)), DomainError);
}

TEST_CASE("split fields recombine into u and Delta u") {
  const FieldSample s = make_sample(Vec2(3, 0), Complex(1.0, 2.0), Complex(-0.5, 0.25), 2.0);
  CHECK(std::abs(s.lap_u + 4.0 * s.u - s.u_plus) < 1e-15);
  CHECK(std::abs(s.lap_u - 4.0 * s.u - s.u_minus) < 1e-15);
}

TEST_CASE("scattered field gradient matches finite differences") {
  const auto kite = BoundaryCurve::kite();
  SolverConfig cfg;
  cfg.k = 1.2;
  cfg.n = 48;
  const Solution sol = solve_for(kite, cfg, IncidentField::plane_wave(0.3));
  const double h = 1e-5;
  for (const Vec2 x : {Vec2(3.0, 0.5), Vec2(-2.0, 2.5)}) {
    const FieldGradient g = eval_scattered_gradient(sol, kite, x);
    for (int a = 0; a < 2; ++a) {
      Vec2 e = Vec2::Zero();
      e(a) = h;
      const FieldSample p = eval_scattered(sol, kite, x + e);
      const FieldSample m = eval_scattered(sol, kite, x - e);
      CHECK(std::abs((p.u - m.u) / (2.0 * h) - g.u(a)) < 1e-8);
      CHECK(std::abs((p.lap_u - m.lap_u) / (2.0 * h) - g.lap_u(a)) < 1e-8);
      CHECK(std::abs((p.u_plus - m.u_plus) / (2.0 * h) - g.u_plus(a)) < 1e-8);
    }
  }
}

TEST_CASE("field grid is row-major, masks the obstacle and is worker independent") {
  const auto circle = BoundaryCurve::circle(1.0);
  SolverConfig cfg;
  cfg.n = 32;
  const Solution sol = solve_for(circle, cfg, IncidentField::plane_wave(0.0));
  GridSpec spec{-3.0, 3.0, -2.0, 2.0, 7, 5};
  const auto one = field_grid(sol, circle, spec, 1);
  const auto four = field_grid(sol, circle, spec, 4);
  REQUIRE(one.size() == 35);
  CHECK(one[1].sample.point.x() == doctest::Approx(-2.0));
  CHECK(one[7].sample.point.y() == doctest::Approx(-1.0));
  const auto center = one[2 * 7 + 3];
  CHECK(center.masked);
  CHECK_FALSE(one[0].masked);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].masked == four[i].masked);
    CHECK(one[i].sample.u == four[i].sample.u);
  }
  GridSpec bad = spec;
  bad.nx = 0;
  CHECK_THROWS_AS(field_grid(sol, circle, bad), ConfigError);
}

TEST_CASE("uniform directions") {
  const auto d = uniform_directions(360);
  REQUIRE(d.size() == 360);
  CHECK(direction_angle(d[90]) == doctest::Approx(kPi / 2));
  for (const Vec2& v : d) CHECK(v.norm() == doctest::Approx(1.0));
}
