#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "json.hpp"

#include "biharm/verify.hpp"

using namespace biharm;

namespace {

Vec2 unit(double angle) { return Vec2(std::cos(angle), std::sin(angle)); }

SolverConfig config(double k, int n) {
  SolverConfig cfg;
  cfg.k = k;
  cfg.n = n;
  return cfg;
}

BoundaryTraces zero_traces(Eigen::Index m) {
  const CVector z = CVector::Zero(m);
  return traces_from_split(z, z, z, z, 1.0);
}

}  // namespace

TEST_CASE("check report aggregates entries") {
  CheckReport rep;
  rep.tolerance = 1e-6;
  rep.add("a", Complex(1.0, 0.0), Complex(1.0 + 1e-8, 0.0));
  CHECK(rep.pass);
  rep.add("tiny", Complex(1e-14, 0.0), Complex(0.0, 0.0));  // absolute below the scale floor
  CHECK(rep.pass);
  CHECK(rep.entries[1].rel_residual == doctest::Approx(1e-14));
  rep.add("b", Complex(1.0, 0.0), Complex(1.1, 0.0));
  CHECK_FALSE(rep.pass);
  CHECK(rep.rel_residual == doctest::Approx(0.1 / 1.1));
  const auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["entries"].size() == 3);
  CHECK(j["pass"] == false);
  CHECK(j["entries"][0]["left"][0] == 1.0);
}

TEST_CASE("digest is stable and input sensitive") {
  CHECK(digest_of("abc") == digest_of("abc"));
  CHECK(digest_of("abc") != digest_of("abd"));
  CHECK(digest_of("").size() == 16);
  CHECK(digest_of("") == "cbf29ce484222325");
}

TEST_CASE("representation formula on disk oracle traces") {
  const auto c = disk_solve({1.0, 1.0, 0.0, 1.0});
  const auto grid = make_grid(BoundaryCurve::circle(1.0), 64);
  const BoundaryTraces tr = disk_traces(c, grid);
  const std::vector<Vec2> pts{Vec2(2.0, 0.0), Vec2(-1.5, 2.0), Vec2(0.0, -4.0)};
  std::vector<Complex> ref;
  for (const Vec2& p : pts) ref.push_back(disk_eval(c, p.norm(), std::atan2(p.y(), p.x())).u);
  const CheckReport rep = check_representation(tr, grid, 1.0, pts, ref);
  CHECK(rep.pass);
  CHECK(rep.rel_residual < 1e-8);
}

TEST_CASE("representation formula with zero densities") {
  const auto grid = make_grid(BoundaryCurve::circle(1.0), 16);
  const CheckReport rep = check_representation(zero_traces(grid.size()), grid, 1.0, {Vec2(2, 0)}, {0.0});
  CHECK(rep.pass);
  CHECK(rep.entries[0].right == Complex(0.0, 0.0));
}

TEST_CASE("representation formula on the kite") {
  const auto kite = BoundaryCurve::kite();
  const auto runs = solve_incidents(kite, config(1.2, 128), {IncidentField::plane_wave(0.3)});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> radius(2.5, 5.0);
  std::vector<Vec2> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(radius(rng) * unit(angle(rng)));
  const CheckReport rep = check_representation(runs[0].solution, kite, pts);
  CHECK(rep.pass);
  CHECK(rep.rel_residual < 1e-6);
  CHECK_THROWS_AS(check_representation(runs[0].solution, kite, {Vec2(0.0, 0.0)}), DomainError);
}

TEST_CASE("energy identity on oracle traces and hand-built coefficients") {
  const auto c = disk_solve({1.0, 1.0, 0.4, 1.0});
  const auto grid = make_grid(BoundaryCurve::circle(1.0), 64);
  const CheckReport rep = check_energy(disk_traces(c, grid), grid, 1.0);
  CHECK(rep.pass);
  CHECK(rep.entries[0].rel_residual < 1e-8);
  CHECK(rep.entries[1].left.real() >= -1e-10);

  // any radiating combination, regardless of boundary values
  DiskCoefficients manual;
  manual.problem = {1.0, 1.3, 0.0, 1.0};
  manual.order = 3;
  manual.a = {0.1, Complex(0.0, -0.4), 1.0, Complex(0.3, 0.2), 0.0, -0.5, 0.05};
  manual.b = {Complex(0.2, 0.1), 0.0, -0.7, 0.4, Complex(0.0, 1.0), 0.0, 0.3};
  const auto g2 = make_grid(BoundaryCurve::circle(1.0), 48);
  const CheckReport hand = check_energy(disk_traces(manual, g2), g2, 1.3);
  CHECK(hand.pass);
}

TEST_CASE("energy identity with zero field and on kite BEM traces") {
  const auto grid = make_grid(BoundaryCurve::circle(1.0), 16);
  const CheckReport zero = check_energy(zero_traces(grid.size()), grid, 1.0);
  CHECK(zero.pass);
  CHECK(zero.entries[0].abs_residual == 0.0);

  const auto kite = BoundaryCurve::kite();
  const auto runs = solve_incidents(kite, config(1.0, 96), {IncidentField::plane_wave(0.0)});
  const Solution& sol = runs[0].solution;
  const CheckReport rep = check_energy(boundary_traces(sol), sol.grid(), sol.k(), 1e-6);
  CHECK(rep.pass);
  CHECK(rep.entries[1].left.real() >= -1e-10);
}

TEST_CASE("point-source reciprocity on the kite") {
  const auto kite = BoundaryCurve::kite();
  const CheckReport rep = check_reciprocity_pointsource(kite, config(1.0, 96), Vec2(3.0, 1.0), unit(0.4));
  REQUIRE(rep.entries.size() == 4);
  CHECK(rep.pass);
  for (const auto& e : rep.entries) CHECK(e.rel_residual < 1e-5);
}

TEST_CASE("point-source reciprocity on the disk") {
  const auto disk = BoundaryCurve::circle(1.0);
  const CheckReport rep = check_reciprocity_pointsource(disk, config(1.0, 64), Vec2(-2.0, 1.5), unit(1.2), 1e-6);
  CHECK(rep.pass);
}

TEST_CASE("scattered fields are linear in the incident amplitude") {
  const auto kite = BoundaryCurve::kite();
  const auto cfg = config(1.0, 48);
  auto system = std::make_shared<const SystemMatrix>(assemble(kite, cfg));
  const Solver solver(system);
  const CVector rhs = rhs_from_incident(IncidentField::point_source(Vec2(3, 1)), kite, system->grid, cfg.k);
  const Complex scale(0.5, -2.0);
  const Solution one = make_solution(system, solver.solve(rhs));
  const Solution two = make_solution(system, solver.solve(scale * rhs));
  const Vec2 x(-2.5, 1.0);
  CHECK(std::abs(eval_scattered(two, kite, x).u - scale * eval_scattered(one, kite, x).u) <
        1e-13 * std::abs(eval_scattered(two, kite, x).u));
  const auto ff1 = farfield(one, {unit(0.3)});
  const auto ff2 = farfield(two, {unit(0.3)});
  CHECK(std::abs(ff2.ff_plus(0) - scale * ff1.ff_plus(0)) < 1e-13 * std::abs(ff2.ff_plus(0)));
}

TEST_CASE("far-field reciprocity") {
  const auto kite = BoundaryCurve::kite();
  const CheckReport rep = check_reciprocity_farfield(kite, config(1.0, 96), unit(0.4), unit(2.1));
  REQUIRE(rep.entries.size() == 4);
  CHECK(rep.pass);

  const auto disk = BoundaryCurve::circle(1.0);
  const CheckReport same = check_reciprocity_farfield(disk, config(1.0, 64), unit(0.7), unit(0.7));
  CHECK(same.pass);
}

TEST_CASE("point-source symmetry and its transpose") {
  const auto kite = BoundaryCurve::kite();
  const auto cfg = config(1.0, 96);
  const CheckReport xy = check_symmetry(kite, cfg, Vec2(3.0, 0.0), Vec2(0.0, 3.0));
  const CheckReport yx = check_symmetry(kite, cfg, Vec2(0.0, 3.0), Vec2(3.0, 0.0));
  CHECK(xy.pass);
  CHECK(yx.pass == xy.pass);
  // swapping x and y exchanges entries 0 and 3, keeps 1 and 2, and swaps the sides
  const std::size_t partner[4] = {3, 1, 2, 0};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& a = xy.entries[i];
    const auto& b = yx.entries[partner[i]];
    CHECK(std::abs(a.left - b.right) <= 1e-14 * std::abs(a.left));
    CHECK(std::abs(a.right - b.left) <= 1e-14 * std::abs(a.right));
  }
  CHECK_THROWS_AS(check_symmetry(kite, cfg, Vec2(3.0, 0.0), Vec2(3.0, 0.0)), ConfigError);
}

TEST_CASE("point-source symmetry on the disk converges with n") {
  const auto disk = BoundaryCurve::circle(1.0);
  const CheckReport coarse = check_symmetry(disk, config(1.0, 64), Vec2(2.0, 0.0), Vec2(0.0, -2.5));
  const CheckReport fine = check_symmetry(disk, config(1.0, 128), Vec2(2.0, 0.0), Vec2(0.0, -2.5));
  CHECK(fine.pass);
  CHECK((fine.rel_residual <= 0.1 * coarse.rel_residual || fine.rel_residual <= 1e-11));
}

TEST_CASE("radiation condition for oracle fields") {
  const double k = 1.0;
  const auto c = disk_solve({1.0, k, 0.0, 1.0});
  const std::vector<double> radii{20.0, 40.0, 80.0};
  const CheckReport full = check_radiation([&](double r, double t) { return disk_eval(c, r, t); }, k, radii);
  CHECK(full.pass);

  DiskCoefficients hmode = c;
  for (auto& b : hmode.b) b = 0.0;
  CHECK(check_radiation([&](double r, double t) { return disk_eval(hmode, r, t); }, k, radii).pass);

  DiskCoefficients kmode = c;
  for (auto& a : kmode.a) a = 0.0;
  const CheckReport kr = check_radiation([&](double r, double t) { return disk_eval(kmode, r, t); }, k, radii);
  CHECK(kr.pass);
  CHECK(kr.rel_residual < full.rel_residual);

  const CheckReport zero = check_radiation([](double, double) { return OracleSample{}; }, k, radii);
  CHECK(zero.pass);
  CHECK_THROWS_AS(check_radiation([](double, double) { return OracleSample{}; }, k, {40.0, 20.0}), DomainError);
}

TEST_CASE("radiation condition for a kite solve") {
  const auto kite = BoundaryCurve::kite();
  const auto runs = solve_incidents(kite, config(1.0, 64), {IncidentField::plane_wave(0.5)});
  CHECK(check_radiation(runs[0].solution, kite, {20.0, 40.0, 80.0}).pass);
}

TEST_CASE("reciprocity factor") {
  const Complex c = pointsource_reciprocity_factor(1.0);
  CHECK(std::abs(c - Complex(0.0, -2.0 * std::sqrt(2.0 * kPi))) < 1e-14);
}
