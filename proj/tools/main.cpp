// Command-line front end: solve, farfield, oracle, verify, convergence, specfun.
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage error,
// 3 output I/O error, 4 invalid configuration, 5 numerical failure.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "io.hpp"

#include "biharm/config.hpp"
#include "biharm/oracle.hpp"
#include "biharm/specfun.hpp"
#include "biharm/verify.hpp"

namespace fs = std::filesystem;
using namespace biharm;
using biharm::cli::CsvWriter;
using biharm::cli::IoError;

namespace {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIoFailure = 3, kBadConfig = 4, kNumerical = 5 };

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("biharm");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("BIHARM_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only honour it when asked for explicitly
    if (level != spdlog::level::off || std::string(env) == "off") {
      spdlog::set_level(level);
    } else {
      spdlog::warn("BIHARM_LOG='{}' is not a level (trace, debug, info, warn, error, off); using info", env);
    }
  }
}

RunConfig load(const std::string& path, int workers) {
  LoadedConfig loaded = load_config(path);
  for (const auto& n : loaded.notices) spdlog::info("{}", n);
  if (workers > 0) loaded.config.solver.workers = workers;
  return loaded.config;
}

struct SolvedRun {
  BoundaryCurve curve;
  Solution solution;
  SolveReport report;
};

SolvedRun run_solve(const RunConfig& cfg) {
  BoundaryCurve curve = cfg.geometry.build();
  spdlog::info("assembling {} system: k = {}, eta = {}, n = {}, workers = {}", to_string(curve.kind()), cfg.solver.k,
               cfg.solver.eta, cfg.solver.n, cfg.solver.workers);
  auto system = std::make_shared<const SystemMatrix>(assemble(curve, cfg.solver));
  const Solver solver(system);
  const CVector rhs = rhs_from_incident(cfg.incident, curve, system->grid, cfg.solver.k);
  SolveReport report;
  DensityPair d = solver.solve(rhs, &report);
  spdlog::info("solved: residual {:.3e}, rcond {:.3e}", report.residual, report.rcond);
  return {curve, make_solution(system, std::move(d)), report};
}

nlohmann::json metadata(const RunConfig& c, const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  j["k"] = c.solver.k;
  j["eta"] = c.solver.eta;
  j["n"] = c.solver.n;
  j["geometry"] = {{"kind", to_string(c.geometry.kind)}};
  switch (c.geometry.kind) {
    case CurveKind::Circle: j["geometry"]["radius"] = c.geometry.radius; break;
    case CurveKind::Ellipse:
      j["geometry"]["a"] = c.geometry.a;
      j["geometry"]["b"] = c.geometry.b;
      break;
    case CurveKind::Kite: break;
    case CurveKind::Fourier: j["geometry"]["coefficients"] = c.geometry.coefficients; break;
  }
  j["incident"] = {{"kind", to_string(c.incident.kind)}};
  if (c.incident.is_point_source()) {
    j["incident"]["source"] = {c.incident.source.x(), c.incident.source.y()};
  } else {
    j["incident"]["direction"] = {c.incident.direction.x(), c.incident.direction.y()};
  }
  j["config"] = to_yaml(c);
  return j;
}

void write_farfield(const fs::path& path, const FarFieldPair& ff) {
  CsvWriter w(path, {"theta", "re_ffminus", "im_ffminus", "re_ffplus", "im_ffplus"});
  for (std::size_t i = 0; i < ff.directions.size(); ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    w.cell(direction_angle(ff.directions[i])).cell(ff.ff_minus(e)).cell(ff.ff_plus(e));
    w.end_row();
  }
  w.close();
}

void write_densities(const fs::path& path, const Solution& sol) {
  CsvWriter w(path, {"j", "t", "x", "y", "re_phi", "im_phi", "re_psi", "im_psi", "re_chi", "im_chi"});
  const QuadratureGrid& g = sol.grid();
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    w.cell(static_cast<long long>(j)).cell(g.t(j)).cell(g.x(0, j)).cell(g.x(1, j));
    w.cell(sol.phi(j)).cell(sol.psi(j)).cell(sol.chi(j));
    w.end_row();
  }
  w.close();
}

void write_grid(const fs::path& path, const std::vector<GridSample>& samples) {
  CsvWriter w(path, {"x", "y", "mask", "re_u", "im_u", "re_lap_u", "im_lap_u", "re_u_plus", "im_u_plus",
                     "re_u_minus", "im_u_minus"});
  for (const GridSample& s : samples) {
    const FieldSample& f = s.sample;
    w.cell(f.point.x()).cell(f.point.y()).cell(s.masked ? 1 : 0);
    w.cell(f.u).cell(f.lap_u).cell(f.u_plus).cell(f.u_minus);
    w.end_row();
  }
  w.close();
}

void write_matrix(const fs::path& path, const CMatrix& m) {
  CsvWriter w(path, {"row", "col", "re", "im"});
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      w.cell(static_cast<long long>(i)).cell(static_cast<long long>(j)).cell(m(i, j));
      w.end_row();
    }
  }
  w.close();
}

struct SolveOptions {
  std::string config;
  std::string out;
  int workers = 0;
  bool dump_matrix = false;
};

int cmd_solve(const SolveOptions& o, bool farfield_only) {
  RunConfig cfg = load(o.config, o.workers);
  if (!o.out.empty()) cfg.output.dir = o.out;
  const fs::path dir = cfg.output.dir;
  cli::ensure_dir(dir);

  const SolvedRun run = run_solve(cfg);
  std::vector<std::string> files;
  const FarFieldPair ff = farfield(run.solution, uniform_directions(cfg.output.directions));
  write_farfield(dir / "farfield.csv", ff);
  files.push_back("farfield.csv");
  if (!farfield_only) {
    write_densities(dir / "densities.csv", run.solution);
    files.push_back("densities.csv");
    if (cfg.output.grid) {
      write_grid(dir / "field.csv", field_grid(run.solution, run.curve, *cfg.output.grid, cfg.solver.workers));
      files.push_back("field.csv");
    }
  }
  if (o.dump_matrix) {
    write_matrix(dir / "matrix.csv", run.solution.system->matrix);
    files.push_back("matrix.csv");
  }
  nlohmann::json meta = metadata(cfg, farfield_only ? "farfield" : "solve");
  meta["solver"] = {{"residual", run.report.residual}, {"rcond", run.report.rcond}};
  meta["files"] = files;
  cli::write_json(dir / "metadata.json", meta);
  cli::write_text(dir / "config.echo.yaml", to_yaml(cfg));
  spdlog::info("wrote {} files to {}", files.size() + 2, dir.string());
  return kOk;
}

int cmd_oracle(const std::string& config, const std::string& out, int dim) {
  RunConfig cfg = load(config, 0);
  if (!out.empty()) cfg.output.dir = out;
  if (cfg.geometry.kind != CurveKind::Circle) throw ConfigError("oracle: geometry.kind must be circle");
  if (cfg.incident.kind != IncidentKind::PlaneWave) throw ConfigError("oracle: incident.kind must be planewave-k");
  const fs::path dir = cfg.output.dir;
  cli::ensure_dir(dir);
  nlohmann::json meta = metadata(cfg, "oracle");
  meta["dimension"] = dim;
  if (dim == 2) {
    const DiskProblem p{cfg.geometry.radius, cfg.solver.k, direction_angle(cfg.incident.direction), 1.0};
    const DiskCoefficients c = disk_solve(p);
    spdlog::info("disk series: {} modes, worst mode residual {:.3e}", c.order, c.max_mode_residual);
    write_farfield(dir / "oracle_farfield.csv", disk_farfield(c, uniform_directions(cfg.output.directions)));
    meta["modes"] = c.order;
    meta["max_mode_residual"] = c.max_mode_residual;
  } else {
    const SphereCoefficients c = sphere_solve({cfg.geometry.radius, cfg.solver.k});
    spdlog::info("sphere series: {} modes, worst mode residual {:.3e}", c.order, c.max_mode_residual);
    const int count = std::max(cfg.output.directions, 2);
    std::vector<double> theta(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) theta[static_cast<std::size_t>(i)] = kPi * i / (count - 1);
    const SphereFarField ff = sphere_farfield(c, theta);
    CsvWriter w(dir / "oracle_farfield.csv", {"theta", "re_ffminus", "im_ffminus", "re_ffplus", "im_ffplus"});
    for (int i = 0; i < count; ++i) {
      w.cell(theta[static_cast<std::size_t>(i)]).cell(ff.ff_minus(i)).cell(ff.ff_plus(i));
      w.end_row();
    }
    w.close();
    meta["modes"] = c.order;
    meta["max_mode_residual"] = c.max_mode_residual;
  }
  meta["files"] = {"oracle_farfield.csv"};
  cli::write_json(dir / "metadata.json", meta);
  return kOk;
}

const std::vector<std::string> kCheckIds{"representation",       "energy",   "reciprocity-pointsource",
                                         "reciprocity-farfield", "symmetry", "radiation",
                                         "all"};

CheckReport run_check(const std::string& id, const RunConfig& cfg, double tolerance) {
  const BoundaryCurve curve = cfg.geometry.build();
  const VerifySpec& v = cfg.verify;
  const auto tol = [&](double fallback) { return tolerance > 0.0 ? tolerance : fallback; };
  const auto unit = [](double a) { return Vec2(std::cos(a), std::sin(a)); };
  if (id == "reciprocity-pointsource") {
    return check_reciprocity_pointsource(curve, cfg.solver, v.source, unit(v.xhat_angle), tol(kTwoSolveTolerance));
  }
  if (id == "reciprocity-farfield") {
    return check_reciprocity_farfield(curve, cfg.solver, unit(v.xhat_angle), unit(v.yhat_angle),
                                      tol(kTwoSolveTolerance));
  }
  if (id == "symmetry") return check_symmetry(curve, cfg.solver, v.x, v.y, tol(kTwoSolveTolerance));

  const SolvedRun run = run_solve(cfg);
  if (id == "representation") return check_representation(run.solution, curve, v.points, tol(kSingleSolveTolerance));
  if (id == "energy") {
    return check_energy(boundary_traces(run.solution), run.solution.grid(), cfg.solver.k, tol(kSingleSolveTolerance));
  }
  if (id == "radiation") return check_radiation(run.solution, curve, v.radii);
  throw std::logic_error("unhandled check id " + id);
}

int cmd_verify(const std::string& check, const std::string& config, const std::string& json_path, int workers,
               double tolerance) {
  // fail on an unwritable report path before spending time on solves
  std::ofstream json_out;
  if (!json_path.empty()) {
    json_out.open(json_path);
    if (!json_out) throw IoError("cannot write " + json_path);
  }
  const RunConfig cfg = load(config, workers);

  std::vector<std::string> ids;
  if (check == "all") {
    ids.assign(kCheckIds.begin(), kCheckIds.end() - 1);
  } else {
    ids.push_back(check);
  }
  std::vector<std::future<CheckReport>> jobs;
  for (const auto& id : ids) {
    jobs.push_back(std::async(std::launch::async, [&cfg, id, tolerance] { return run_check(id, cfg, tolerance); }));
  }
  std::vector<CheckReport> reports;
  for (auto& j : jobs) reports.push_back(j.get());

  bool all_pass = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckReport& r : reports) {
    std::cout << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  rel_residual=" << cli::fmt(r.rel_residual)
              << "  tolerance=" << cli::fmt(r.tolerance) << '\n';
    for (const CheckEntry& e : r.entries) {
      std::cout << "    " << (e.pass ? "ok  " : "FAIL") << "  " << e.label << "  rel=" << cli::fmt(e.rel_residual)
                << '\n';
    }
    all_pass = all_pass && r.pass;
    arr.push_back(nlohmann::json::parse(r.to_json()));
  }
  if (json_out.is_open()) {
    json_out << (arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
    json_out.close();
    if (!json_out) throw IoError("error while writing " + json_path);
  }
  return all_pass ? kOk : kCheckFailed;
}

int cmd_convergence(const std::string& config, std::vector<int> ns, const std::string& out, int workers) {
  RunConfig cfg = load(config, workers);
  if (ns.empty()) throw ConfigError("convergence: --n needs at least one value");
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) throw ConfigError("convergence: --n values must increase");
  }
  const auto dirs = uniform_directions(cfg.output.directions);
  std::vector<FarFieldPair> fields;
  for (int n : ns) {
    RunConfig c = cfg;
    c.solver.n = n;
    fields.push_back(farfield(run_solve(c).solution, dirs));
  }
  const bool use_oracle = cfg.geometry.kind == CurveKind::Circle && cfg.incident.kind == IncidentKind::PlaneWave;
  const FarFieldPair reference =
      use_oracle ? disk_farfield(disk_solve({cfg.geometry.radius, cfg.solver.k,
                                             direction_angle(cfg.incident.direction), 1.0}),
                                 dirs)
                 : fields.back();

  fs::path path = out.empty() ? fs::path(cfg.output.dir) / "convergence.csv" : fs::path(out);
  if (path.has_parent_path()) cli::ensure_dir(path.parent_path());
  CsvWriter w(path, {"n", "err_ffminus", "err_ffplus", "reference"});
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double em = (fields[i].ff_minus - reference.ff_minus).cwiseAbs().maxCoeff() /
                      reference.ff_minus.cwiseAbs().maxCoeff();
    const double ep =
        (fields[i].ff_plus - reference.ff_plus).cwiseAbs().maxCoeff() / reference.ff_plus.cwiseAbs().maxCoeff();
    w.cell(ns[i]).cell(em).cell(ep).cell(std::string(use_oracle ? "oracle" : "finest"));
    w.end_row();
    std::cout << "n=" << ns[i] << "  err_ffminus=" << cli::fmt(em) << "  err_ffplus=" << cli::fmt(ep) << '\n';
  }
  w.close();
  spdlog::info("reference: {}", use_oracle ? "disk series" : "finest n");
  return kOk;
}

int cmd_specfun(const std::string& name, int order, double x) {
  static const std::map<std::string, specfun::Fn> cyl{{"J", specfun::Fn::J},
                                                      {"Y", specfun::Fn::Y},
                                                      {"H1", specfun::Fn::H1},
                                                      {"I", specfun::Fn::I},
                                                      {"K", specfun::Fn::K}};
  nlohmann::json j{{"function", name}, {"order", order}, {"x", x}};
  Complex value;
  Complex deriv;
  if (auto it = cyl.find(name); it != cyl.end()) {
    value = specfun::value(it->second, order, x);
    deriv = specfun::deriv(it->second, order, x);
  } else if (name == "j") {
    value = specfun::spherical_j(order, x);
    deriv = specfun::spherical_j_deriv(order, x);
  } else if (name == "h1") {
    value = specfun::spherical_h1(order, x);
    deriv = specfun::spherical_h1_deriv(order, x);
  } else if (name == "k") {
    value = specfun::spherical_k(order, x);
    deriv = specfun::spherical_k_deriv(order, x);
  } else {
    throw std::logic_error("unhandled function " + name);
  }
  j["value"] = {value.real(), value.imag()};
  j["derivative"] = {deriv.real(), deriv.imag()};
  std::cout << j.dump() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Clamped-plate (biharmonic) obstacle scattering in the plane"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "solve and write densities, far field, field grid and metadata");
  solve->add_option("--config", solve_opts.config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", solve_opts.out, "output directory (overrides output.dir)");
  solve->add_option("--workers", solve_opts.workers, "threads for assembly and grid evaluation")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--dump-matrix", solve_opts.dump_matrix, "also write the assembled system matrix");

  SolveOptions ff_opts;
  auto* ffcmd = app.add_subcommand("farfield", "solve and write only the far-field pair");
  ffcmd->add_option("--config", ff_opts.config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  ffcmd->add_option("--out", ff_opts.out, "output directory (overrides output.dir)");
  ffcmd->add_option("--workers", ff_opts.workers, "threads for assembly")->check(CLI::PositiveNumber);
  ffcmd->add_flag("--dump-matrix", ff_opts.dump_matrix, "also write the assembled system matrix");

  std::string oracle_config, oracle_out;
  int oracle_dim = 2;
  auto* oracle = app.add_subcommand("oracle", "series solution for a disk (or sphere) and a plane wave");
  oracle->add_option("--config", oracle_config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  oracle->add_option("--out", oracle_out, "output directory (overrides output.dir)");
  oracle->add_option("--dim", oracle_dim, "2 for the disk, 3 for the sphere")->check(CLI::IsMember({2, 3}));

  std::string check_id, verify_config, verify_json;
  int verify_workers = 0;
  double verify_tol = 0.0;
  auto* verify = app.add_subcommand("verify", "run identity checks on the configured problem");
  verify->add_option("check", check_id, "check id")->required();
  verify->add_option("--config", verify_config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  verify->add_option("--json", verify_json, "write the report(s) as JSON");
  verify->add_option("--workers", verify_workers, "threads for assembly")->check(CLI::PositiveNumber);
  verify->add_option("--tolerance", verify_tol, "override the default tolerance")->check(CLI::PositiveNumber);

  std::string conv_config, conv_out;
  std::vector<int> conv_n;
  int conv_workers = 0;
  auto* conv = app.add_subcommand("convergence", "far-field error table over a list of n");
  conv->add_option("--config", conv_config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  conv->add_option("--n", conv_n, "increasing grid parameters, e.g. 16,32,64")->required()->delimiter(',');
  conv->add_option("--out", conv_out, "CSV path (default <output.dir>/convergence.csv)");
  conv->add_option("--workers", conv_workers, "threads for assembly")->check(CLI::PositiveNumber);

  std::string sf_name;
  int sf_order = 0;
  double sf_x = 1.0;
  auto* sf = app.add_subcommand("specfun", "evaluate a Bessel-type function and its derivative");
  sf->add_option("function", sf_name, "J, Y, H1, I, K (cylinder) or j, h1, k (spherical)")
      ->required()
      ->check(CLI::IsMember({"J", "Y", "H1", "I", "K", "j", "h1", "k"}));
  sf->add_option("--order", sf_order, "integer order");
  sf->add_option("--x", sf_x, "positive argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_opts, false);
    if (*ffcmd) return cmd_solve(ff_opts, true);
    if (*oracle) return cmd_oracle(oracle_config, oracle_out, oracle_dim);
    if (*verify) {
      if (std::find(kCheckIds.begin(), kCheckIds.end(), check_id) == kCheckIds.end()) {
        std::cerr << "unknown check id '" << check_id << "'; expected one of:";
        for (const auto& id : kCheckIds) std::cerr << ' ' << id;
        std::cerr << '\n';
        return kUsage;
      }
      return cmd_verify(check_id, verify_config, verify_json, verify_workers, verify_tol);
    }
    if (*conv) return cmd_convergence(conv_config, conv_n, conv_out, conv_workers);
    if (*sf) return cmd_specfun(sf_name, sf_order, sf_x);
  } catch (const ConfigError& e) {
    spdlog::error("configuration: {}", e.what());
    return kBadConfig;
  } catch (const IoError& e) {
    spdlog::error("i/o: {}", e.what());
    return kIoFailure;
  } catch (const SingularSystemError& e) {
    spdlog::error("solver: {} (rcond {:.3e})", e.what(), e.rcond());
    return kNumerical;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kNumerical;
  }
  return kUsage;
}
