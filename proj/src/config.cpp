#include "biharm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace biharm {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) const {
    std::string where = source_;
    if (node.IsDefined() && node.Mark().line >= 0) where += ":" + std::to_string(node.Mark().line + 1);
    throw ConfigError(where + ": " + field + ": " + msg);
  }

  void only_keys(const YAML::Node& map, const std::string& section, const std::set<std::string>& allowed) const {
    if (!map.IsMap()) fail(map, section, "expected a mapping");
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, section + "." + key, "unknown key");
    }
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, field, "cannot convert '" + node.Scalar() + "'");
    }
  }

  double number(const YAML::Node& node, const std::string& field) const {
    const auto v = scalar<double>(node, field);
    if (!std::isfinite(v)) fail(node, field, "must be finite");
    return v;
  }

  Vec2 point(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence() || node.size() != 2) fail(node, field, "expected [x, y]");
    return Vec2(number(node[0], field + "[0]"), number(node[1], field + "[1]"));
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }

  template <class Fn>
  void with_context(const YAML::Node& node, const std::string& field, Fn&& fn) const {
    try {
      fn();
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      if (msg.rfind(source_, 0) == 0) throw;
      fail(node, field, msg);
    }
  }

 private:
  std::string source_;
};

CurveKind curve_kind(const std::string& s) {
  for (auto k : {CurveKind::Circle, CurveKind::Ellipse, CurveKind::Kite, CurveKind::Fourier}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown geometry kind '" + s + "' (expected circle, ellipse, kite or fourier)");
}

void parse_geometry(const Reader& rd, const YAML::Node& g, GeometrySpec& out) {
  rd.only_keys(g, "geometry", {"kind", "radius", "a", "b", "coefficients"});
  if (!g["kind"]) rd.fail(g, "geometry.kind", "missing");
  rd.with_context(g["kind"], "geometry.kind", [&] { out.kind = curve_kind(rd.scalar<std::string>(g["kind"], "geometry.kind")); });
  if (g["radius"]) out.radius = rd.number(g["radius"], "geometry.radius");
  if (g["a"]) out.a = rd.number(g["a"], "geometry.a");
  if (g["b"]) out.b = rd.number(g["b"], "geometry.b");
  if (g["coefficients"]) out.coefficients = rd.numbers(g["coefficients"], "geometry.coefficients");
  if (out.kind == CurveKind::Fourier && out.coefficients.empty()) {
    rd.fail(g, "geometry.coefficients", "required for kind fourier");
  }
  rd.with_context(g, "geometry", [&] { out.build(); });
}

void parse_solver(const Reader& rd, const YAML::Node& s, SolverConfig& out, std::vector<std::string>& notices) {
  rd.only_keys(s, "solver", {"k", "eta", "n", "workers"});
  if (!s["k"]) rd.fail(s, "solver.k", "missing");
  out.k = rd.number(s["k"], "solver.k");
  if (!(out.k > 0.0)) rd.fail(s["k"], "solver.k", "must be positive");
  if (s["eta"]) {
    out.eta = rd.number(s["eta"], "solver.eta");
    if (out.eta == 0.0) rd.fail(s["eta"], "solver.eta", "must be nonzero (eta = 0 loses injectivity)");
  } else {
    out.eta = 1.0;
    notices.push_back("solver.eta not set; using 1");
  }
  if (s["n"]) {
    out.n = rd.scalar<int>(s["n"], "solver.n");
    if (out.n < kMinGridParameter) {
      rd.fail(s["n"], "solver.n", "must be at least " + std::to_string(kMinGridParameter));
    }
  }
  if (s["workers"]) {
    out.workers = rd.scalar<int>(s["workers"], "solver.workers");
    if (out.workers < 1) rd.fail(s["workers"], "solver.workers", "must be at least 1");
  }
}

void parse_incident(const Reader& rd, const YAML::Node& s, IncidentField& out) {
  rd.only_keys(s, "incident", {"kind", "angle", "direction", "source"});
  if (s["kind"]) {
    rd.with_context(s["kind"], "incident.kind",
                    [&] { out.kind = incident_kind_from_string(rd.scalar<std::string>(s["kind"], "incident.kind")); });
  }
  if (s["angle"] && s["direction"]) rd.fail(s, "incident", "give either angle or direction, not both");
  if (out.is_point_source()) {
    if (s["angle"] || s["direction"]) rd.fail(s, "incident", "point sources take a source, not a direction");
    if (!s["source"]) rd.fail(s, "incident.source", "missing");
    out.source = rd.point(s["source"], "incident.source");
  } else {
    if (s["source"]) rd.fail(s["source"], "incident.source", "plane waves take an angle or direction");
    if (s["angle"]) {
      const double a = rd.number(s["angle"], "incident.angle");
      out.direction = Vec2(std::cos(a), std::sin(a));
    } else if (s["direction"]) {
      const Vec2 d = rd.point(s["direction"], "incident.direction");
      if (!(d.norm() > 0.0)) rd.fail(s["direction"], "incident.direction", "must be nonzero");
      out.direction = d.normalized();
    }
  }
}

void parse_output(const Reader& rd, const YAML::Node& s, OutputSpec& out) {
  rd.only_keys(s, "output", {"directions", "dir", "grid"});
  if (s["directions"]) {
    out.directions = rd.scalar<int>(s["directions"], "output.directions");
    if (out.directions < 1) rd.fail(s["directions"], "output.directions", "must be positive");
  }
  if (s["dir"]) out.dir = rd.scalar<std::string>(s["dir"], "output.dir");
  if (s["grid"]) {
    const YAML::Node g = s["grid"];
    rd.only_keys(g, "output.grid", {"xmin", "xmax", "ymin", "ymax", "nx", "ny"});
    GridSpec spec;
    if (g["xmin"]) spec.xmin = rd.number(g["xmin"], "output.grid.xmin");
    if (g["xmax"]) spec.xmax = rd.number(g["xmax"], "output.grid.xmax");
    if (g["ymin"]) spec.ymin = rd.number(g["ymin"], "output.grid.ymin");
    if (g["ymax"]) spec.ymax = rd.number(g["ymax"], "output.grid.ymax");
    if (g["nx"]) spec.nx = rd.scalar<int>(g["nx"], "output.grid.nx");
    if (g["ny"]) spec.ny = rd.scalar<int>(g["ny"], "output.grid.ny");
    rd.with_context(g, "output.grid", [&] { spec.validate(); });
    out.grid = spec;
  }
}

void parse_verify(const Reader& rd, const YAML::Node& s, VerifySpec& out) {
  rd.only_keys(s, "verify", {"source", "xhat_angle", "yhat_angle", "x", "y", "points", "radii"});
  if (s["source"]) out.source = rd.point(s["source"], "verify.source");
  if (s["xhat_angle"]) out.xhat_angle = rd.number(s["xhat_angle"], "verify.xhat_angle");
  if (s["yhat_angle"]) out.yhat_angle = rd.number(s["yhat_angle"], "verify.yhat_angle");
  if (s["x"]) out.x = rd.point(s["x"], "verify.x");
  if (s["y"]) out.y = rd.point(s["y"], "verify.y");
  if (s["points"]) {
    const YAML::Node p = s["points"];
    if (!p.IsSequence() || p.size() == 0) rd.fail(p, "verify.points", "expected a non-empty list of [x, y]");
    out.points.clear();
    for (std::size_t i = 0; i < p.size(); ++i) out.points.push_back(rd.point(p[i], "verify.points"));
  }
  if (s["radii"]) {
    out.radii = rd.numbers(s["radii"], "verify.radii");
    if (out.radii.empty()) rd.fail(s["radii"], "verify.radii", "must not be empty");
    for (std::size_t i = 1; i < out.radii.size(); ++i) {
      if (!(out.radii[i] > out.radii[i - 1])) rd.fail(s["radii"], "verify.radii", "must increase");
    }
  }
}

void emit_point(YAML::Emitter& e, const Vec2& p) {
  e << YAML::Flow << YAML::BeginSeq << p.x() << p.y() << YAML::EndSeq;
}

}  // namespace

BoundaryCurve GeometrySpec::build() const {
  switch (kind) {
    case CurveKind::Circle: return BoundaryCurve::circle(radius);
    case CurveKind::Ellipse: return BoundaryCurve::ellipse(a, b);
    case CurveKind::Kite: return BoundaryCurve::kite();
    case CurveKind::Fourier: return BoundaryCurve::fourier(coefficients);
  }
  throw ConfigError("geometry: unknown kind");
}

void RunConfig::validate() const {
  solver.validate();
  const BoundaryCurve curve = geometry.build();
  if (incident.is_point_source()) {
    if (curve.contains(incident.source) || curve.distance(incident.source) < 1e-8) {
      throw ConfigError("incident.source: must lie outside the obstacle");
    }
  } else if (std::abs(incident.direction.norm() - 1.0) > 1e-12) {
    throw ConfigError("incident.direction: must be a unit vector");
  }
  if (output.directions < 1) throw ConfigError("output.directions: must be positive");
  if (output.grid) output.grid->validate();
  const double diameter = 2.0 * curve.max_radius();
  for (double r : verify.radii) {
    if (!(r > diameter)) throw ConfigError("verify.radii: every radius must exceed the obstacle diameter");
  }
}

LoadedConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": syntax error: " + e.msg);
  }
  const Reader rd(source);
  if (!root.IsMap()) rd.fail(root, "<root>", "expected sections geometry, solver, incident, output, verify");
  rd.only_keys(root, "<root>", {"geometry", "solver", "incident", "output", "verify"});
  if (!root["geometry"]) rd.fail(root, "geometry", "missing section");
  if (!root["solver"]) rd.fail(root, "solver", "missing section");

  LoadedConfig out;
  RunConfig& c = out.config;
  parse_geometry(rd, root["geometry"], c.geometry);
  parse_solver(rd, root["solver"], c.solver, out.notices);
  if (root["incident"]) {
    parse_incident(rd, root["incident"], c.incident);
  } else {
    out.notices.push_back("incident not set; using a plane wave along (1, 0)");
  }
  if (root["output"]) parse_output(rd, root["output"], c.output);
  if (root["verify"]) parse_verify(rd, root["verify"], c.verify);
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return out;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_yaml(const RunConfig& c) {
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;

  e << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << to_string(c.geometry.kind);
  e << YAML::Key << "radius" << YAML::Value << c.geometry.radius;
  e << YAML::Key << "a" << YAML::Value << c.geometry.a;
  e << YAML::Key << "b" << YAML::Value << c.geometry.b;
  if (!c.geometry.coefficients.empty()) {
    e << YAML::Key << "coefficients" << YAML::Value << YAML::Flow << c.geometry.coefficients;
  }
  e << YAML::EndMap;

  e << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "k" << YAML::Value << c.solver.k;
  e << YAML::Key << "eta" << YAML::Value << c.solver.eta;
  e << YAML::Key << "n" << YAML::Value << c.solver.n;
  e << YAML::Key << "workers" << YAML::Value << c.solver.workers;
  e << YAML::EndMap;

  e << YAML::Key << "incident" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << to_string(c.incident.kind);
  if (c.incident.is_point_source()) {
    e << YAML::Key << "source" << YAML::Value;
    emit_point(e, c.incident.source);
  } else {
    e << YAML::Key << "direction" << YAML::Value;
    emit_point(e, c.incident.direction);
  }
  e << YAML::EndMap;

  e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "directions" << YAML::Value << c.output.directions;
  e << YAML::Key << "dir" << YAML::Value << c.output.dir;
  if (c.output.grid) {
    const GridSpec& g = *c.output.grid;
    e << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "xmin" << YAML::Value << g.xmin << YAML::Key << "xmax" << YAML::Value << g.xmax;
    e << YAML::Key << "ymin" << YAML::Value << g.ymin << YAML::Key << "ymax" << YAML::Value << g.ymax;
    e << YAML::Key << "nx" << YAML::Value << g.nx << YAML::Key << "ny" << YAML::Value << g.ny;
    e << YAML::EndMap;
  }
  e << YAML::EndMap;

  e << YAML::Key << "verify" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "source" << YAML::Value;
  emit_point(e, c.verify.source);
  e << YAML::Key << "xhat_angle" << YAML::Value << c.verify.xhat_angle;
  e << YAML::Key << "yhat_angle" << YAML::Value << c.verify.yhat_angle;
  e << YAML::Key << "x" << YAML::Value;
  emit_point(e, c.verify.x);
  e << YAML::Key << "y" << YAML::Value;
  emit_point(e, c.verify.y);
  e << YAML::Key << "points" << YAML::Value << YAML::BeginSeq;
  for (const Vec2& p : c.verify.points) emit_point(e, p);
  e << YAML::EndSeq;
  e << YAML::Key << "radii" << YAML::Value << YAML::Flow << c.verify.radii;
  e << YAML::EndMap;

  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace biharm
