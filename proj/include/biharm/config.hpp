#pragma once

// Run configuration read from a YAML file with the sections
//
//   geometry:  kind (circle|ellipse|kite|fourier), radius, a, b, coefficients
//   solver:    k, eta, n
//   incident:  kind (planewave-k|planewave-ik|pointsource-k|pointsource-ik),
//              angle or direction [x, y] for plane waves, source [x, y]
//   output:    directions, dir, grid {xmin, xmax, ymin, ymax, nx, ny}
//   verify:    point-source / direction / radius parameters of the checks
//
// Unknown sections or keys are rejected so typos do not silently fall back to
// defaults. Errors carry the line of the offending node.

#include <optional>
#include <string>
#include <vector>

#include "biharm/bie.hpp"
#include "biharm/fields.hpp"
#include "biharm/geometry.hpp"
#include "biharm/incident.hpp"

namespace biharm {

struct GeometrySpec {
  CurveKind kind = CurveKind::Circle;
  double radius = 1.0;
  double a = 1.0;
  double b = 1.0;
  std::vector<double> coefficients;

  BoundaryCurve build() const;
};

struct OutputSpec {
  int directions = 360;
  std::string dir = "out";
  std::optional<GridSpec> grid;
};

struct VerifySpec {
  Vec2 source = Vec2(3.0, 1.0);     ///< exterior point of the point-source reciprocity check
  double xhat_angle = 0.4;
  double yhat_angle = 2.1;
  Vec2 x = Vec2(3.0, 0.0);          ///< symmetry check points
  Vec2 y = Vec2(0.0, 3.0);
  std::vector<Vec2> points{{2.5, 0.5}, {-2.0, 2.2}, {0.3, -3.0}, {-3.1, -1.0}, {3.5, 2.5}};
  std::vector<double> radii{20.0, 40.0, 80.0};
};

struct RunConfig {
  GeometrySpec geometry;
  SolverConfig solver;
  IncidentField incident;
  OutputSpec output;
  VerifySpec verify;

  /// Throws ConfigError naming the field.
  void validate() const;
};

struct LoadedConfig {
  RunConfig config;
  std::vector<std::string> notices;  ///< defaults that were filled in
};

/// Throws ConfigError with "<source>:<line>: <field>: message".
LoadedConfig parse_config(const std::string& text, const std::string& source = "<config>");
LoadedConfig load_config(const std::string& path);

/// Complete YAML form with every default written out; parse_config(to_yaml(c)) reproduces c.
std::string to_yaml(const RunConfig& config);

}  // namespace biharm
