#pragma once

#include <string>
#include <vector>

#include "biharm/common.hpp"

namespace biharm {

enum class CurveKind { Circle, Ellipse, Kite, Fourier };

std::string to_string(CurveKind kind);

/// Local geometry of the boundary at one parameter value.
struct Frame {
  Vec2 point;
  Vec2 tangent;  ///< unit, direction of increasing t
  Vec2 normal;   ///< unit, pointing out of the obstacle
  double jacobian;   ///< |x'(t)|
  double curvature;  ///< positive for convex, counterclockwise curves
};

/// Smooth closed 2pi-periodic parametrization x(t), counterclockwise.
///
/// The Fourier kind is a star-shaped curve r(t) (cos t, sin t) with
/// r(t) = c0 + sum_j (c_{2j-1} cos jt + c_{2j} sin jt).
class BoundaryCurve {
 public:
  static BoundaryCurve circle(double radius);
  static BoundaryCurve ellipse(double a, double b);
  /// (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)
  static BoundaryCurve kite();
  static BoundaryCurve fourier(std::vector<double> coefficients);

  CurveKind kind() const { return kind_; }
  const std::vector<double>& parameters() const { return params_; }

  Vec2 position(double t) const;
  Vec2 d1(double t) const;
  Vec2 d2(double t) const;
  Frame frame(double t) const;

  /// Winding number of the curve around p, evaluated on a dense polygon.
  int winding_number(const Vec2& p, int samples = 2048) const;
  bool contains(const Vec2& p) const { return winding_number(p) != 0; }
  /// Approximate distance from p to the curve (dense sampling plus local refinement).
  double distance(const Vec2& p) const;
  /// max |x(t)| over the curve.
  double max_radius() const;

 private:
  BoundaryCurve(CurveKind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {}
  void validate() const;

  CurveKind kind_;
  std::vector<double> params_;
};

/// Uniform periodic grid t_j = pi j / n, j = 0..2n-1, with cached frames.
///
/// The trapezoid weight of every node is pi/n (times the jacobian for arclength).
struct QuadratureGrid {
  int n = 0;
  RVector t;
  Eigen::Matrix2Xd x;       ///< nodes
  Eigen::Matrix2Xd dx;      ///< x'(t_j)
  Eigen::Matrix2Xd ddx;     ///< x''(t_j)
  Eigen::Matrix2Xd normal;  ///< outward unit normals
  RVector jacobian;         ///< |x'(t_j)|
  RVector curvature;

  Eigen::Index size() const { return t.size(); }
  double weight() const { return kPi / n; }
  /// Arclength quadrature weights (pi/n) |x'(t_j)|.
  RVector arc_weights() const { return jacobian * weight(); }
};

inline constexpr int kMinGridParameter = 8;

QuadratureGrid make_grid(const BoundaryCurve& curve, int n);

}  // namespace biharm
