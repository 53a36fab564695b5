#include "biharm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace biharm {

namespace {

constexpr int kScreenSamples = 1024;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double wrap(double t) {
  const double two_pi = 2.0 * kPi;
  double w = std::fmod(t, two_pi);
  if (w < 0) w += two_pi;
  return w;
}

}  // namespace

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Circle: return "circle";
    case CurveKind::Ellipse: return "ellipse";
    case CurveKind::Kite: return "kite";
    case CurveKind::Fourier: return "fourier";
  }
  return "unknown";
}

BoundaryCurve BoundaryCurve::circle(double radius) {
  if (!(radius > 0.0)) throw ConfigError("circle: radius must be positive");
  BoundaryCurve c(CurveKind::Circle, {radius});
  c.validate();
  return c;
}

BoundaryCurve BoundaryCurve::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("ellipse: semi-axes must be positive");
  BoundaryCurve c(CurveKind::Ellipse, {a, b});
  c.validate();
  return c;
}

BoundaryCurve BoundaryCurve::kite() {
  BoundaryCurve c(CurveKind::Kite, {});
  c.validate();
  return c;
}

BoundaryCurve BoundaryCurve::fourier(std::vector<double> coefficients) {
  if (coefficients.empty()) throw ConfigError("fourier: at least the constant coefficient is required");
  if (coefficients.size() % 2 == 0) {
    throw ConfigError("fourier: expected c0 followed by (cos, sin) pairs, got an even count");
  }
  BoundaryCurve c(CurveKind::Fourier, std::move(coefficients));
  c.validate();
  return c;
}

void BoundaryCurve::validate() const {
  std::vector<Vec2> pts(kScreenSamples);
  for (int i = 0; i < kScreenSamples; ++i) {
    const double t = 2.0 * kPi * i / kScreenSamples;
    if (kind_ == CurveKind::Fourier) {
      // star-shaped representation needs r(t) > 0
      if (!(position(t).norm() > 0.0)) throw ConfigError("fourier: radius function must stay positive");
    }
    if (!(d1(t).norm() > 1e-10)) throw ConfigError("curve: parametrization is not regular (|x'| vanishes)");
    pts[static_cast<std::size_t>(i)] = position(t);
  }
  for (int i = 0; i < kScreenSamples; ++i) {
    const Vec2& p1 = pts[static_cast<std::size_t>(i)];
    const Vec2& p2 = pts[static_cast<std::size_t>((i + 1) % kScreenSamples)];
    for (int j = i + 2; j < kScreenSamples; ++j) {
      if (i == 0 && j == kScreenSamples - 1) continue;  // adjacent through the seam
      const Vec2& q1 = pts[static_cast<std::size_t>(j)];
      const Vec2& q2 = pts[static_cast<std::size_t>((j + 1) % kScreenSamples)];
      if (segments_intersect(p1, p2, q1, q2)) throw ConfigError("curve: self-intersection detected");
    }
  }
}

Vec2 BoundaryCurve::position(double t) const {
  switch (kind_) {
    case CurveKind::Circle: return params_[0] * Vec2(std::cos(t), std::sin(t));
    case CurveKind::Ellipse: return Vec2(params_[0] * std::cos(t), params_[1] * std::sin(t));
    case CurveKind::Kite: return Vec2(std::cos(t) + 0.65 * std::cos(2 * t) - 0.65, 1.5 * std::sin(t));
    case CurveKind::Fourier: {
      double r = params_[0];
      for (std::size_t j = 1; 2 * j <= params_.size(); ++j) {
        const double jt = static_cast<double>(j) * t;
        r += params_[2 * j - 1] * std::cos(jt) + params_[2 * j] * std::sin(jt);
      }
      return r * Vec2(std::cos(t), std::sin(t));
    }
  }
  return Vec2::Zero();
}

Vec2 BoundaryCurve::d1(double t) const {
  switch (kind_) {
    case CurveKind::Circle: return params_[0] * Vec2(-std::sin(t), std::cos(t));
    case CurveKind::Ellipse: return Vec2(-params_[0] * std::sin(t), params_[1] * std::cos(t));
    case CurveKind::Kite: return Vec2(-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t));
    case CurveKind::Fourier: {
      double r = params_[0];
      double dr = 0.0;
      for (std::size_t j = 1; 2 * j <= params_.size(); ++j) {
        const double jd = static_cast<double>(j);
        const double c = std::cos(jd * t);
        const double s = std::sin(jd * t);
        r += params_[2 * j - 1] * c + params_[2 * j] * s;
        dr += jd * (-params_[2 * j - 1] * s + params_[2 * j] * c);
      }
      return dr * Vec2(std::cos(t), std::sin(t)) + r * Vec2(-std::sin(t), std::cos(t));
    }
  }
  return Vec2::Zero();
}

Vec2 BoundaryCurve::d2(double t) const {
  switch (kind_) {
    case CurveKind::Circle: return -params_[0] * Vec2(std::cos(t), std::sin(t));
    case CurveKind::Ellipse: return Vec2(-params_[0] * std::cos(t), -params_[1] * std::sin(t));
    case CurveKind::Kite: return Vec2(-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t));
    case CurveKind::Fourier: {
      double r = params_[0];
      double dr = 0.0;
      double ddr = 0.0;
      for (std::size_t j = 1; 2 * j <= params_.size(); ++j) {
        const double jd = static_cast<double>(j);
        const double c = std::cos(jd * t);
        const double s = std::sin(jd * t);
        const double a = params_[2 * j - 1];
        const double b = params_[2 * j];
        r += a * c + b * s;
        dr += jd * (-a * s + b * c);
        ddr += -jd * jd * (a * c + b * s);
      }
      const Vec2 e(std::cos(t), std::sin(t));
      const Vec2 f(-std::sin(t), std::cos(t));
      return (ddr - r) * e + 2.0 * dr * f;
    }
  }
  return Vec2::Zero();
}

Frame BoundaryCurve::frame(double t) const {
  t = wrap(t);
  const Vec2 p = position(t);
  const Vec2 v = d1(t);
  const Vec2 a = d2(t);
  const double jac = v.norm();
  Frame f;
  f.point = p;
  f.tangent = v / jac;
  f.normal = Vec2(f.tangent.y(), -f.tangent.x());
  f.jacobian = jac;
  f.curvature = cross(v, a) / (jac * jac * jac);
  return f;
}

int BoundaryCurve::winding_number(const Vec2& p, int samples) const {
  double total = 0.0;
  Vec2 prev = position(0.0) - p;
  for (int i = 1; i <= samples; ++i) {
    const Vec2 cur = position(2.0 * kPi * i / samples) - p;
    total += std::atan2(cross(prev, cur), prev.dot(cur));
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

double BoundaryCurve::distance(const Vec2& p) const {
  constexpr int samples = 4096;
  const double h = 2.0 * kPi / samples;
  double best = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = i * h;
    const double d = (position(t) - p).norm();
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  // golden-section refinement on the bracketing interval
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_t - h;
  double hi = best_t + h;
  for (int it = 0; it < 60; ++it) {
    const double m1 = hi - g * (hi - lo);
    const double m2 = lo + g * (hi - lo);
    if ((position(m1) - p).norm() < (position(m2) - p).norm()) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(best, (position(0.5 * (lo + hi)) - p).norm());
}

double BoundaryCurve::max_radius() const {
  double r = 0.0;
  for (int i = 0; i < kScreenSamples; ++i) r = std::max(r, position(2.0 * kPi * i / kScreenSamples).norm());
  return r;
}

QuadratureGrid make_grid(const BoundaryCurve& curve, int n) {
  if (n < kMinGridParameter) {
    throw ConfigError("grid: n must be at least " + std::to_string(kMinGridParameter) + ", got " +
                      std::to_string(n));
  }
  const Eigen::Index m = 2 * n;
  QuadratureGrid g;
  g.n = n;
  g.t.resize(m);
  g.x.resize(2, m);
  g.dx.resize(2, m);
  g.ddx.resize(2, m);
  g.normal.resize(2, m);
  g.jacobian.resize(m);
  g.curvature.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double t = kPi * static_cast<double>(j) / n;
    const Frame f = curve.frame(t);
    g.t(j) = t;
    g.x.col(j) = f.point;
    g.dx.col(j) = curve.d1(t);
    g.ddx.col(j) = curve.d2(t);
    g.normal.col(j) = f.normal;
    g.jacobian(j) = f.jacobian;
    g.curvature(j) = f.curvature;
  }
  return g;
}

}  // namespace biharm
