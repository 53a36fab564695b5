#include "biharm/incident.hpp"

#include <cmath>

#include "biharm/kernels.hpp"

namespace biharm {

std::string to_string(IncidentKind kind) {
  switch (kind) {
    case IncidentKind::PlaneWave: return "planewave-k";
    case IncidentKind::ModifiedPlaneWave: return "planewave-ik";
    case IncidentKind::PointSource: return "pointsource-k";
    case IncidentKind::ModifiedPointSource: return "pointsource-ik";
  }
  return "unknown";
}

IncidentKind incident_kind_from_string(const std::string& name) {
  for (auto kind : {IncidentKind::PlaneWave, IncidentKind::ModifiedPlaneWave, IncidentKind::PointSource,
                    IncidentKind::ModifiedPointSource}) {
    if (name == to_string(kind)) return kind;
  }
  throw ConfigError("unknown incident kind '" + name +
                    "' (expected planewave-k, planewave-ik, pointsource-k or pointsource-ik)");
}

IncidentField IncidentField::plane_wave(double angle) {
  return {IncidentKind::PlaneWave, Vec2(std::cos(angle), std::sin(angle)), Vec2::Zero()};
}

IncidentField IncidentField::modified_plane_wave(double angle) {
  return {IncidentKind::ModifiedPlaneWave, Vec2(std::cos(angle), std::sin(angle)), Vec2::Zero()};
}

IncidentField IncidentField::point_source(const Vec2& source) {
  return {IncidentKind::PointSource, Vec2(1.0, 0.0), source};
}

IncidentField IncidentField::modified_point_source(const Vec2& source) {
  return {IncidentKind::ModifiedPointSource, Vec2(1.0, 0.0), source};
}

IncidentSample eval_incident(const IncidentField& inc, double k, const Vec2& x) {
  IncidentSample s;
  switch (inc.kind) {
    case IncidentKind::PlaneWave: {
      s.value = std::exp(kI * (k * x.dot(inc.direction)));
      s.gradient = (kI * k * s.value) * inc.direction.cast<Complex>();
      break;
    }
    case IncidentKind::ModifiedPlaneWave: {
      s.value = std::exp(-k * x.dot(inc.direction));
      s.gradient = (-k * s.value) * inc.direction.cast<Complex>();
      break;
    }
    case IncidentKind::PointSource:
    case IncidentKind::ModifiedPointSource: {
      const WaveNumber b = inc.kind == IncidentKind::PointSource ? WaveNumber::helmholtz(k) : WaveNumber::modified(k);
      const Vec2 d = x - inc.source;
      const double r = d.norm();
      const RadialKernel rk = radial(b, r);
      s.value = rk.value;
      s.gradient = (rk.d1 / r) * d.cast<Complex>();
      break;
    }
  }
  const double lap = inc.laplacian_sign() * k * k;
  s.laplacian = lap * s.value;
  s.laplacian_gradient = lap * s.gradient;
  return s;
}

}  // namespace biharm
