#pragma once

#include <string>

#include "biharm/common.hpp"

namespace biharm {

/// Incident fields solving (Delta^2 - k^4) u = 0 away from their source.
///
///   PlaneWave            e^{ik x.d}          Delta u = -k^2 u
///   ModifiedPlaneWave    e^{-k x.d}          Delta u = +k^2 u
///   PointSource          Phi_k(x, y0)        Delta u = -k^2 u
///   ModifiedPointSource  Phi_ik(x, y0)       Delta u = +k^2 u
enum class IncidentKind { PlaneWave, ModifiedPlaneWave, PointSource, ModifiedPointSource };

std::string to_string(IncidentKind kind);
IncidentKind incident_kind_from_string(const std::string& name);

struct IncidentField {
  IncidentKind kind = IncidentKind::PlaneWave;
  Vec2 direction = Vec2(1.0, 0.0);  ///< unit; plane waves only
  Vec2 source = Vec2::Zero();       ///< point sources only

  static IncidentField plane_wave(double angle);
  static IncidentField modified_plane_wave(double angle);
  static IncidentField point_source(const Vec2& source);
  static IncidentField modified_point_source(const Vec2& source);

  bool is_point_source() const {
    return kind == IncidentKind::PointSource || kind == IncidentKind::ModifiedPointSource;
  }
  /// +1 if Delta u = k^2 u, -1 if Delta u = -k^2 u.
  double laplacian_sign() const {
    return (kind == IncidentKind::ModifiedPlaneWave || kind == IncidentKind::ModifiedPointSource) ? 1.0 : -1.0;
  }
};

struct IncidentSample {
  Complex value;
  Vec2c gradient;
  Complex laplacian;
  Vec2c laplacian_gradient;
};

/// Throws CoincidenceError at the source of a point source.
IncidentSample eval_incident(const IncidentField& inc, double k, const Vec2& x);

}  // namespace biharm
