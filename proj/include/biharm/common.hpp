#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace biharm {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec2c = Eigen::Vector2cd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr Complex kI{0.0, 1.0};

/// Argument outside the domain of a function (x <= 0, r = 0 for a singular kernel, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kernel evaluated with source and target closer than 1e-14.
class CoincidenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Field evaluation requested too close to the obstacle boundary.
class NearBoundaryError : public DomainError {
 public:
  NearBoundaryError(const std::string& what, double distance, double cutoff)
      : DomainError(what), distance_(distance), cutoff_(cutoff) {}
  double distance() const { return distance_; }
  double cutoff() const { return cutoff_; }

 private:
  double distance_;
  double cutoff_;
};

/// Invalid user-supplied parameters (geometry, solver config, incident field).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense system is singular to working precision.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

}  // namespace biharm
