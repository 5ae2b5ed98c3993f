#pragma once

#include "denseflock/state.hpp"

#include <Eigen/Core>

#include <cmath>

namespace denseflock {

/// Spatial domain: free space or a periodic box [0, L)^d with minimum-image distances.
class Domain {
 public:
  enum class Kind { Unbounded, Periodic };

  static Domain unbounded() { return Domain(Kind::Unbounded, 0.0); }
  static Domain periodic(double side);

  Kind kind() const noexcept { return kind_; }
  bool is_periodic() const noexcept { return kind_ == Kind::Periodic; }
  double side() const noexcept { return side_; }

  /// Displacement b - a of the nearest periodic image of b.
  template <typename A, typename B>
  Eigen::VectorXd displacement(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) const {
    Eigen::VectorXd d = b - a;
    if (kind_ == Kind::Periodic) {
      for (Eigen::Index k = 0; k < d.size(); ++k) d[k] = wrap_delta(d[k]);
    }
    return d;
  }

  template <typename A, typename B>
  double distance(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) const {
    if (kind_ == Kind::Unbounded) return (b - a).norm();
    double sq = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      const double d = wrap_delta(b[k] - a[k]);
      sq += d * d;
    }
    return std::sqrt(sq);
  }

  /// Minimum-image reduction of one coordinate difference to [-L/2, L/2].
  double wrap_delta(double d) const noexcept {
    d -= side_ * std::nearbyint(d / side_);
    return d;
  }

  /// Maps every coordinate into [0, L). No-op for the unbounded domain.
  void wrap(Points& points) const;

  /// Throws ConfigError unless the box admits minimum-image interactions at `range` (L > 2 range).
  void require_range(double range) const;

  bool operator==(const Domain&) const = default;

 private:
  Domain(Kind kind, double side) : kind_(kind), side_(side) {}

  Kind kind_;
  double side_;
};

}  // namespace denseflock
