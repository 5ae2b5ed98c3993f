#include "denseflock/domain.hpp"

#include "denseflock/errors.hpp"

#include <string>

namespace denseflock {

Domain Domain::periodic(double side) {
  if (!(side > 0.0) || !std::isfinite(side)) throw ConfigError("periodic side length must be positive", "L");
  return Domain(Kind::Periodic, side);
}

void Domain::wrap(Points& points) const {
  if (kind_ != Kind::Periodic) return;
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
      double& x = points(r, c);
      x -= side_ * std::floor(x / side_);
      // floor can round x/L up to exactly 1 for tiny negative x
      if (x >= side_) x -= side_;
      if (x < 0.0) x = 0.0;
    }
  }
}

void Domain::require_range(double range) const {
  if (kind_ == Kind::Periodic && !(side_ > 2.0 * range)) {
    throw ConfigError("periodic box side L=" + std::to_string(side_) + " must exceed twice the interaction range " +
                          std::to_string(range),
                      "L");
  }
}

}  // namespace denseflock
