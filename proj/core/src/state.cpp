#include "denseflock/state.hpp"

#include "denseflock/errors.hpp"

#include <string>

namespace denseflock {

void require_finite(const Points& points, const char* what) {
  if (!points.allFinite()) throw InputError(std::string(what) + " contain non-finite coordinates");
}

void EnsembleState::validate() const {
  if (positions.cols() < 1 || positions.rows() < 1) throw InputError("ensemble needs N >= 1 particles in d >= 1 dimensions");
  if (positions.rows() != velocities.rows() || positions.cols() != velocities.cols()) {
    throw InputError("positions and velocities differ in shape");
  }
  require_finite(positions, "positions");
  require_finite(velocities, "velocities");
  if (!std::isfinite(t)) throw InputError("time is not finite");
}

}  // namespace denseflock
