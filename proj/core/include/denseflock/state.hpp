#pragma once

#include <Eigen/Core>

#include <cstddef>

namespace denseflock {

/// Coordinates stored column-wise: column i is particle i, rows are the d axes.
using Points = Eigen::MatrixXd;

/// Positions and velocities of the ensemble at one instant.
struct EnsembleState {
  double t = 0.0;
  Points positions;
  Points velocities;

  EnsembleState() = default;
  EnsembleState(double time, Points x, Points v) : t(time), positions(std::move(x)), velocities(std::move(v)) {}

  std::size_t size() const noexcept { return static_cast<std::size_t>(positions.cols()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(positions.rows()); }

  Eigen::VectorXd mean_position() const { return positions.rowwise().mean(); }
  Eigen::VectorXd mean_velocity() const { return velocities.rowwise().mean(); }

  /// Throws InputError unless N >= 1, d >= 1, shapes agree and every coordinate is finite.
  void validate() const;
};

/// Throws InputError if any coordinate is NaN or infinite.
void require_finite(const Points& points, const char* what);

}  // namespace denseflock
