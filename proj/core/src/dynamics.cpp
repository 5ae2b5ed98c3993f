#include "denseflock/dynamics.hpp"

#include "denseflock/errors.hpp"

#include <algorithm>
#include <numbers>

namespace denseflock {

Points acceleration_di(const Points& velocities, const NeighborTable& table, const NormalizationPolicy& policy) {
  const auto n = static_cast<std::size_t>(velocities.cols());
  if (table.size() != n) throw InputError("neighbour table size does not match the ensemble");
  Points acc = Points::Zero(velocities.rows(), velocities.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& set = table.sets[i];
    if (set.empty()) continue;
    const double m = policy.value(n, i, set.size());
    const auto ci = static_cast<Eigen::Index>(i);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(velocities.rows());
    for (Index k : set) sum += velocities.col(k) - velocities.col(ci);
    acc.col(ci) = m * sum;
  }
  return acc;
}

Points acceleration_cs(const Points& positions, const Points& velocities, const NeighborTable& table,
                       const NormalizationPolicy& policy, const CommunicationWeight& weight, const Domain& domain) {
  const auto n = static_cast<std::size_t>(velocities.cols());
  if (table.size() != n || positions.cols() != velocities.cols()) {
    throw InputError("neighbour table size does not match the ensemble");
  }
  Points acc = Points::Zero(velocities.rows(), velocities.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& set = table.sets[i];
    if (set.empty()) continue;
    const double m = policy.value(n, i, set.size());
    const auto ci = static_cast<Eigen::Index>(i);
    for (Index k : set) {
      if (k == i) continue;
      const double w = weight(domain.distance(positions.col(ci), positions.col(k)));
      acc.col(ci) += (m * w) * (velocities.col(k) - velocities.col(ci));
    }
  }
  return acc;
}

Points acceleration(const ModelParams& params, const Points& positions, const Points& velocities,
                    const NeighborTable& table, const Domain& domain) {
  if (params.model == ModelKind::DI) return acceleration_di(velocities, table, params.policy);
  return acceleration_cs(positions, velocities, table, params.policy, params.weight, domain);
}

double velocity_diameter(const Points& velocities) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < velocities.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < velocities.cols(); ++j) {
      best = std::max(best, (velocities.col(i) - velocities.col(j)).squaredNorm());
    }
  }
  return std::sqrt(best);
}

Eigen::VectorXd total_momentum(const Points& velocities) { return velocities.rowwise().sum(); }

double max_deviation_from_mean(const Points& velocities) {
  const Eigen::VectorXd mean = velocities.rowwise().mean();
  return (velocities.colwise() - mean).colwise().norm().maxCoeff();
}

DensityRatio density_ratio(std::size_t n, std::size_t m, double delta, double side) {
  if (!(side > 0.0)) throw InputError("box side must be positive");
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  return {static_cast<double>(n) / (side * side), static_cast<double>(m) / (std::numbers::pi * delta * delta)};
}

}  // namespace denseflock
