#pragma once

#include "denseflock/domain.hpp"
#include "denseflock/model.hpp"
#include "denseflock/neighbors.hpp"
#include "denseflock/state.hpp"

#include <Eigen/Core>

#include <utility>

namespace denseflock {

/// a_i = sum_{k in N_i} M(N, i, #N_i) (v_k - v_i). Empty sets give zero.
Points acceleration_di(const Points& velocities, const NeighborTable& table,
                       const NormalizationPolicy& policy);

/// a_i = sum_{k in N_i} M psi(dist(x_i, x_k)) (v_k - v_i), distances taken at `positions`.
Points acceleration_cs(const Points& positions, const Points& velocities, const NeighborTable& table,
                       const NormalizationPolicy& policy, const CommunicationWeight& weight,
                       const Domain& domain);

/// Dispatch on params.model with a frozen table.
Points acceleration(const ModelParams& params, const Points& positions, const Points& velocities,
                    const NeighborTable& table, const Domain& domain);

/// V = max_{i,j} |v_i - v_j|.
double velocity_diameter(const Points& velocities);

/// Componentwise sum of velocities.
Eigen::VectorXd total_momentum(const Points& velocities);

/// max_i |v_i - mean(v)|.
double max_deviation_from_mean(const Points& velocities);

struct DensityRatio {
  double rho_a;  // N / L^2
  double rho_m;  // m / (pi delta^2)
  double ratio() const { return rho_m / rho_a; }
};

/// Average density of a 2-d box against the minimal interaction density.
DensityRatio density_ratio(std::size_t n, std::size_t m, double delta, double side);

}  // namespace denseflock
