#pragma once

#include "denseflock/integrate.hpp"

#include <filesystem>
#include <ostream>

namespace denseflock {

/// t,id,x0,x1,v0,v1,cluster: one row per particle per sample (positions wrapped).
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);
/// t,vmax,mom0,mom1,n_clusters
void write_diagnostics_csv(std::ostream& out, const TrajectoryRecord& record);
/// t,cluster_id,size,is_delta_packed,lambda2 (lambda2 empty for asymmetric clusters).
void write_clusters_csv(std::ostream& out, const TrajectoryRecord& record);

/// Tab-separated `time V` and `time sumvx` columns for plotting tools.
void write_velocity_spread(std::ostream& out, const TrajectoryRecord& record);
void write_momentum_x(std::ostream& out, const TrajectoryRecord& record);

/// Writes velocity_spread.dat and momentum_x.dat into `dir`.
void write_plot_data(const std::filesystem::path& dir, const TrajectoryRecord& record);

}  // namespace denseflock
