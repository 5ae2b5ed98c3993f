#include "denseflock/output.hpp"

#include "denseflock/config.hpp"
#include "denseflock/errors.hpp"

#include <fstream>

namespace denseflock {

namespace {

void require_planar(const TrajectoryRecord& record) {
  for (const Sample& s : record.samples)
    if (s.state.dim() != 2) throw InputError("CSV output expects two-dimensional states");
}

std::ofstream open_file(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record) {
  require_planar(record);
  out << "t,id,x0,x1,v0,v1,cluster\n";
  for (const Sample& s : record.samples) {
    const std::string t = format_double(s.state.t);
    for (Eigen::Index i = 0; i < s.state.positions.cols(); ++i) {
      out << t << ',' << i << ',' << format_double(s.state.positions(0, i)) << ','
          << format_double(s.state.positions(1, i)) << ',' << format_double(s.state.velocities(0, i)) << ','
          << format_double(s.state.velocities(1, i)) << ',' << s.clusters.labels[static_cast<std::size_t>(i)] << '\n';
    }
  }
}

void write_diagnostics_csv(std::ostream& out, const TrajectoryRecord& record) {
  require_planar(record);
  out << "t,vmax,mom0,mom1,n_clusters\n";
  for (const Sample& s : record.samples) {
    const Diagnostics& d = s.diagnostics;
    out << format_double(s.state.t) << ',' << format_double(d.vmax) << ',' << format_double(d.momentum[0]) << ','
        << format_double(d.momentum[1]) << ',' << d.n_clusters << '\n';
  }
}

void write_clusters_csv(std::ostream& out, const TrajectoryRecord& record) {
  out << "t,cluster_id,size,is_delta_packed,lambda2\n";
  for (const Sample& s : record.samples) {
    const std::string t = format_double(s.state.t);
    for (const ClusterSummary& c : s.cluster_summaries) {
      out << t << ',' << c.cluster_id << ',' << c.size << ',' << (c.is_delta_packed ? 1 : 0) << ',';
      if (c.lambda2) out << format_double(*c.lambda2);
      out << '\n';
    }
  }
}

void write_velocity_spread(std::ostream& out, const TrajectoryRecord& record) {
  out << "time\tV\n";
  for (const Sample& s : record.samples) out << format_double(s.state.t) << '\t' << format_double(s.diagnostics.vmax) << '\n';
}

void write_momentum_x(std::ostream& out, const TrajectoryRecord& record) {
  out << "time\tsumvx\n";
  for (const Sample& s : record.samples)
    out << format_double(s.state.t) << '\t' << format_double(s.diagnostics.momentum[0]) << '\n';
}

void write_plot_data(const std::filesystem::path& dir, const TrajectoryRecord& record) {
  std::filesystem::create_directories(dir);
  auto spread = open_file(dir / "velocity_spread.dat");
  write_velocity_spread(spread, record);
  auto momentum = open_file(dir / "momentum_x.dat");
  write_momentum_x(momentum, record);
  if (!spread || !momentum) throw InputError("failed writing plot data in " + dir.string());
}

}  // namespace denseflock
