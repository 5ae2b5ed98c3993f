#pragma once

#include "denseflock/domain.hpp"
#include "denseflock/model.hpp"
#include "denseflock/neighbors.hpp"
#include "denseflock/state.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace denseflock {

/// Weighted digraph of who influences whom: phi(i, k) > 0 iff k is in N_i, i.e. k -> i.
///
/// Weights are M_i / M_*, where M_* is the smallest M realised by a nonempty set in
/// the table. `degrees(i)` is the M-scaled degree #N_i M_i / M_* (self included).
struct InteractionDigraph {
  std::size_t n = 0;
  Eigen::MatrixXd phi;
  Eigen::VectorXd degrees;
  double m_star_realized = 0.0;  // min M over nonempty sets (analytic infimum if none)
  double m_star_analytic = 0.0;  // policy infimum over #N_i in 1..n

  Eigen::MatrixXd laplacian() const { return Eigen::MatrixXd(degrees.asDiagonal()) - phi; }
};

InteractionDigraph build_digraph(const NeighborTable& table, const NormalizationPolicy& policy);

/// Cluster label per node. Labels are numbered by the smallest member index, so the
/// labelling of a given graph is canonical.
struct ClusterLabeling {
  std::vector<int> labels;
  int cluster_count = 0;

  std::vector<std::vector<Index>> members() const;
};

/// Strongly connected components (Tarjan) of the digraph with edges k -> i iff phi(i, k) > 0.
ClusterLabeling strongly_connected_components(const InteractionDigraph& graph);

/// Same, straight from a neighbour table (edge k -> i iff k in N_i).
ClusterLabeling strongly_connected_components(const NeighborTable& table);

struct PackedReport {
  std::vector<Index> cluster;
  double r = 0.0;
  bool connected_at_half_r = false;
  std::size_t min_ball_count = 0;  // fewest ensemble particles in an open r-ball about a member
  bool is_packed = false;
};

/// r-dense packing of `cluster`: the members' r/2-thickening is connected (edges dist < r)
/// and every open r-ball about a member holds more than m particles of the whole ensemble.
PackedReport is_r_densely_packed(const Points& delayed_positions, std::span<const Index> cluster,
                                 double r, std::size_t m, const Domain& domain);

/// Second-smallest eigenvalue of the Laplacian of phi restricted to `cluster`
/// (degrees counted inside the cluster). Throws PreconditionError if the restriction
/// is not symmetric. Singletons give 0.
double fiedler_value(const InteractionDigraph& graph, std::span<const Index> cluster);

/// True when phi restricted to `cluster` equals its transpose to `tolerance`.
bool restriction_is_symmetric(const InteractionDigraph& graph, std::span<const Index> cluster,
                              double tolerance = 1e-12);

/// phi restricted to `cluster`, built straight from a table without the dense n x n matrix.
/// Weights use the same realised M_* as build_digraph.
Eigen::MatrixXd restricted_weights(const NeighborTable& table, const NormalizationPolicy& policy,
                                   std::span<const Index> cluster);

/// Fiedler value of the cluster subgraph, or nullopt when its weights are asymmetric.
std::optional<double> cluster_fiedler(const NeighborTable& table, const NormalizationPolicy& policy,
                                      std::span<const Index> cluster);

/// Second-smallest eigenvalue of a symmetric Laplacian matrix.
double laplacian_fiedler(const Eigen::MatrixXd& laplacian);

struct FlockingCertificate {
  double r = 0.0;
  double delta = 0.0;
  double m_star = 0.0;
  double lambda2 = 0.0;
  double threshold = 0.0;  // 2 / (lambda2 (delta - r)); +inf when r >= delta
  bool holds = false;
  std::string reason;      // empty when the certificate holds
};

/// Sufficient condition for a densely packed ensemble to stay packed and flock:
/// holds iff r < delta and m_star > 2 / (lambda2 (delta - r)).
FlockingCertificate flocking_certificate(double r, double delta, double m_star, double lambda2);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct TimedValue {
  double t;
  double value;
};

/// Least-squares line through (t, log value). Needs >= 2 samples, all values > 0.
DecayFit decay_rate_fit(std::span<const TimedValue> series);

}  // namespace denseflock
