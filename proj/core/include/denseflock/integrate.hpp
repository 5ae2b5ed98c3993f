#pragma once

#include "denseflock/domain.hpp"
#include "denseflock/graph.hpp"
#include "denseflock/model.hpp"
#include "denseflock/neighbors.hpp"
#include "denseflock/scenario_spec.hpp"
#include "denseflock/state.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

namespace denseflock {

/// Position history realising the topology delay h = h_steps * dt.
class DelayBuffer {
 public:
  DelayBuffer(std::size_t h_steps, Points initial);

  /// Record the positions reached at step `current_step() + 1`.
  void push(Points positions);

  /// Positions at step max(step - h_steps, 0). `step` must not exceed current_step().
  const Points& delayed(std::size_t step) const;

  std::size_t current_step() const noexcept { return newest_step_; }
  std::size_t h_steps() const noexcept { return h_steps_; }

 private:
  std::size_t h_steps_;
  std::size_t newest_step_ = 0;
  std::deque<Points> history_;  // history_.back() is newest_step_
};

/// One classical RK4 step with the topology table frozen across the four stages.
/// Positions are returned unwrapped.
EnsembleState rk4_step(const EnsembleState& state, double dt, const ModelParams& params,
                       const NeighborTable& table, const Domain& domain);

/// Table the model uses at `step`: DI reads the delayed positions, the CS family the current ones.
NeighborTable topology_at(std::size_t step, const EnsembleState& state, const ModelParams& params,
                          const DelayBuffer& buffer, const Domain& domain, NeighborSearch search);

/// Convenience overload: computes the table for `step` from the buffer, then steps.
EnsembleState rk4_step(const EnsembleState& state, std::size_t step, double dt, const ModelParams& params,
                       const DelayBuffer& buffer, const Domain& domain,
                       NeighborSearch search = NeighborSearch::Pairwise);

struct Diagnostics {
  double vmax = 0.0;
  Eigen::VectorXd momentum;
  int n_clusters = 0;
};

struct ClusterSummary {
  int cluster_id = 0;
  std::size_t size = 0;
  bool is_delta_packed = false;
  std::optional<double> lambda2;  // empty when the cluster subgraph is asymmetric
};

struct Sample {
  std::size_t step = 0;
  EnsembleState state;            // positions wrapped into the domain
  Points unwrapped_positions;
  ClusterLabeling clusters;
  Diagnostics diagnostics;
  std::vector<ClusterSummary> cluster_summaries;
  std::optional<NeighborTable> table;
};

struct TrajectoryRecord {
  ScenarioSpec spec;
  std::vector<Sample> samples;
};

/// Advances one scenario step by step.
class Simulation {
 public:
  Simulation(const ScenarioSpec& spec, EnsembleState initial);

  const EnsembleState& state() const noexcept { return state_; }
  const Points& unwrapped_positions() const noexcept { return unwrapped_; }
  std::size_t step() const noexcept { return step_; }

  /// Neighbour table in force at the current step.
  const NeighborTable& topology();
  /// Positions the current table was computed from.
  const Points& topology_positions() const;

  /// Advances one step; throws IntegrationFault on a non-finite result.
  void advance();

 private:
  ScenarioSpec spec_;
  EnsembleState state_;
  Points unwrapped_;
  DelayBuffer buffer_;
  std::size_t step_ = 0;
  double t0_ = 0.0;
  std::optional<NeighborTable> table_;
};

/// Called once per step (and for the final state) with the table in force at that step.
using StepObserver = std::function<void(std::size_t step, const EnsembleState& state, const NeighborTable& table)>;

/// Runs `spec` from its generated initial state.
TrajectoryRecord run_simulation(const ScenarioSpec& spec, const StepObserver& observer = {});

/// Runs `spec` from an explicit initial state.
TrajectoryRecord run_simulation(const ScenarioSpec& spec, EnsembleState initial,
                                const StepObserver& observer = {});

/// Builds the per-sample analysis (clusters, diagnostics, summaries) for a state and its table.
Sample make_sample(const ScenarioSpec& spec, std::size_t step, const EnsembleState& state,
                   const Points& unwrapped, const NeighborTable& table, const Points& table_positions);

}  // namespace denseflock
