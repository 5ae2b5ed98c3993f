#include "denseflock/integrate.hpp"

#include "denseflock/dynamics.hpp"
#include "denseflock/errors.hpp"
#include "denseflock/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace denseflock {

DelayBuffer::DelayBuffer(std::size_t h_steps, Points initial) : h_steps_(h_steps) {
  if (h_steps_ < 1) throw ConfigError("h_steps must be at least 1", "h_steps");
  history_.push_back(std::move(initial));
}

void DelayBuffer::push(Points positions) {
  history_.push_back(std::move(positions));
  ++newest_step_;
  while (history_.size() > h_steps_ + 1) history_.pop_front();
}

const Points& DelayBuffer::delayed(std::size_t step) const {
  if (step > newest_step_) throw PreconditionError("delay buffer queried ahead of its newest step");
  const std::size_t target = step >= h_steps_ ? step - h_steps_ : 0;
  const std::size_t oldest = newest_step_ + 1 - history_.size();
  if (target < oldest) throw PreconditionError("delay buffer no longer holds the requested step");
  return history_[target - oldest];
}

EnsembleState rk4_step(const EnsembleState& state, double dt, const ModelParams& params, const NeighborTable& table,
                       const Domain& domain) {
  const Points& x = state.positions;
  const Points& v = state.velocities;
  auto accel = [&](const Points& xs, const Points& vs) { return acceleration(params, xs, vs, table, domain); };

  const Points kv1 = accel(x, v) * dt;
  const Points kx1 = v * dt;
  const Points v2 = v + 0.5 * kv1;
  const Points kv2 = accel(x + 0.5 * kx1, v2) * dt;
  const Points kx2 = v2 * dt;
  const Points v3 = v + 0.5 * kv2;
  const Points kv3 = accel(x + 0.5 * kx2, v3) * dt;
  const Points kx3 = v3 * dt;
  const Points v4 = v + kv3;
  const Points kv4 = accel(x + kx3, v4) * dt;
  const Points kx4 = v4 * dt;

  EnsembleState next;
  next.t = state.t + dt;
  next.velocities = v + (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4) / 6.0;
  next.positions = x + (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4) / 6.0;
  return next;
}

NeighborTable topology_at(std::size_t step, const EnsembleState& state, const ModelParams& params,
                          const DelayBuffer& buffer, const Domain& domain, NeighborSearch search) {
  const Points& source = params.model == ModelKind::DI ? buffer.delayed(step) : state.positions;
  return neighbor_sets(params, source, domain, search);
}

EnsembleState rk4_step(const EnsembleState& state, std::size_t step, double dt, const ModelParams& params,
                       const DelayBuffer& buffer, const Domain& domain, NeighborSearch search) {
  const NeighborTable table = topology_at(step, state, params, buffer, domain, search);
  return rk4_step(state, dt, params, table, domain);
}

Simulation::Simulation(const ScenarioSpec& spec, EnsembleState initial)
    : spec_(spec), state_(std::move(initial)), unwrapped_(state_.positions), buffer_(spec.params.h_steps, Points{}) {
  spec_.validate();
  state_.validate();
  if (state_.size() != spec_.params.n) throw ConfigError("initial state size does not match params.n", "n");
  spec_.domain.wrap(state_.positions);
  buffer_ = DelayBuffer(spec_.params.h_steps, state_.positions);
  t0_ = state_.t;
}

const NeighborTable& Simulation::topology() {
  if (!table_) table_ = topology_at(step_, state_, spec_.params, buffer_, spec_.domain, spec_.search);
  return *table_;
}

const Points& Simulation::topology_positions() const {
  return spec_.params.model == ModelKind::DI ? buffer_.delayed(step_) : state_.positions;
}

void Simulation::advance() {
  const NeighborTable& table = topology();
  EnsembleState next = rk4_step(state_, spec_.dt, spec_.params, table, spec_.domain);
  if (!next.positions.allFinite() || !next.velocities.allFinite()) {
    throw IntegrationFault("non-finite state produced by the RK4 update", step_);
  }
  unwrapped_ += next.positions - state_.positions;
  spec_.domain.wrap(next.positions);
  ++step_;
  next.t = t0_ + static_cast<double>(step_) * spec_.dt;
  state_ = std::move(next);
  buffer_.push(state_.positions);
  table_.reset();
}

Sample make_sample(const ScenarioSpec& spec, std::size_t step, const EnsembleState& state, const Points& unwrapped,
                   const NeighborTable& table, const Points& table_positions) {
  Sample sample;
  sample.step = step;
  sample.state = state;
  sample.unwrapped_positions = unwrapped;
  sample.clusters = strongly_connected_components(table);
  sample.diagnostics.vmax = velocity_diameter(state.velocities);
  sample.diagnostics.momentum = total_momentum(state.velocities);
  sample.diagnostics.n_clusters = sample.clusters.cluster_count;
  if (spec.record_clusters) {
    const auto members = sample.clusters.members();
    for (std::size_t c = 0; c < members.size(); ++c) {
      ClusterSummary summary;
      summary.cluster_id = static_cast<int>(c);
      summary.size = members[c].size();
      summary.is_delta_packed =
          is_r_densely_packed(table_positions, members[c], spec.params.delta, spec.params.m, spec.domain).is_packed;
      summary.lambda2 = cluster_fiedler(table, spec.params.policy, members[c]);
      sample.cluster_summaries.push_back(summary);
    }
  }
  if (spec.record_tables) sample.table = table;
  return sample;
}

TrajectoryRecord run_simulation(const ScenarioSpec& spec, const StepObserver& observer) {
  spec.validate();
  return run_simulation(spec, make_initial_state(spec), observer);
}

TrajectoryRecord run_simulation(const ScenarioSpec& spec, EnsembleState initial, const StepObserver& observer) {
  Simulation sim(spec, std::move(initial));
  TrajectoryRecord record;
  record.spec = spec;
  const std::size_t steps = spec.step_count();
  const std::size_t every = std::max<std::size_t>(spec.sample_every, 1);
  for (std::size_t s = 0;; ++s) {
    const NeighborTable& table = sim.topology();
    if (observer) observer(s, sim.state(), table);
    if (s % every == 0 || s == steps) {
      record.samples.push_back(make_sample(spec, s, sim.state(), sim.unwrapped_positions(), table, sim.topology_positions()));
    }
    if (s == steps) break;
    sim.advance();
  }
  return record;
}

}  // namespace denseflock
