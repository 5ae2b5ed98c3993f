#pragma once

#include "denseflock/integrate.hpp"
#include "denseflock/scenario_spec.hpp"
#include "denseflock/state.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace denseflock {

/// Uniform draws in [0, 1) from a 64-bit Mersenne twister, bit-reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 step: derives independent sub-seeds from one master seed.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

EnsembleState init_random_clusters(std::size_t n, double side, std::uint64_t seed, double margin);
EnsembleState init_three_body(const ThreeBody& config, double delta, std::uint64_t seed);
EnsembleState init_group_vs_individual(const GroupVsIndividual& config);
EnsembleState init_chain(const Chain& config);

/// cols x rows square lattice from the origin with velocities uniform in [-amplitude, amplitude]^2.
EnsembleState init_lattice(std::size_t cols, std::size_t rows, double spacing, double amplitude, std::uint64_t seed);

/// Lattice columns/rows of a group shape and the spacing actually used.
struct LatticeLayout {
  std::size_t cols, rows;
  double spacing_x, spacing_y;
};
LatticeLayout layout_of(const GroupVsIndividual& config);
double chain_spacing(const Chain& config);

/// Initial state for any generator.
EnsembleState make_initial_state(const ScenarioSpec& spec);

/// Ready-made specs for the standard experiments.
ScenarioSpec box_spec(ModelKind model, std::uint64_t seed = 1);
ScenarioSpec three_body_spec(double beta, double gamma, double v_c, std::size_t cluster_size, double delta);
ScenarioSpec group_spec(ModelKind model, GroupShape shape);
ScenarioSpec chain_spec(double delta);

enum class Regime { Stability, Breaking, Sticking, Undetermined };
std::string_view to_string(Regime regime);

struct RegimeResult {
  Regime regime = Regime::Undetermined;
  std::optional<double> t_c_detach;  // first sample with c not in N_b
  std::optional<double> t_b_detach;  // first sample with b missing from some N_a
  Eigen::VectorXd final_momentum;
};

/// Particle indices in a three-body run: a cloud 0..N-2, b = N-1, c = N.
struct ThreeBodyIndices {
  std::size_t b, c;
};
ThreeBodyIndices three_body_indices(const ThreeBody& config);

/// Classifies a simulated three-body run. The record must carry neighbour tables.
RegimeResult classify_three_body(const TrajectoryRecord& record);

/// Regime predicted from the large-N detach-time formulas.
RegimeResult predict_three_body(double beta, double gamma, double delta, std::size_t n, double v_c);

/// Asymptotic momentum gained by the cluster; an estimate only.
double momentum_estimate(Regime regime, double delta, std::size_t n, double v_c);

}  // namespace denseflock
