#include "denseflock/scenarios.hpp"

#include "denseflock/dynamics.hpp"
#include "denseflock/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace denseflock {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) { return splitmix64(splitmix64(master) ^ index); }

EnsembleState init_random_clusters(std::size_t n, double side, std::uint64_t seed, double margin) {
  if (n < 1) throw ConfigError("particle count must be at least 1", "n");
  if (!(margin >= 0.0) || !(2.0 * margin < side)) throw ConfigError("margin leaves no room inside the box", "margin");
  Rng rng(seed);
  const auto cols = static_cast<Eigen::Index>(n);
  EnsembleState s(0.0, Points(2, cols), Points(2, cols));
  for (Eigen::Index i = 0; i < cols; ++i) {
    s.positions(0, i) = rng.uniform(margin, side - margin);
    s.positions(1, i) = rng.uniform(margin, side - margin);
  }
  // the first N/2 particles get the extra drift r_i (0.5, 1)
  const auto biased = static_cast<Eigen::Index>(n / 2);
  for (Eigen::Index i = 0; i < cols; ++i) {
    const double r = rng.uniform();
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    s.velocities(0, i) = r * std::cos(angle);
    s.velocities(1, i) = r * std::sin(angle);
    if (i < biased) {
      s.velocities(0, i) += 0.5 * r;
      s.velocities(1, i) += r;
    }
  }
  return s;
}

ThreeBodyIndices three_body_indices(const ThreeBody& config) { return {config.cluster_size - 1, config.cluster_size}; }

EnsembleState init_three_body(const ThreeBody& config, double delta, std::uint64_t seed) {
  const double spread = config.a_spread < 0.0 ? delta / 100.0 : config.a_spread;
  const std::size_t n = config.cluster_size + 1;
  const auto [b, c] = three_body_indices(config);
  Rng rng(seed);
  EnsembleState s(0.0, Points::Zero(2, static_cast<Eigen::Index>(n)), Points::Zero(2, static_cast<Eigen::Index>(n)));
  // a cloud jittered across the line only, so b and c keep their distances to every a
  for (std::size_t i = 0; i < b; ++i) s.positions(1, static_cast<Eigen::Index>(i)) = spread == 0.0 ? 0.0 : rng.uniform(-spread, spread);
  s.positions(0, static_cast<Eigen::Index>(b)) = config.beta;
  s.positions(0, static_cast<Eigen::Index>(c)) = config.gamma;
  s.velocities(config.transverse ? 1 : 0, static_cast<Eigen::Index>(c)) = config.v_c;
  return s;
}

LatticeLayout layout_of(const GroupVsIndividual& config) {
  LatticeLayout layout = config.shape == GroupShape::A ? LatticeLayout{14, 2, 1.2, 0.6} : LatticeLayout{4, 7, 1.2, 0.6};
  if (config.spacing_x > 0.0) layout.spacing_x = config.spacing_x;
  if (config.spacing_y > 0.0) layout.spacing_y = config.spacing_y;
  return layout;
}

EnsembleState init_group_vs_individual(const GroupVsIndividual& config) {
  const LatticeLayout layout = layout_of(config);
  const std::size_t cluster = layout.cols * layout.rows;
  const auto n = static_cast<Eigen::Index>(cluster + 1);
  EnsembleState s(0.0, Points(2, n), Points(2, n));
  Eigen::Index i = 0;
  for (std::size_t col = 0; col < layout.cols; ++col) {
    for (std::size_t row = 0; row < layout.rows; ++row, ++i) {
      // front column at x = 0, rows centred on the approach line y = 0
      s.positions(0, i) = -static_cast<double>(layout.cols - 1 - col) * layout.spacing_x;
      s.positions(1, i) = (static_cast<double>(row) - 0.5 * static_cast<double>(layout.rows - 1)) * layout.spacing_y;
      s.velocities.col(i) = config.v_cluster;
    }
  }
  s.positions.col(i) = Eigen::Vector2d(config.gap, 0.0);
  s.velocities.col(i) = config.v_single;
  return s;
}

double chain_spacing(const Chain& config) { return config.spacing > 0.0 ? config.spacing : 1.0; }

EnsembleState init_chain(const Chain& config) {
  const double spacing = chain_spacing(config);
  const auto n = static_cast<Eigen::Index>(config.n_chain + 1);
  EnsembleState s(0.0, Points(2, n), Points(2, n));
  const double centre = 0.5 * static_cast<double>(config.n_chain - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    s.positions.col(i) = Eigen::Vector2d(0.0, (static_cast<double>(i) - centre) * spacing);
    s.velocities.col(i) = config.v_chain;
  }
  s.positions.col(n - 1) = Eigen::Vector2d(config.gap, 0.0);
  s.velocities.col(n - 1) = config.v_single;
  return s;
}

EnsembleState init_lattice(std::size_t cols, std::size_t rows, double spacing, double amplitude, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(cols * rows);
  Rng rng(seed);
  EnsembleState s(0.0, Points(2, n), Points(2, n));
  for (Eigen::Index i = 0; i < n; ++i) {
    s.positions(0, i) = static_cast<double>(static_cast<std::size_t>(i) % cols) * spacing;
    s.positions(1, i) = static_cast<double>(static_cast<std::size_t>(i) / cols) * spacing;
    s.velocities(0, i) = rng.uniform(-amplitude, amplitude);
    s.velocities(1, i) = rng.uniform(-amplitude, amplitude);
  }
  return s;
}

EnsembleState make_initial_state(const ScenarioSpec& spec) {
  struct Make {
    const ScenarioSpec& spec;
    EnsembleState operator()(const RandomClusters& g) const {
      return init_random_clusters(spec.params.n, g.side, spec.seed, g.margin);
    }
    EnsembleState operator()(const ThreeBody& g) const { return init_three_body(g, spec.params.delta, spec.seed); }
    EnsembleState operator()(const GroupVsIndividual& g) const { return init_group_vs_individual(g); }
    EnsembleState operator()(const Chain& g) const { return init_chain(g); }
  };
  return std::visit(Make{spec}, spec.generator);
}

namespace {

ModelParams box_params(ModelKind model, std::size_t n) {
  ModelParams p;
  p.model = model;
  p.n = n;
  p.m = 3;
  p.delta = 2.0;
  p.policy = {model == ModelKind::CS ? NormalizationPolicy::Kind::Flat : NormalizationPolicy::Kind::PerNeighbor, 1.0};
  if (model == ModelKind::CSQ) p.q = 3;
  return p;
}

}  // namespace

ScenarioSpec box_spec(ModelKind model, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.name = std::string("box_") + std::string(to_string(model));
  spec.params = box_params(model, 64);
  spec.domain = Domain::periodic(25.0);
  spec.dt = 0.01;
  spec.t_end = 150.0;
  spec.sample_every = 10;
  spec.seed = seed;
  spec.generator = RandomClusters{25.0, 2.0};
  return spec;
}

ScenarioSpec three_body_spec(double beta, double gamma, double v_c, std::size_t cluster_size, double delta) {
  ScenarioSpec spec;
  spec.name = "three_body";
  spec.params.model = ModelKind::DI;
  spec.params.n = cluster_size + 1;
  spec.params.m = 3;
  spec.params.delta = delta;
  spec.params.policy = {NormalizationPolicy::Kind::Constant, 1.0};
  spec.domain = Domain::unbounded();
  spec.dt = 0.01;
  // velocities relax on the slow scale N + 1; five of those leave < 1% of v_c
  spec.t_end = 5.0 * static_cast<double>(cluster_size + 1);
  spec.sample_every = 10;
  spec.generator = ThreeBody{beta, gamma, v_c, cluster_size, -1.0, false};
  spec.record_tables = true;
  spec.record_clusters = false;
  return spec;
}

ScenarioSpec group_spec(ModelKind model, GroupShape shape) {
  ScenarioSpec spec;
  spec.name = std::string("group_") + (shape == GroupShape::A ? "a_" : "b_") + std::string(to_string(model));
  spec.params = box_params(model, 29);
  spec.domain = Domain::unbounded();
  spec.dt = 0.01;
  spec.t_end = 30.0;
  spec.sample_every = 10;
  GroupVsIndividual g;
  g.shape = shape;
  spec.generator = g;
  return spec;
}

ScenarioSpec chain_spec(double delta) {
  ScenarioSpec spec;
  spec.name = "chain";
  spec.params.model = ModelKind::DI;
  spec.params.n = 22;
  spec.params.m = 3;
  spec.params.delta = delta;
  spec.params.policy = {NormalizationPolicy::Kind::Constant, 1.0};
  spec.domain = Domain::unbounded();
  spec.dt = 0.01;
  spec.t_end = 30.0;
  spec.sample_every = 10;
  spec.generator = Chain{};
  return spec;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Stability: return "stability";
    case Regime::Breaking: return "breaking";
    case Regime::Sticking: return "sticking";
    case Regime::Undetermined: return "undetermined";
  }
  return "?";
}

RegimeResult classify_three_body(const TrajectoryRecord& record) {
  const auto* config = std::get_if<ThreeBody>(&record.spec.generator);
  if (config == nullptr) throw InputError("classify_three_body needs a three_body record");
  if (record.samples.empty()) throw InputError("record has no samples");
  const auto [b, c] = three_body_indices(*config);

  RegimeResult result;
  for (const Sample& sample : record.samples) {
    if (!sample.table) throw InputError("three_body record was run without neighbour tables");
    const NeighborTable& table = *sample.table;
    if (!result.t_c_detach && !table.contains(b, c)) result.t_c_detach = sample.state.t;
    if (!result.t_b_detach) {
      for (std::size_t a = 0; a < b; ++a) {
        if (!table.contains(a, b)) {
          result.t_b_detach = sample.state.t;
          break;
        }
      }
    }
  }
  const Sample& last = record.samples.back();
  result.final_momentum = total_momentum(last.state.velocities);

  if (result.t_b_detach && (!result.t_c_detach || *result.t_b_detach <= *result.t_c_detach)) {
    result.regime = Regime::Breaking;
  } else if (result.t_c_detach && !result.t_b_detach) {
    result.regime = Regime::Stability;
  } else if (!result.t_c_detach && !result.t_b_detach) {
    Eigen::Vector2d target = Eigen::Vector2d::Zero();
    target[config->transverse ? 1 : 0] = config->v_c;
    const Points& v = last.state.velocities;
    const double gap = (v.colwise() - target).colwise().norm().maxCoeff();
    result.regime = gap <= 0.1 * std::abs(config->v_c) ? Regime::Sticking : Regime::Undetermined;
  } else {
    result.regime = Regime::Undetermined;
  }
  return result;
}

RegimeResult predict_three_body(double beta, double gamma, double delta, std::size_t n, double v_c) {
  RegimeResult result;
  result.final_momentum = Eigen::Vector2d::Zero();
  const double speed = std::abs(v_c);
  const auto nn = static_cast<double>(n);
  if (speed == 0.0 || (std::abs(gamma - beta) + nn * speed <= delta && std::abs(beta) + speed <= delta)) {
    result.regime = Regime::Sticking;
    return result;
  }
  const double t_c = (delta - std::abs(gamma - beta)) / speed;
  const double t_b = nn * (delta - beta) / speed;
  if (t_b < t_c && t_b * speed * (1.0 / nn + 1.0) < delta) {
    result.regime = Regime::Breaking;
    result.t_b_detach = t_b;
    result.t_c_detach = t_c;
  } else {
    result.regime = Regime::Stability;
    result.t_c_detach = t_c;
  }
  return result;
}

double momentum_estimate(Regime regime, double delta, std::size_t n, double v_c) {
  const auto nn = static_cast<double>(n);
  switch (regime) {
    case Regime::Stability:
    case Regime::Breaking:
      if (v_c == 0.0) return delta;
      return delta + v_c * std::exp(-delta / (nn * v_c));
    case Regime::Sticking: return nn * v_c;
    case Regime::Undetermined: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace denseflock
