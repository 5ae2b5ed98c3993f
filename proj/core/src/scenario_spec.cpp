#include "denseflock/scenario_spec.hpp"

#include "denseflock/errors.hpp"

#include <cmath>
#include <string>

namespace denseflock {

namespace {

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw ConfigError(message, key);
}

struct GeneratorCheck {
  const ScenarioSpec& spec;

  void operator()(const RandomClusters& g) const {
    require(g.side > 0.0 && std::isfinite(g.side), "L", "box side L must be positive");
    require(g.margin >= 0.0 && 2.0 * g.margin < g.side, "margin", "margin must be nonnegative and leave room inside the box");
  }

  void operator()(const ThreeBody& g) const {
    const double delta = spec.params.delta;
    require(spec.params.model == ModelKind::DI, "model", "three_body scenario requires the DI model");
    require(g.cluster_size >= 2, "n", "three_body cluster size N must be at least 2");
    require(g.beta > 0.0 && g.beta < delta, "beta", "three_body needs 0 < beta < delta");
    require(g.gamma >= delta, "gamma", "three_body needs gamma >= delta");
    require(g.gamma - g.beta < delta, "gamma", "three_body needs gamma - beta < delta");
    require(std::isfinite(g.v_c) && g.v_c >= 0.0, "v_c", "three_body needs a finite v_c >= 0");
    require(spec.params.m >= 2 && spec.params.m < g.cluster_size, "m",
            "three_body needs 2 <= m < N so that c receives nothing and the cluster interacts");
    const double spread = g.a_spread < 0.0 ? delta / 100.0 : g.a_spread;
    require(spread * spread + g.beta * g.beta < delta * delta, "a_spread", "a_spread too large: b would leave the a balls");
  }

  void operator()(const GroupVsIndividual& g) const {
    require(g.spacing_x >= 0.0 && g.spacing_y >= 0.0, "spacing", "lattice spacing must be nonnegative");
    require(g.gap > 0.0, "gap", "singleton gap must be positive");
  }

  void operator()(const Chain& g) const {
    require(g.spacing >= 0.0, "spacing", "chain spacing must be nonnegative");
    require(g.n_chain >= 1, "n", "chain needs at least one particle");
    require(g.gap > 0.0, "gap", "singleton gap must be positive");
  }
};

}  // namespace

std::size_t generated_size(const Generator& generator) {
  struct Size {
    std::size_t fallback;
    std::size_t operator()(const RandomClusters&) const { return fallback; }
    std::size_t operator()(const ThreeBody& g) const { return g.cluster_size + 1; }
    std::size_t operator()(const GroupVsIndividual&) const { return 29; }
    std::size_t operator()(const Chain& g) const { return g.n_chain + 1; }
  };
  return std::visit(Size{0}, generator);
}

void ScenarioSpec::validate() const {
  params.validate();
  require(dt > 0.0 && std::isfinite(dt), "dt", "dt must be positive");
  require(t_end >= 0.0 && std::isfinite(t_end), "t_end", "t_end must be nonnegative");
  require(sample_every >= 1, "sample_every", "sample_every must be at least 1");
  if (params.model == ModelKind::DI || params.model == ModelKind::CSDelta) domain.require_range(params.delta);
  if (!std::holds_alternative<RandomClusters>(generator)) {
    require(params.n == generated_size(generator), "n",
            "particle count " + std::to_string(params.n) + " does not match the scenario (" +
                std::to_string(generated_size(generator)) + ")");
  }
  std::visit(GeneratorCheck{*this}, generator);
}

std::size_t ScenarioSpec::step_count() const { return static_cast<std::size_t>(std::llround(t_end / dt)); }

}  // namespace denseflock
