#include "denseflock/analytic.hpp"
#include "denseflock/app/commands.hpp"
#include "denseflock/dynamics.hpp"
#include "denseflock/graph.hpp"
#include "denseflock/integrate.hpp"
#include "denseflock/scenarios.hpp"

#include <cmath>
#include <numeric>

namespace denseflock::app {

namespace {

struct OracleRun {
  double max_error = 0.0;
  bool topology_fixed = true;
};

// Three-body set-up whose neighbour sets never change on [0, 10], so the simulated
// v_b must follow the closed form of the reduced system.
OracleRun oracle_run(double dt) {
  ScenarioSpec spec = three_body_spec(7.0, 10.0, 1.0, 10, 10.0);
  std::get<ThreeBody>(spec.generator).a_spread = 0.0;
  spec.dt = dt;
  spec.t_end = 10.0;
  spec.record_tables = false;
  spec.record_clusters = false;
  const ReducedSolution sol = reduced_solution(10, 1.0);
  const std::size_t b = 9;

  OracleRun run;
  std::optional<NeighborTable> first;
  run_simulation(spec, [&](std::size_t, const EnsembleState& s, const NeighborTable& table) {
    if (!first) first = table;
    run.topology_fixed = run.topology_fixed && table.sets == first->sets;
    run.max_error = std::max(run.max_error, std::abs(s.velocities(0, static_cast<Eigen::Index>(b)) - eval_v_b(sol, s.t)));
  });
  return run;
}

CheckResult check_oracle(double scale, OracleRun& coarse) {
  coarse = oracle_run(1e-3);
  CheckResult c{"closed_form_oracle", false, coarse.max_error, 1e-6 * scale, {}};
  c.passed = coarse.topology_fixed && c.measured <= c.limit;
  if (!coarse.topology_fixed) c.detail = "neighbour sets changed during the run";
  return c;
}

CheckResult check_order(const OracleRun& coarse) {
  const OracleRun fine = oracle_run(5e-4);
  CheckResult c{"rk4_convergence_ratio", false, coarse.max_error / fine.max_error, 12.0, "error(dt) / error(dt/2)"};
  c.passed = c.measured >= c.limit;
  return c;
}

CheckResult check_monotone(double scale) {
  ScenarioSpec spec = box_spec(ModelKind::DI, 1);
  spec.t_end = 30.0;
  spec.record_clusters = false;
  double previous = -1.0, v0 = 0.0, worst = 0.0;
  run_simulation(spec, [&](std::size_t step, const EnsembleState& s, const NeighborTable&) {
    const double v = velocity_diameter(s.velocities);
    if (step == 0) v0 = v;
    else worst = std::max(worst, v - previous);
    previous = v;
  });
  CheckResult c{"velocity_spread_nonincreasing", false, worst / v0, 1e-8 * scale, "largest step increase of V / V(0)"};
  c.passed = c.measured <= c.limit;
  return c;
}

CheckResult check_momentum(double scale) {
  double worst = 0.0;
  for (GroupShape shape : {GroupShape::A, GroupShape::B}) {
    ScenarioSpec spec = group_spec(ModelKind::CS, shape);
    spec.record_clusters = false;
    Eigen::VectorXd p0;
    run_simulation(spec, [&](std::size_t step, const EnsembleState& s, const NeighborTable&) {
      const Eigen::VectorXd p = total_momentum(s.velocities);
      if (step == 0) p0 = p;
      worst = std::max(worst, (p - p0).cwiseAbs().maxCoeff());
    });
  }
  CheckResult c{"cs_momentum_conserved", false, worst, 1e-10 * scale, "max |sum v(t) - sum v(0)|, both group shapes"};
  c.passed = c.measured <= c.limit;
  return c;
}

CheckResult check_search() {
  std::size_t mismatches = 0;
  ModelParams params;
  params.n = 200;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Domain domain = Domain::periodic(10.0);
    const EnsembleState s = init_random_clusters(params.n, 10.0, seed, 0.0);
    const NeighborTable reference = neighbor_sets(params, s.positions, domain, NeighborSearch::Pairwise);
    for (NeighborSearch search : {NeighborSearch::CellGrid, NeighborSearch::Ghost})
      if (!(neighbor_sets(params, s.positions, domain, search) == reference)) ++mismatches;
  }
  CheckResult c{"neighbor_search_equivalence", false, static_cast<double>(mismatches), 0.0,
                "cell grid and ghost tables differing from pairwise"};
  c.passed = mismatches == 0;
  return c;
}

CheckResult check_certificate() {
  // 3 x 3 lattice of spacing delta/2; the certificate radius must exceed sqrt(2) spacing so
  // that the corner r-balls hold m + 1 particles.
  const double delta = 2.0, spacing = 1.0, r = 1.5;
  ScenarioSpec spec;
  spec.name = "certificate";
  spec.params.model = ModelKind::DI;
  spec.params.n = 9;
  spec.params.m = 3;
  spec.params.delta = delta;
  spec.params.policy = {NormalizationPolicy::Kind::Flat, 1.0};
  spec.dt = 0.01;
  spec.t_end = 100.0;
  spec.record_clusters = false;
  const EnsembleState initial = init_lattice(3, 3, spacing, 0.01, 7);

  const NeighborTable table = neighbor_sets(spec.params, initial.positions, spec.domain);
  std::vector<Index> all(9);
  std::iota(all.begin(), all.end(), Index{0});
  const double lambda2 = fiedler_value(build_digraph(table, spec.params.policy), all);
  const double threshold = 2.0 / (lambda2 * (delta - r));
  spec.params.policy.kappa = 1.5 * threshold * 9.0;
  const double m_star = spec.params.policy.kappa / 9.0;
  const FlockingCertificate cert = flocking_certificate(r, delta, m_star, lambda2);

  bool packed = true;
  std::vector<TimedValue> series;
  run_simulation(spec, initial, [&](std::size_t step, const EnsembleState& s, const NeighborTable&) {
    packed = packed && is_r_densely_packed(s.positions, all, delta, spec.params.m, spec.domain).is_packed &&
             is_r_densely_packed(s.positions, all, r, spec.params.m, spec.domain).is_packed;
    if (step % 5 == 0) series.push_back({s.t, max_deviation_from_mean(s.velocities)});
  });
  const double floor = series.front().value * 1e-9;
  double t_floor = series.back().t;
  for (const TimedValue& p : series)
    if (p.value <= floor) {
      t_floor = p.t;
      break;
    }
  std::vector<TimedValue> window;
  for (const TimedValue& p : series)
    if (p.t <= 0.5 * t_floor) window.push_back(p);
  const DecayFit fit = decay_rate_fit(window);
  const double predicted = m_star * lambda2;

  CheckResult c{"certificate_implies_flocking", false, -fit.slope / predicted, 0.8,
                "decay rate / (M_* lambda2), R^2 = " + format_double(fit.r_squared)};
  c.passed = cert.holds && packed && fit.r_squared >= 0.95 && c.measured >= c.limit;
  if (!cert.holds) c.detail += "; certificate does not hold: " + cert.reason;
  if (!packed) c.detail += "; packing lost";
  return c;
}

}  // namespace

std::vector<CheckResult> run_verification(double scale) {
  std::vector<CheckResult> results;
  OracleRun coarse;
  results.push_back(check_oracle(scale, coarse));
  results.push_back(check_order(coarse));
  results.push_back(check_monotone(scale));
  results.push_back(check_momentum(scale));
  results.push_back(check_search());
  results.push_back(check_certificate());
  return results;
}

int cmd_verify(double scale, std::ostream& out) {
  bool all = true;
  for (const CheckResult& c : run_verification(scale)) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": measured " << format_double(c.measured) << ", limit "
        << format_double(c.limit);
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
    all = all && c.passed;
  }
  return all ? Ok : VerificationFailure;
}

}  // namespace denseflock::app
