// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "denseflock/analytic.hpp"
#include "denseflock/dynamics.hpp"
#include "denseflock/graph.hpp"
#include "denseflock/integrate.hpp"
#include "denseflock/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

using namespace denseflock;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

std::vector<Index> range_of(std::size_t n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

// brute-force max pairwise velocity distance
double spread(const Points& v) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.cols(); ++i)
    for (Eigen::Index j = i + 1; j < v.cols(); ++j) best = std::max(best, (v.col(i) - v.col(j)).norm());
  return best;
}

// connected pieces of a point set under "closer than r"
int proximity_components(const Points& x, Eigen::Index count, double r) {
  std::vector<int> label(static_cast<std::size_t>(count), -1);
  int pieces = 0;
  for (Eigen::Index s = 0; s < count; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<Eigen::Index> stack{s};
    label[static_cast<std::size_t>(s)] = pieces;
    while (!stack.empty()) {
      const Eigen::Index i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < count; ++j)
        if (label[static_cast<std::size_t>(j)] < 0 && (x.col(i) - x.col(j)).norm() < r) {
          label[static_cast<std::size_t>(j)] = pieces;
          stack.push_back(j);
        }
    }
    ++pieces;
  }
  return pieces;
}

struct OracleError {
  double max_error = 0.0;
  bool topology_fixed = true;
};

OracleError three_body_oracle(double dt) {
  ScenarioSpec spec = three_body_spec(7.0, 10.0, 1.0, 10, 10.0);
  std::get<ThreeBody>(spec.generator).a_spread = 0.0;
  spec.dt = dt;
  spec.t_end = 10.0;
  spec.record_tables = false;
  spec.record_clusters = false;
  const ReducedSolution sol = reduced_solution(10, 1.0);
  OracleError out;
  std::optional<NeighborTable> first;
  run_simulation(spec, [&](std::size_t, const EnsembleState& s, const NeighborTable& t) {
    if (!first) first = t;
    out.topology_fixed = out.topology_fixed && t == *first;
    out.max_error = std::max(out.max_error, std::abs(s.velocities(0, 9) - eval_v_b(sol, s.t)));
  });
  return out;
}

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const OracleError coarse = three_body_oracle(1e-3);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const OracleError fine = three_body_oracle(5e-4);
  const double ratio = coarse.max_error / fine.max_error;
  report(1, "oracle equivalence", coarse.topology_fixed && coarse.max_error <= 1e-6 && ratio >= 12.0 && seconds < 1.0,
         fmt("max |v_b - closed form| = %.3e (<= 1e-6), error ratio dt/(dt/2) = %.2f (>= 12), topology fixed = %d, "
             "run time %.3f s (< 1 s)",
             coarse.max_error, ratio, coarse.topology_fixed, seconds));
}

void criterion_2() {
  const ScenarioSpec spec = box_spec(ModelKind::DI, 1);
  double v0 = 0.0, previous = 0.0, worst = -INFINITY;
  std::size_t steps = 0;
  run_simulation(spec, [&](std::size_t step, const EnsembleState& s, const NeighborTable&) {
    const double v = spread(s.velocities);
    if (step == 0) v0 = v;
    else worst = std::max(worst, v - previous);
    previous = v;
    ++steps;
  });
  report(2, "velocity spread nonincreasing", worst <= 1e-8 * v0,
         fmt("%zu steps, largest increase V(t_n+1) - V(t_n) = %.3e, allowed 1e-8 V(0) = %.3e", steps, worst, 1e-8 * v0));
}

void criterion_3() {
  ScenarioSpec spec;
  spec.params.n = 9;
  spec.params.m = 3;
  spec.params.delta = 2.0;
  spec.params.policy = {NormalizationPolicy::Kind::Flat, 1.0};
  spec.t_end = 50.0;
  spec.record_clusters = false;
  const EnsembleState initial = init_lattice(3, 3, 1.0, 0.5, 11);
  const bool packed = is_r_densely_packed(initial.positions, range_of(9), 2.0, 3, spec.domain).is_packed;
  const Eigen::VectorXd p0 = total_momentum(initial.velocities);
  double drift = 0.0;
  run_simulation(spec, initial, [&](std::size_t, const EnsembleState& s, const NeighborTable&) {
    drift = std::max(drift, (total_momentum(s.velocities) - p0).cwiseAbs().maxCoeff());
  });
  report(3, "momentum conservation", packed && drift <= 1e-10,
         fmt("initially delta-packed = %d, max |sum v(t) - sum v(0)| on [0,50] = %.3e (<= 1e-10)", packed, drift));
}

void criterion_4() {
  const double delta = 2.0, spacing = delta / 2.0, r = 1.5;
  ScenarioSpec spec;
  spec.params.n = 9;
  spec.params.m = 3;
  spec.params.delta = delta;
  spec.params.policy = {NormalizationPolicy::Kind::Flat, 1.0};
  spec.t_end = 100.0;
  spec.record_clusters = false;
  const EnsembleState initial = init_lattice(3, 3, spacing, 0.01, 7);
  const auto all = range_of(9);

  // Laplacian of the lattice's interaction graph (Flat policy: unit weights)
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(9, 9);
  for (Eigen::Index i = 0; i < 9; ++i)
    for (Eigen::Index k = 0; k < 9; ++k)
      if (i != k && (initial.positions.col(i) - initial.positions.col(k)).norm() < delta) phi(i, k) = 1.0;
  Eigen::MatrixXd lap = -phi;
  lap.diagonal() = phi.rowwise().sum();
  const double lambda2 = laplacian_fiedler(lap);
  const double threshold = 2.0 / (lambda2 * (delta - r));
  const double m_star = 1.5 * threshold;
  spec.params.policy.kappa = 9.0 * m_star;
  const bool certified = flocking_certificate(r, delta, m_star, lambda2).holds;

  bool packed = true;
  std::vector<TimedValue> series;
  run_simulation(spec, initial, [&](std::size_t step, const EnsembleState& s, const NeighborTable&) {
    packed = packed && is_r_densely_packed(s.positions, all, delta, 3, spec.domain).is_packed &&
             is_r_densely_packed(s.positions, all, r, 3, spec.domain).is_packed;
    if (step % 5 == 0) series.push_back({s.t, max_deviation_from_mean(s.velocities)});
  });
  // first half of the decay: up to half the time the deviation needs to fall by 1e9
  double t_floor = series.back().t;
  for (const TimedValue& p : series)
    if (p.value <= 1e-9 * series.front().value) {
      t_floor = p.t;
      break;
    }
  std::vector<TimedValue> window;
  for (const TimedValue& p : series)
    if (p.t <= 0.5 * t_floor) window.push_back(p);
  const DecayFit fit = decay_rate_fit(window);
  const double rate = -fit.slope;
  report(4, "flocking certificate", certified && packed && rate >= 0.8 * m_star * lambda2 && fit.r_squared >= 0.95,
         fmt("lambda2 = %.6f, M_* = %.4f > %.4f, packed through t=100 = %d, fitted rate %.4f >= 0.8 M_* lambda2 = %.4f, "
             "R^2 = %.5f (fit window t <= %.2f)",
             lambda2, m_star, threshold, packed, rate, 0.8 * m_star * lambda2, fit.r_squared, 0.5 * t_floor));
}

void criterion_5() {
  struct Case {
    double beta, gamma, v_c;
    Regime expected;
  };
  const Case cases[] = {{1.0, 2.0, 1.0, Regime::Stability}, {1.95, 2.0, 1.0, Regime::Breaking},
                        {1.0, 2.0, 0.03, Regime::Sticking}};
  bool pass = true;
  std::string detail;
  for (const Case& c : cases) {
    const Regime predicted = predict_three_body(c.beta, c.gamma, 2.0, 30, c.v_c).regime;
    std::string line = fmt("(%.2f,%.0f,%.2f): predicted %s", c.beta, c.gamma, c.v_c, std::string(to_string(predicted)).c_str());
    for (double factor : {1.0, 0.5}) {
      ScenarioSpec spec = three_body_spec(c.beta, c.gamma, c.v_c, 30, 2.0);
      spec.dt *= factor;
      spec.sample_every = static_cast<std::size_t>(std::lround(10 / factor));
      const Regime simulated = classify_three_body(run_simulation(spec)).regime;
      line += fmt(", simulated dt=%g %s", spec.dt, std::string(to_string(simulated)).c_str());
      pass = pass && simulated == c.expected;
    }
    pass = pass && predicted == c.expected;
    detail += (detail.empty() ? "" : "; ") + line;
  }
  report(5, "regime table", pass, detail);
}

void criterion_6() {
  std::vector<std::pair<double, Regime>> sweep;
  for (int k = 100; k <= 199; ++k) {
    const double beta = k / 100.0;
    ScenarioSpec spec = three_body_spec(beta, 2.0, 1.0, 30, 2.0);
    spec.t_end = 10.0;  // both detachments happen before t = 2
    sweep.emplace_back(beta, classify_three_body(run_simulation(spec)).regime);
  }
  int switches = 0;
  double boundary = NAN;
  bool only_two = true;
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    only_two = only_two && (sweep[k].second == Regime::Stability || sweep[k].second == Regime::Breaking);
    if (k > 0 && sweep[k].second != sweep[k - 1].second) {
      ++switches;
      boundary = 0.5 * (sweep[k].first + sweep[k - 1].first);
    }
  }
  const double expected = 30.0 * 2.0 / 31.0;
  const bool pass = only_two && switches == 1 && sweep.front().second == Regime::Stability &&
                    std::abs(boundary - expected) <= 0.05;
  report(6, "beta-sweep transition", pass,
         fmt("single Stability->Breaking switch = %d, boundary %.4f vs N delta/(N+1) = %.4f (tolerance 0.05)",
             switches == 1, boundary, expected));
}

void criterion_7() {
  const double ratio = density_ratio(64, 3, 2.0, 25.0).ratio();
  report(7, "density ratio", std::abs(ratio - 2.33) <= 0.01, fmt("rho_m / rho_a = %.5f (2.33 +- 0.01)", ratio));
}

void criterion_8() {
  const std::uint64_t seed = 1;
  int di_clusters = 0, cs_clusters = 0, large = 0, large_packed = 0;
  for (ModelKind model : {ModelKind::DI, ModelKind::CS}) {
    const ScenarioSpec spec = box_spec(model, seed);
    Simulation sim(spec, make_initial_state(spec));
    for (std::size_t k = 0; k < spec.step_count(); ++k) sim.advance();
    const NeighborTable& table = sim.topology();
    const ClusterLabeling c = strongly_connected_components(table);
    if (model == ModelKind::CS) {
      cs_clusters = c.cluster_count;
      continue;
    }
    di_clusters = c.cluster_count;
    for (const auto& members : c.members()) {
      if (members.size() <= spec.params.m) continue;
      ++large;
      if (is_r_densely_packed(sim.topology_positions(), members, spec.params.delta, spec.params.m, spec.domain).is_packed)
        ++large_packed;
    }
  }
  report(8, "DI clusters vs CS", di_clusters >= 2 && cs_clusters == 1 && large == large_packed,
         fmt("seed %llu at t=150: DI %d clusters, CS %d cluster(s), DI clusters larger than m delta-packed %d/%d",
             static_cast<unsigned long long>(seed), di_clusters, cs_clusters, large_packed, large));
}

struct GroupOutcome {
  double final_px, min_px, drift;
};

GroupOutcome group_run(ModelKind model, GroupShape shape, double sx, double sy) {
  ScenarioSpec spec = group_spec(model, shape);
  auto& g = std::get<GroupVsIndividual>(spec.generator);
  g.spacing_x = sx;
  g.spacing_y = sy;
  spec.record_clusters = false;
  GroupOutcome out{0.0, INFINITY, 0.0};
  Eigen::VectorXd p0;
  run_simulation(spec, [&](std::size_t step, const EnsembleState& s, const NeighborTable&) {
    const Eigen::VectorXd p = total_momentum(s.velocities);
    if (step == 0) p0 = p;
    out.drift = std::max(out.drift, (p - p0).cwiseAbs().maxCoeff());
    out.min_px = std::min(out.min_px, p[0]);
    out.final_px = p[0];
  });
  return out;
}

void criterion_9() {
  const double cs_drift =
      std::max(group_run(ModelKind::CS, GroupShape::A, 0, 0).drift, group_run(ModelKind::CS, GroupShape::B, 0, 0).drift);
  int pairs = 0, grid = 0;
  for (double sx : {0.8, 1.0, 1.2, 1.4}) {
    for (double sy : {0.6, 1.0}) {
      ++grid;
      const bool a_flips = group_run(ModelKind::DI, GroupShape::A, sx, sy).final_px < 0.0;
      const GroupOutcome b = group_run(ModelKind::DI, GroupShape::B, sx, sy);
      if (a_flips && b.min_px > 0.0) ++pairs;
    }
  }
  const GroupOutcome a = group_run(ModelKind::DI, GroupShape::A, 0, 0);
  const GroupOutcome b = group_run(ModelKind::DI, GroupShape::B, 0, 0);
  const bool defaults_split = a.final_px < 0.0 && b.min_px > 0.0;
  report(9, "group momentum", cs_drift <= 1e-10 && pairs >= 1 && defaults_split,
         fmt("CS momentum drift %.3e (<= 1e-10); DI sign flip in A only for %d/%d lattice spacings; default lattices: "
             "A final sum vx %.4f, B min sum vx %.4f",
             cs_drift, pairs, grid, a.final_px, b.min_px));
}

void criterion_10() {
  struct ChainOutcome {
    int pieces0, pieces, sccs;
    double single_vx, chain_vx;
  };
  const auto run = [](double delta) {
    const ScenarioSpec spec = chain_spec(delta);
    const TrajectoryRecord r = run_simulation(spec);
    const Sample& first = r.samples.front();
    const Sample& last = r.samples.back();
    return ChainOutcome{proximity_components(first.state.positions, 21, delta),
                        proximity_components(last.state.positions, 21, delta), last.diagnostics.n_clusters,
                        last.state.velocities(0, 21), last.state.velocities.row(0).head(21).mean()};
  };
  const ChainOutcome d2 = run(2.0), d4 = run(4.0);
  const bool split = d2.pieces0 == 1 && d2.pieces > 1;
  const bool stiff = d4.pieces == 1 && d4.sccs == 1 && d4.single_vx < 0.0 && d4.chain_vx < 0.0;
  report(10, "chain regimes", split && stiff,
         fmt("delta=2: chain pieces %d -> %d; delta=4: chain pieces %d, final clusters %d, singleton vx %.4f (< 0), "
             "chain mean vx 0.1 -> %.4f (< 0)",
             d2.pieces0, d2.pieces, d4.pieces, d4.sccs, d4.single_vx, d4.chain_vx));
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion (exception): %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
