#include "denseflock/graph.hpp"

#include "denseflock/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace denseflock {

InteractionDigraph build_digraph(const NeighborTable& table, const NormalizationPolicy& policy) {
  const std::size_t n = table.size();
  InteractionDigraph g;
  g.n = n;
  g.phi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  g.degrees = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  g.m_star_analytic = n > 0 ? policy.analytic_infimum(n) : 0.0;

  std::vector<double> m_of(n, 0.0);
  double m_star = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (table.sets[i].empty()) continue;
    m_of[i] = policy.value(n, i, table.sets[i].size());
    m_star = std::min(m_star, m_of[i]);
  }
  if (!std::isfinite(m_star)) {
    g.m_star_realized = g.m_star_analytic;
    return g;
  }
  g.m_star_realized = m_star;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = m_of[i] / m_star;
    for (Index k : table.sets[i]) g.phi(static_cast<Eigen::Index>(i), k) = w;
    g.degrees[static_cast<Eigen::Index>(i)] = static_cast<double>(table.sets[i].size()) * w;
  }
  return g;
}

std::vector<std::vector<Index>> ClusterLabeling::members() const {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(cluster_count));
  for (std::size_t i = 0; i < labels.size(); ++i) out[static_cast<std::size_t>(labels[i])].push_back(static_cast<Index>(i));
  return out;
}

namespace {

// Iterative Tarjan over successor lists. SCCs of a digraph and of its reverse coincide,
// so the direction of the lists does not matter.
ClusterLabeling tarjan(const std::vector<std::vector<Index>>& succ) {
  const std::size_t n = succ.size();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<std::pair<Index, std::size_t>> frames;  // (node, next successor position)
  std::vector<std::vector<Index>> components;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(static_cast<Index>(root), 0);
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<Index>(root));
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < succ[v].size()) {
        const Index w = succ[v][pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Index done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Index parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<Index> comp;
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        components.push_back(std::move(comp));
      }
    }
  }

  std::vector<Index> min_member(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    min_member[c] = *std::min_element(components[c].begin(), components[c].end());
  }
  std::vector<std::size_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return min_member[a] < min_member[b]; });

  ClusterLabeling out;
  out.labels.assign(n, -1);
  out.cluster_count = static_cast<int>(components.size());
  for (std::size_t label = 0; label < order.size(); ++label) {
    for (Index v : components[order[label]]) out.labels[v] = static_cast<int>(label);
  }
  return out;
}

}  // namespace

ClusterLabeling strongly_connected_components(const NeighborTable& table) { return tarjan(table.sets); }

ClusterLabeling strongly_connected_components(const InteractionDigraph& graph) {
  std::vector<std::vector<Index>> succ(graph.n);
  for (std::size_t i = 0; i < graph.n; ++i) {
    for (std::size_t k = 0; k < graph.n; ++k) {
      if (graph.phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) > 0.0) succ[i].push_back(static_cast<Index>(k));
    }
  }
  return tarjan(succ);
}

PackedReport is_r_densely_packed(const Points& x, std::span<const Index> cluster, double r, std::size_t m,
                                 const Domain& domain) {
  if (cluster.empty()) throw InputError("packing test needs a nonempty cluster");
  if (!(r > 0.0)) throw InputError("packing radius must be positive");
  require_finite(x, "positions");
  const auto n = static_cast<std::size_t>(x.cols());

  PackedReport report;
  report.cluster.assign(cluster.begin(), cluster.end());
  report.r = r;

  // open r/2-balls about two members overlap iff their centres are closer than r
  std::vector<bool> reached(cluster.size(), false);
  std::vector<std::size_t> queue{0};
  reached[0] = true;
  std::size_t seen = 1;
  while (!queue.empty()) {
    const std::size_t a = queue.back();
    queue.pop_back();
    for (std::size_t b = 0; b < cluster.size(); ++b) {
      if (reached[b]) continue;
      if (domain.distance(x.col(cluster[a]), x.col(cluster[b])) < r) {
        reached[b] = true;
        ++seen;
        queue.push_back(b);
      }
    }
  }
  report.connected_at_half_r = seen == cluster.size();

  report.min_ball_count = std::numeric_limits<std::size_t>::max();
  for (Index k : cluster) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (domain.distance(x.col(k), x.col(static_cast<Eigen::Index>(j))) < r) ++count;
    }
    report.min_ball_count = std::min(report.min_ball_count, count);
  }
  report.is_packed = report.connected_at_half_r && report.min_ball_count > m;
  return report;
}

namespace {

Eigen::MatrixXd restrict_phi(const InteractionDigraph& graph, std::span<const Index> cluster) {
  const auto size = static_cast<Eigen::Index>(cluster.size());
  Eigen::MatrixXd sub(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    for (Eigen::Index b = 0; b < size; ++b) sub(a, b) = graph.phi(cluster[static_cast<std::size_t>(a)], cluster[static_cast<std::size_t>(b)]);
  }
  return sub;
}

bool symmetric(const Eigen::MatrixXd& m, double tolerance) {
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < m.cols(); ++b) {
      const double scale = std::max({1.0, std::abs(m(a, b)), std::abs(m(b, a))});
      if (std::abs(m(a, b) - m(b, a)) > tolerance * scale) return false;
    }
  }
  return true;
}

}  // namespace

bool restriction_is_symmetric(const InteractionDigraph& graph, std::span<const Index> cluster, double tolerance) {
  return symmetric(restrict_phi(graph, cluster), tolerance);
}

double laplacian_fiedler(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");
  return std::max(0.0, solver.eigenvalues()[1]);
}

Eigen::MatrixXd restricted_weights(const NeighborTable& table, const NormalizationPolicy& policy,
                                   std::span<const Index> cluster) {
  const std::size_t n = table.size();
  double m_star = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!table.sets[i].empty()) m_star = std::min(m_star, policy.value(n, i, table.sets[i].size()));
  }
  const auto size = static_cast<Eigen::Index>(cluster.size());
  Eigen::MatrixXd sub = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    const Index i = cluster[static_cast<std::size_t>(a)];
    const auto& set = table.sets[i];
    if (set.empty()) continue;
    const double w = policy.value(n, i, set.size()) / m_star;
    for (Eigen::Index b = 0; b < size; ++b) {
      if (std::binary_search(set.begin(), set.end(), cluster[static_cast<std::size_t>(b)])) sub(a, b) = w;
    }
  }
  return sub;
}

std::optional<double> cluster_fiedler(const NeighborTable& table, const NormalizationPolicy& policy,
                                      std::span<const Index> cluster) {
  const Eigen::MatrixXd phi = restricted_weights(table, policy, cluster);
  if (!symmetric(phi, 1e-12)) return std::nullopt;
  return laplacian_fiedler(Eigen::MatrixXd(phi.rowwise().sum().asDiagonal()) - phi);
}

double fiedler_value(const InteractionDigraph& graph, std::span<const Index> cluster) {
  if (cluster.empty()) throw InputError("Fiedler value needs a nonempty cluster");
  const Eigen::MatrixXd phi = restrict_phi(graph, cluster);
  if (!symmetric(phi, 1e-12)) throw PreconditionError("interaction weights restricted to the cluster are not symmetric");
  const Eigen::MatrixXd lap = Eigen::MatrixXd(phi.rowwise().sum().asDiagonal()) - phi;
  return laplacian_fiedler(lap);
}

FlockingCertificate flocking_certificate(double r, double delta, double m_star, double lambda2) {
  FlockingCertificate cert{r, delta, m_star, lambda2, std::numeric_limits<double>::infinity(), false, {}};
  if (!(r < delta)) {
    cert.reason = "packing radius r must be smaller than delta";
    return cert;
  }
  if (!(lambda2 > 0.0)) {
    cert.reason = "lambda2 must be positive (cluster graph disconnected)";
    return cert;
  }
  cert.threshold = 2.0 / (lambda2 * (delta - r));
  cert.holds = m_star > cert.threshold;
  if (!cert.holds) cert.reason = "M_* does not exceed 2 / (lambda2 (delta - r))";
  return cert;
}

DecayFit decay_rate_fit(std::span<const TimedValue> series) {
  if (series.size() < 2) throw InputError("decay fit needs at least two samples");
  double st = 0.0, sy = 0.0;
  for (const auto& s : series) {
    if (!(s.value > 0.0) || !std::isfinite(s.value)) throw InputError("decay fit needs strictly positive values");
    st += s.t;
    sy += std::log(s.value);
  }
  const auto count = static_cast<double>(series.size());
  const double mt = st / count, my = sy / count;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (const auto& s : series) {
    const double dt = s.t - mt, dy = std::log(s.value) - my;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (stt == 0.0) throw InputError("decay fit needs at least two distinct times");
  DecayFit fit;
  fit.slope = sty / stt;
  fit.intercept = my - fit.slope * mt;
  fit.r_squared = syy == 0.0 ? 1.0 : (sty * sty) / (stt * syy);
  return fit;
}

}  // namespace denseflock
