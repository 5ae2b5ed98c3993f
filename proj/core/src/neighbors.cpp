#include "denseflock/neighbors.hpp"

#include "denseflock/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace denseflock {

bool NeighborTable::contains(std::size_t i, std::size_t k) const {
  const auto& s = sets.at(i);
  return std::binary_search(s.begin(), s.end(), static_cast<Index>(k));
}

bool NeighborTable::is_symmetric() const {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Index k : sets[i]) {
      if (!contains(k, i)) return false;
    }
  }
  return true;
}

namespace {

bool inside(double dist, double radius, Ball ball) { return ball == Ball::Open ? dist < radius : dist <= radius; }

NeighborTable pairwise_members(const Points& x, double radius, Ball ball, const Domain& domain) {
  const auto n = static_cast<std::size_t>(x.cols());
  NeighborTable table;
  table.sets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    table.sets[i].push_back(static_cast<Index>(i));
    for (std::size_t k = i + 1; k < n; ++k) {
      if (inside(domain.distance(x.col(i), x.col(k)), radius, ball)) {
        table.sets[i].push_back(static_cast<Index>(k));
        table.sets[k].push_back(static_cast<Index>(i));
      }
    }
  }
  for (auto& s : table.sets) std::sort(s.begin(), s.end());
  return table;
}

// Uniform cell list. Returns nullopt when the grid would be degenerate (fewer than three
// cells along a periodic axis) or too large to allocate; callers fall back to the scan.
std::optional<NeighborTable> grid_members(const Points& raw, double radius, Ball ball, const Domain& domain) {
  const auto d = static_cast<std::size_t>(raw.rows());
  const auto n = static_cast<std::size_t>(raw.cols());
  Points x = raw;
  domain.wrap(x);

  std::vector<std::size_t> cells(d);
  std::vector<double> origin(d, 0.0);
  std::vector<double> edge(d, radius);
  constexpr std::size_t kMaxCells = std::size_t{1} << 22;
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (domain.is_periodic()) {
      const auto c = static_cast<std::size_t>(std::floor(domain.side() / radius));
      if (c < 3) return std::nullopt;
      cells[k] = c;
      edge[k] = domain.side() / static_cast<double>(c);
    } else {
      const double lo = x.row(static_cast<Eigen::Index>(k)).minCoeff();
      const double hi = x.row(static_cast<Eigen::Index>(k)).maxCoeff();
      origin[k] = lo;
      cells[k] = static_cast<std::size_t>(std::floor((hi - lo) / radius)) + 1;
    }
    if (cells[k] > kMaxCells / total) return std::nullopt;
    total *= cells[k];
  }

  auto cell_coord = [&](std::size_t i, std::size_t k) {
    auto c = static_cast<std::size_t>(std::floor((x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) - origin[k]) / edge[k]));
    return std::min(c, cells[k] - 1);
  };

  // counting sort of particles by linear cell index
  std::vector<std::size_t> cell_of(n);
  std::vector<std::size_t> start(total + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lin = 0;
    for (std::size_t k = d; k-- > 0;) lin = lin * cells[k] + cell_coord(i, k);
    cell_of[i] = lin;
    ++start[lin + 1];
  }
  for (std::size_t c = 0; c < total; ++c) start[c + 1] += start[c];
  std::vector<Index> sorted(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) sorted[fill[cell_of[i]]++] = static_cast<Index>(i);
  }

  NeighborTable table;
  table.sets.resize(n);
  std::size_t offsets = 1;
  for (std::size_t k = 0; k < d; ++k) offsets *= 3;
  std::vector<std::size_t> home(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) home[k] = cell_coord(i, k);
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t code = o;
      std::size_t lin = 0;
      std::size_t stride = 1;
      bool valid = true;
      for (std::size_t k = 0; k < d; ++k) {
        const auto shift = static_cast<long>(code % 3) - 1;
        code /= 3;
        long c = static_cast<long>(home[k]) + shift;
        const auto count = static_cast<long>(cells[k]);
        if (domain.is_periodic()) {
          c = (c + count) % count;
        } else if (c < 0 || c >= count) {
          valid = false;
          break;
        }
        lin += static_cast<std::size_t>(c) * stride;
        stride *= cells[k];
      }
      if (!valid) continue;
      for (std::size_t s = start[lin]; s < start[lin + 1]; ++s) {
        const Index k = sorted[s];
        if (inside(domain.distance(x.col(static_cast<Eigen::Index>(i)), x.col(k)), radius, ball)) {
          table.sets[i].push_back(k);
        }
      }
    }
    std::sort(table.sets[i].begin(), table.sets[i].end());
  }
  return table;
}

NeighborTable ghost_members(const Points& raw, double radius, Ball ball, const Domain& domain) {
  Points x = raw;
  domain.wrap(x);
  const GhostLayer layer = make_ghost_layer(x, domain.side(), radius);
  const auto n = static_cast<std::size_t>(x.cols());
  const auto total = static_cast<std::size_t>(layer.positions.cols());
  NeighborTable table;
  table.sets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      const double dist = (layer.positions.col(static_cast<Eigen::Index>(j)) - x.col(static_cast<Eigen::Index>(i))).norm();
      if (inside(dist, radius, ball)) table.sets[i].push_back(layer.origin[j]);
    }
    auto& s = table.sets[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return table;
}

}  // namespace

GhostLayer make_ghost_layer(const Points& x, double side, double width) {
  const auto d = static_cast<std::size_t>(x.rows());
  const auto n = static_cast<std::size_t>(x.cols());
  std::size_t shifts = 1;
  for (std::size_t k = 0; k < d; ++k) shifts *= 3;

  std::vector<Eigen::VectorXd> images;
  std::vector<Index> origin;
  for (std::size_t i = 0; i < n; ++i) {
    images.emplace_back(x.col(static_cast<Eigen::Index>(i)));
    origin.push_back(static_cast<Index>(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < shifts; ++s) {
      Eigen::VectorXd p = x.col(static_cast<Eigen::Index>(i));
      std::size_t code = s;
      bool identity = true;
      bool keep = true;
      for (std::size_t k = 0; k < d; ++k) {
        const auto shift = static_cast<int>(code % 3) - 1;
        code /= 3;
        if (shift != 0) identity = false;
        p[static_cast<Eigen::Index>(k)] += shift * side;
        const double c = p[static_cast<Eigen::Index>(k)];
        if (c < -width || c >= side + width) keep = false;
      }
      if (identity || !keep) continue;
      images.push_back(std::move(p));
      origin.push_back(static_cast<Index>(i));
    }
  }
  GhostLayer layer;
  layer.positions.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(images.size()));
  for (std::size_t j = 0; j < images.size(); ++j) layer.positions.col(static_cast<Eigen::Index>(j)) = images[j];
  layer.origin = std::move(origin);
  return layer;
}

NeighborTable ball_members(const Points& positions, double radius, Ball ball, const Domain& domain,
                           NeighborSearch search) {
  require_finite(positions, "positions");
  if (!(radius > 0.0)) throw InputError("ball radius must be positive");
  switch (search) {
    case NeighborSearch::Pairwise: break;
    case NeighborSearch::CellGrid:
      if (auto table = grid_members(positions, radius, ball, domain)) return std::move(*table);
      break;
    case NeighborSearch::Ghost:
      if (domain.is_periodic()) {
        domain.require_range(radius);
        return ghost_members(positions, radius, ball, domain);
      }
      break;
  }
  return pairwise_members(positions, radius, ball, domain);
}

NeighborTable neighbor_sets_di(const Points& delayed_positions, double delta, std::size_t m, const Domain& domain,
                               NeighborSearch search) {
  if (m < 1) throw InputError("density threshold m must be at least 1");
  NeighborTable table = ball_members(delayed_positions, delta, Ball::Open, domain, search);
  for (auto& s : table.sets) {
    if (s.size() <= m) s.clear();
  }
  return table;
}

NeighborTable neighbor_sets_cs_delta(const Points& positions, double delta, const Domain& domain,
                                     NeighborSearch search) {
  return ball_members(positions, delta, Ball::Closed, domain, search);
}

NeighborTable neighbor_sets_cs_q(const Points& positions, std::size_t q, const Domain& domain) {
  require_finite(positions, "positions");
  const auto n = static_cast<std::size_t>(positions.cols());
  if (q < 1 || q + 1 > n) throw ConfigError("q must lie in [1, N-1]", "q");
  NeighborTable table;
  table.sets.resize(n);
  std::vector<std::pair<double, Index>> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      order.emplace_back(domain.distance(positions.col(static_cast<Eigen::Index>(i)), positions.col(static_cast<Eigen::Index>(j))),
                         static_cast<Index>(j));
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(q), order.end());
    auto& s = table.sets[i];
    for (std::size_t r = 0; r < q; ++r) s.push_back(order[r].second);
    std::sort(s.begin(), s.end());
  }
  return table;
}

NeighborTable neighbor_sets_all(std::size_t n) {
  NeighborTable table;
  table.sets.assign(n, {});
  for (auto& s : table.sets) {
    s.resize(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = static_cast<Index>(k);
  }
  return table;
}

NeighborTable neighbor_sets(const ModelParams& params, const Points& positions, const Domain& domain,
                            NeighborSearch search) {
  switch (params.model) {
    case ModelKind::DI: return neighbor_sets_di(positions, params.delta, params.m, domain, search);
    case ModelKind::CSDelta: return neighbor_sets_cs_delta(positions, params.delta, domain, search);
    case ModelKind::CSQ: return neighbor_sets_cs_q(positions, params.q, domain);
    case ModelKind::CS: require_finite(positions, "positions"); return neighbor_sets_all(static_cast<std::size_t>(positions.cols()));
  }
  return {};
}

}  // namespace denseflock
