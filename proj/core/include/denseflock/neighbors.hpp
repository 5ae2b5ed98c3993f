#pragma once

#include "denseflock/domain.hpp"
#include "denseflock/model.hpp"
#include "denseflock/state.hpp"

#include <cstdint>
#include <vector>

namespace denseflock {

using Index = std::uint32_t;

/// Per-particle neighbour index lists, each sorted ascending and duplicate-free.
struct NeighborTable {
  std::vector<std::vector<Index>> sets;
  double source_time = 0.0;  // time of the positions that produced the table

  std::size_t size() const noexcept { return sets.size(); }
  bool contains(std::size_t i, std::size_t k) const;
  bool is_symmetric() const;

  bool operator==(const NeighborTable&) const = default;
};

/// How fixed-radius queries are answered. All three produce identical tables.
enum class NeighborSearch {
  Pairwise,  // O(N^2) scan
  CellGrid,  // uniform grid with cell edge >= radius
  Ghost,     // periodic images within `radius` of the box faces, Euclidean scan
};

/// Closed or open ball membership. Every list contains its own centre.
enum class Ball { Open, Closed };

/// For each particle i, all k with dist(x_k, x_i) < radius (Open) or <= radius (Closed).
NeighborTable ball_members(const Points& positions, double radius, Ball ball, const Domain& domain,
                           NeighborSearch search = NeighborSearch::Pairwise);

/// Density-induced sets: the open delta-ball of i when it holds more than m particles
/// (i counted), otherwise empty.
NeighborTable neighbor_sets_di(const Points& delayed_positions, double delta, std::size_t m,
                               const Domain& domain, NeighborSearch search = NeighborSearch::Pairwise);

/// Short-range sets: the closed delta-ball of i. Always symmetric.
NeighborTable neighbor_sets_cs_delta(const Points& positions, double delta, const Domain& domain,
                                     NeighborSearch search = NeighborSearch::Pairwise);

/// The q nearest particles j != i, ties to the lower index.
NeighborTable neighbor_sets_cs_q(const Points& positions, std::size_t q, const Domain& domain);

/// Every particle, self included.
NeighborTable neighbor_sets_all(std::size_t n);

/// Table for the model in `params`; `positions` are the ones the model reads its topology from.
NeighborTable neighbor_sets(const ModelParams& params, const Points& positions, const Domain& domain,
                            NeighborSearch search = NeighborSearch::Pairwise);

/// Periodic images of the particles lying within `width` of a face of [0, L)^d.
struct GhostLayer {
  Points positions;          // originals first, then images
  std::vector<Index> origin; // origin[j] = index of the particle column j copies
};

GhostLayer make_ghost_layer(const Points& wrapped_positions, double side, double width);

}  // namespace denseflock
