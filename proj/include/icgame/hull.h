#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "icgame/channel.h"
#include "icgame/region.h"

namespace icgame {

inline constexpr double kHullRelativeTolerance = 1e-12;

// Hull of {origin} ∪ points. Vertex ids: 0 is the origin, k >= 1 is
// points[k - 1]. Passing corners in index order makes ids equal corner
// indices.
struct Hull {
  std::size_t dimension = 0;
  // Two users: upper-right frontier from the top-most vertex to the
  // right-most one, clockwise; collinear interior points are dropped.
  std::vector<std::size_t> chain;
  // Three users: outward-oriented triangles. Points lying on a face
  // boundary are kept as vertices.
  std::vector<std::array<std::size_t, 3>> facets;

  bool is_vertex(std::size_t id) const;
};

// Throws kUnsupportedDimension unless every point has 2 or 3 coordinates,
// kDegenerateInput when fewer than two distinct points remain (or, for
// three users, when the points span no volume).
Hull ConvexHull(std::span<const RatePoint> points);

Hull CrystallizedHull(const CornerSet& corners);

}  // namespace icgame
