#include "icgame/hull.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "icgame/error.h"

namespace icgame {
namespace {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

struct Pt2 {
  double x = 0, y = 0;
  std::size_t id = 0;
};

double Cross(const Pt2& o, const Pt2& a, const Pt2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Counter-clockwise hull. With keep_collinear, points on an edge stay in
// the output; otherwise only strict corners are kept.
std::vector<Pt2> Hull2(std::vector<Pt2> pts, double tol, bool keep_collinear) {
  std::sort(pts.begin(), pts.end(), [](const Pt2& a, const Pt2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  if (pts.size() < 3) return pts;
  auto pop = [&](const Pt2& o, const Pt2& a, const Pt2& b) {
    const double c = Cross(o, a, b);
    return keep_collinear ? c < -tol : c <= tol;
  };
  std::vector<Pt2> h(2 * pts.size());
  std::size_t k = 0;
  for (const Pt2& p : pts) {
    while (k >= 2 && pop(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && pop(h[k - 2], h[k - 1], pts[i])) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

std::vector<std::size_t> UpperRightChain(const std::vector<Pt2>& ccw) {
  std::size_t top = 0, right = 0;
  for (std::size_t i = 1; i < ccw.size(); ++i) {
    const Pt2& p = ccw[i];
    if (p.y > ccw[top].y || (p.y == ccw[top].y && p.x < ccw[top].x)) top = i;
    if (p.x > ccw[right].x || (p.x == ccw[right].x && p.y < ccw[right].y)) {
      right = i;
    }
  }
  // Counter-clockwise from the right-most vertex reaches the top-most one
  // along the upper-right boundary; report it top to right.
  std::vector<std::size_t> chain;
  for (std::size_t i = right;; i = (i + 1) % ccw.size()) {
    chain.push_back(ccw[i].id);
    if (i == top) break;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Triangulates a convex polygon (counter-clockwise, possibly with
// collinear boundary points) so that every vertex belongs to a triangle.
std::vector<std::array<std::size_t, 3>> TriangulateConvex(
    std::vector<Pt2> poly, double tol) {
  std::vector<std::array<std::size_t, 3>> out;
  auto all_collinear = [&](const std::vector<Pt2>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        for (std::size_t k = j + 1; k < p.size(); ++k) {
          if (std::abs(Cross(p[i], p[j], p[k])) > tol) return false;
        }
      }
    }
    return true;
  };
  while (poly.size() > 3) {
    const std::size_t m = poly.size();
    bool clipped = false;
    for (std::size_t i = 0; i < m && !clipped; ++i) {
      const Pt2& prev = poly[(i + m - 1) % m];
      const Pt2& cur = poly[i];
      const Pt2& next = poly[(i + 1) % m];
      if (Cross(prev, cur, next) <= tol) continue;
      std::vector<Pt2> rest = poly;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      if (all_collinear(rest)) continue;
      out.push_back({prev.id, cur.id, next.id});
      poly = std::move(rest);
      clipped = true;
    }
    if (!clipped) break;
  }
  if (poly.size() == 3 && Cross(poly[0], poly[1], poly[2]) > tol) {
    out.push_back({poly[0].id, poly[1].id, poly[2].id});
  }
  return out;
}

Hull Hull3(const std::vector<Vec3>& pts, const std::vector<std::size_t>& ids,
           double scale) {
  const std::size_t m = pts.size();
  const double len_tol = kHullRelativeTolerance * scale;

  Hull hull;
  hull.dimension = 3;
  std::set<std::vector<std::size_t>> seen_faces;
  bool any_volume = false;

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        Vec3 normal = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        const double nn = normal.norm();
        if (nn <= len_tol * scale) continue;
        normal = {normal.x / nn, normal.y / nn, normal.z / nn};

        bool above = false, below = false;
        std::vector<std::size_t> on_plane;
        for (std::size_t l = 0; l < m; ++l) {
          const double s = normal.dot(pts[l] - pts[i]);
          if (s > len_tol) {
            above = true;
          } else if (s < -len_tol) {
            below = true;
          } else {
            on_plane.push_back(l);
          }
        }
        if (above || below) any_volume = true;
        if (above && below) continue;
        if (!above && !below) continue;  // everything coplanar
        if (above) normal = {-normal.x, -normal.y, -normal.z};
        if (!seen_faces.insert(on_plane).second) continue;

        // In-plane basis (u, v) with u x v = outward normal, so a
        // counter-clockwise polygon in (u, v) faces outward.
        const Vec3 u0 = pts[j] - pts[i];
        const double ul = u0.norm();
        const Vec3 u{u0.x / ul, u0.y / ul, u0.z / ul};
        const Vec3 v = normal.cross(u);
        std::vector<Pt2> face;
        for (std::size_t l : on_plane) {
          const Vec3 d = pts[l] - pts[i];
          face.push_back({d.dot(u), d.dot(v), l});
        }
        const double area_tol = kHullRelativeTolerance * scale * scale;
        std::vector<Pt2> ring = Hull2(face, area_tol, /*keep_collinear=*/true);
        for (auto tri : TriangulateConvex(ring, area_tol)) {
          hull.facets.push_back({ids[tri[0]], ids[tri[1]], ids[tri[2]]});
        }
      }
    }
  }
  if (!any_volume || hull.facets.empty()) {
    throw Error(ErrorKind::kDegenerateInput,
                "three-user hull needs points spanning a volume");
  }
  return hull;
}

}  // namespace

bool Hull::is_vertex(std::size_t id) const {
  if (std::find(chain.begin(), chain.end(), id) != chain.end()) return true;
  for (const auto& f : facets) {
    if (std::find(f.begin(), f.end(), id) != f.end()) return true;
  }
  return false;
}

Hull ConvexHull(std::span<const RatePoint> points) {
  if (points.empty()) {
    throw Error(ErrorKind::kDegenerateInput, "hull needs at least one point");
  }
  const std::size_t dim = points.front().size();
  for (const RatePoint& p : points) {
    if (p.size() != dim) {
      throw Error(ErrorKind::kInvalidInput, "hull points differ in dimension");
    }
  }
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "hull construction supports two or three users");
  }

  // Id 0 is the origin seed; duplicates keep their lowest id.
  std::vector<Vec3> pts{Vec3{}};
  std::vector<std::size_t> ids{0};
  double scale = 0.0;
  for (const RatePoint& p : points) {
    for (double c : p.r) scale = std::max(scale, std::abs(c));
  }
  const double dup_tol = kHullRelativeTolerance * scale;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Vec3 q{points[k][0], points[k][1], dim == 3 ? points[k][2] : 0.0};
    const bool dup = std::any_of(pts.begin(), pts.end(), [&](const Vec3& p) {
      return (p - q).norm() <= dup_tol;
    });
    if (!dup) {
      pts.push_back(q);
      ids.push_back(k + 1);
    }
  }
  if (pts.size() < 2 || scale == 0.0) {
    throw Error(ErrorKind::kDegenerateInput, "all hull points coincide");
  }

  if (dim == 3) return Hull3(pts, ids, scale);

  std::vector<Pt2> flat;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    flat.push_back({pts[k].x, pts[k].y, ids[k]});
  }
  Hull hull;
  hull.dimension = 2;
  hull.chain = UpperRightChain(
      Hull2(flat, kHullRelativeTolerance * scale * scale, false));
  return hull;
}

Hull CrystallizedHull(const CornerSet& corners) {
  std::vector<RatePoint> pts;
  pts.reserve(corners.corners.size());
  for (const Corner& c : corners.corners) pts.push_back(c.rates);
  return ConvexHull(pts);
}

}  // namespace icgame
