#pragma once

// Triangle mesh with explicit adjacency, shared by the flip and tracing code.

#include <array>
#include <vector>

#include "kflat/surface.hpp"
#include "kflat/triangulation.hpp"

namespace kflat::detail {

struct HalfEdge {
  int tri = -1;
  int edge = -1;
};

// Triangles with explicit adjacency; rot is the direction multiplier
// exponent from this side to the other.
struct Mesh {
  int k = 1;
  Tolerance tol;
  std::vector<std::array<Vec2, 3>> pts;
  std::vector<std::array<HalfEdge, 3>> adj;
  std::vector<std::array<int, 3>> rot;

  static Mesh from(const FlatSurface& s) {
    Mesh m;
    m.k = s.k();
    m.tol = s.tolerance();
    for (int p = 0; p < s.polygon_count(); ++p) {
      const Polygon& poly = s.polygon(p);
      if (poly.size() != 3) throw Error("mesh requires triangles");
      m.pts.push_back({poly.vertices[0], poly.vertices[1], poly.vertices[2]});
      std::array<HalfEdge, 3> a{};
      std::array<int, 3> r{};
      for (int e = 0; e < 3; ++e) {
        const Partner& pt = s.partner({p, e});
        a[e] = {pt.other.polygon, pt.other.edge};
        r[e] = pt.rot;
      }
      m.adj.push_back(a);
      m.rot.push_back(r);
    }
    return m;
  }

  Vec2 rho(int j) const { return root_of_unity(j, k); }

  FlatSurface to_surface() const {
    std::vector<Polygon> polys;
    std::vector<Gluing> glue;
    std::vector<std::string> names;
    for (std::size_t t = 0; t < pts.size(); ++t) {
      polys.push_back(Polygon{{pts[t][0], pts[t][1], pts[t][2]}});
      names.push_back("T" + std::to_string(t));
    }
    for (int t = 0; t < static_cast<int>(pts.size()); ++t) {
      for (int e = 0; e < 3; ++e) {
        const HalfEdge o = adj[t][e];
        if (o.tri < t || (o.tri == t && o.edge < e)) continue;
        // Gluing rot r for side a satisfies v(b) = -rho^r v(a), which is the
        // same exponent as the direction multiplier from side a.
        glue.push_back({{t, e}, {o.tri, o.edge}, rot[t][e]});
      }
    }
    return FlatSurface(k, std::move(polys), std::move(glue), std::move(names), tol);
  }

  // Opposite vertex of the neighbour across (t,e), unfolded into t's frame.
  Vec2 unfolded_apex(int t, int e) const {
    const HalfEdge o = adj[t][e];
    const Vec2 q1 = pts[o.tri][o.edge];
    const Vec2 q3 = pts[o.tri][(o.edge + 2) % 3];
    const Vec2 p2 = pts[t][(e + 1) % 3];
    return p2 + cmul(rho(-rot[t][e]), q3 - q1);
  }

  double scale(int t) const {
    double s = 0;
    for (int i = 0; i < 3; ++i) s = std::max(s, (pts[t][(i + 1) % 3] - pts[t][i]).norm());
    return s;
  }

  // Positive when the apex across (t,e) is strictly inside t's circumcircle.
  double delaunay_violation(int t, int e) const {
    const Vec2 d = unfolded_apex(t, e);
    const double sc = scale(t);
    return incircle(pts[t][0], pts[t][1], pts[t][2], d) / (sc * sc * sc * sc);
  }

  bool flip(int t1, int i) {
    const HalfEdge other = adj[t1][i];
    const int t2 = other.tri, j = other.edge;
    if (t2 == t1) return false;
    const int r = rot[t1][i];
    const Vec2 P1 = pts[t1][i], P2 = pts[t1][(i + 1) % 3], P3 = pts[t1][(i + 2) % 3];
    const Vec2 Q3 = unfolded_apex(t1, i);
    const double sc = scale(t1);
    if (cross(P1 - P3, Q3 - P3) <= 1e-12 * sc * sc || cross(P2 - Q3, P3 - Q3) <= 1e-12 * sc * sc)
      return false;

    // old half-edges (tri, edge) -> new half-edges; shift = frame change
    struct Slot {
      HalfEdge old;
      HalfEdge now;
      int shift;
    };
    const std::array<Slot, 4> slots{{{{t1, (i + 2) % 3}, {t1, 0}, 0},
                                     {{t2, (j + 1) % 3}, {t1, 1}, r},
                                     {{t1, (i + 1) % 3}, {t2, 1}, 0},
                                     {{t2, (j + 2) % 3}, {t2, 0}, r}}};
    std::array<HalfEdge, 4> old_partner;
    std::array<int, 4> old_rot;
    for (int s = 0; s < 4; ++s) {
      old_partner[s] = adj[slots[s].old.tri][slots[s].old.edge];
      old_rot[s] = rot[slots[s].old.tri][slots[s].old.edge];
    }
    auto find_slot = [&](HalfEdge h) {
      for (int s = 0; s < 4; ++s)
        if (slots[s].old.tri == h.tri && slots[s].old.edge == h.edge) return s;
      return -1;
    };
    pts[t1] = {P3, P1, Q3};
    pts[t2] = {Q3, P2, P3};
    adj[t1][2] = {t2, 2};
    adj[t2][2] = {t1, 2};
    rot[t1][2] = rot[t2][2] = 0;
    for (int s = 0; s < 4; ++s) {
      const int ps = find_slot(old_partner[s]);
      HalfEdge np = old_partner[s];
      int nr = old_rot[s] + slots[s].shift;
      if (ps >= 0) {
        np = slots[ps].now;
        nr -= slots[ps].shift;
      }
      adj[slots[s].now.tri][slots[s].now.edge] = np;
      rot[slots[s].now.tri][slots[s].now.edge] = mod(nr, k);
      if (ps < 0) {
        adj[np.tri][np.edge] = slots[s].now;
        rot[np.tri][np.edge] = mod(-nr, k);
      }
    }
    return true;
  }
};


}  // namespace kflat::detail
