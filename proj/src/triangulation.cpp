#include "kflat/triangulation.hpp"

#include "tri_mesh.hpp"

#include <array>
#include <deque>
#include <numeric>

namespace kflat {

double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Vec2 ad = a - d, bd = b - d, cd = c - d;
  return ad.norm2() * cross(bd, cd) - bd.norm2() * cross(ad, cd) + cd.norm2() * cross(ad, bd);
}

using detail::HalfEdge;
using detail::Mesh;


FlatSurface triangulate(const FlatSurface& s) {
  std::vector<Polygon> tris;
  std::vector<std::string> names;
  std::vector<std::vector<EdgeRef>> edge_map(s.polygon_count());
  std::vector<Gluing> glue;
  const double eps = s.tolerance().abs_eps;
  for (int p = 0; p < s.polygon_count(); ++p) {
    const Polygon& poly = s.polygon(p);
    const int n = poly.size();
    edge_map[p].assign(n, EdgeRef{});
    // label >= 0: original edge index; label < 0: diagonal id -(d+1)
    std::vector<int> ring(n), label(n);
    std::iota(ring.begin(), ring.end(), 0);
    std::iota(label.begin(), label.end(), 0);  // segment ring[i] -> ring[i+1]
    std::vector<std::array<EdgeRef, 2>> diag;
    int made = 0;
    auto place = [&](int lab, EdgeRef at) {
      if (lab >= 0) {
        edge_map[p][lab] = at;
      } else {
        auto& d = diag[-lab - 1];
        (d[0].valid() ? d[1] : d[0]) = at;
      }
    };
    auto emit = [&](Vec2 a, Vec2 b, Vec2 c, int la, int lb, int lc) {
      const int t = static_cast<int>(tris.size());
      tris.push_back(Polygon{{a, b, c}});
      names.push_back(n == 3 ? s.names()[p] : s.names()[p] + "_" + std::to_string(made++));
      place(la, {t, 0});
      place(lb, {t, 1});
      place(lc, {t, 2});
    };
    while (static_cast<int>(ring.size()) > 3) {
      const int m = static_cast<int>(ring.size());
      int best = -1;
      for (int i = 0; i < m && best < 0; ++i) {
        const Vec2 a = poly.vertex(ring[mod(i - 1, m)]), b = poly.vertex(ring[i]), c = poly.vertex(ring[(i + 1) % m]);
        if (cross(b - a, c - b) <= eps * (b - a).norm()) continue;
        bool empty = true;
        for (int j = 0; j < m && empty; ++j) {
          if (j == i || j == mod(i - 1, m) || j == (i + 1) % m) continue;
          const Vec2 q = poly.vertex(ring[j]);
          if (cross(b - a, q - a) >= -eps && cross(c - b, q - b) >= -eps && cross(a - c, q - c) >= -eps)
            empty = false;
        }
        if (empty) best = i;
      }
      if (best < 0) throw Error("triangulation failed: polygon " + s.names()[p] + " has no ear");
      const int im = mod(best - 1, m), ip = (best + 1) % m;
      diag.push_back({EdgeRef{}, EdgeRef{}});
      const int d = -static_cast<int>(diag.size());
      emit(poly.vertex(ring[im]), poly.vertex(ring[best]), poly.vertex(ring[ip]), label[im], label[best], d);
      label[im] = d;
      ring.erase(ring.begin() + best);
      label.erase(label.begin() + best);
    }
    emit(poly.vertex(ring[0]), poly.vertex(ring[1]), poly.vertex(ring[2]), label[0], label[1], label[2]);
    for (const auto& d : diag) glue.push_back({d[0], d[1], 0});
  }
  for (const Gluing& g : s.gluings())
    glue.push_back({edge_map[g.a.polygon][g.a.edge], edge_map[g.b.polygon][g.b.edge], g.rot});
  return FlatSurface(s.k(), std::move(tris), std::move(glue), std::move(names), s.tolerance());
}

namespace {

constexpr double kDelaunayEps = 1e-10;

bool all_triangles(const FlatSurface& s) {
  for (const auto& p : s.polygons())
    if (p.size() != 3) return false;
  return true;
}

}  // namespace

FlatSurface delaunay_triangulation(const FlatSurface& s) {
  Mesh m = Mesh::from(all_triangles(s) ? s : triangulate(s));
  const int nt = static_cast<int>(m.pts.size());
  std::deque<HalfEdge> queue;
  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) queue.push_back({t, e});
  long guard = 0;
  const long limit = 200000L + 1000L * nt * nt;
  while (!queue.empty()) {
    if (++guard > limit) throw Error("Delaunay flipping did not terminate");
    const HalfEdge h = queue.front();
    queue.pop_front();
    if (m.adj[h.tri][h.edge].tri == h.tri) continue;
    if (m.delaunay_violation(h.tri, h.edge) <= kDelaunayEps) continue;
    const int t2 = m.adj[h.tri][h.edge].tri;
    if (!m.flip(h.tri, h.edge)) continue;
    for (int t : {h.tri, t2})
      for (int e = 0; e < 2; ++e) {
        queue.push_back({t, e});
        queue.push_back(m.adj[t][e]);
      }
  }
  return m.to_surface();
}

bool is_delaunay(const FlatSurface& s) {
  if (!all_triangles(s)) return false;
  const Mesh m = Mesh::from(s);
  for (int t = 0; t < static_cast<int>(m.pts.size()); ++t)
    for (int e = 0; e < 3; ++e)
      if (m.adj[t][e].tri != t && m.delaunay_violation(t, e) > 1e-8) return false;
  return true;
}

FlatSurface delaunay_decomposition(const FlatSurface& s) {
  const FlatSurface dt = delaunay_triangulation(s);
  const Mesh m = Mesh::from(dt);
  const int nt = static_cast<int>(m.pts.size());
  std::vector<std::array<char, 3>> merged(nt, {0, 0, 0});
  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e)
      if (m.adj[t][e].tri != t && std::abs(m.delaunay_violation(t, e)) <= 1e-8) merged[t][e] = 1;

  std::vector<int> cell(nt, -1);
  std::vector<Vec2> unit(nt), offset(nt);
  std::vector<Polygon> polys;
  std::vector<std::vector<std::pair<HalfEdge, int>>> boundary;  // per cell: (half-edge, position)
  std::vector<std::array<EdgeRef, 3>> where(nt);
  for (int seed = 0; seed < nt; ++seed) {
    if (cell[seed] >= 0) continue;
    const int c = static_cast<int>(polys.size());
    std::vector<int> members{seed};
    cell[seed] = c;
    unit[seed] = {1, 0};
    offset[seed] = {0, 0};
    for (std::size_t q = 0; q < members.size(); ++q) {
      const int t = members[q];
      for (int e = 0; e < 3; ++e) {
        if (!merged[t][e]) continue;
        const HalfEdge o = m.adj[t][e];
        if (cell[o.tri] >= 0) continue;
        cell[o.tri] = c;
        unit[o.tri] = cmul(unit[t], m.rho(-m.rot[t][e]));
        const Vec2 anchor = cmul(unit[t], m.pts[t][(e + 1) % 3]) + offset[t];
        offset[o.tri] = anchor - cmul(unit[o.tri], m.pts[o.tri][o.edge]);
        members.push_back(o.tri);
      }
    }
    // walk the cell boundary: next boundary half-edge after (t,e) is found by
    // turning around its end vertex through merged edges
    HalfEdge start{-1, -1};
    for (int t : members)
      for (int e = 0; e < 3 && start.tri < 0; ++e)
        if (!merged[t][e]) start = {t, e};
    if (start.tri < 0) throw Error("Delaunay decomposition: cell without boundary");
    Polygon poly;
    HalfEdge h = start;
    int step = 0;
    do {
      poly.vertices.push_back(cmul(unit[h.tri], m.pts[h.tri][h.edge]) + offset[h.tri]);
      where[h.tri][h.edge] = {c, step++};
      HalfEdge n{h.tri, (h.edge + 1) % 3};
      int guard = 0;
      while (merged[n.tri][n.edge]) {
        const HalfEdge o = m.adj[n.tri][n.edge];
        n = {o.tri, (o.edge + 1) % 3};
        if (++guard > 3 * nt) throw Error("Delaunay decomposition: vertex walk failed");
      }
      h = n;
      if (step > 3 * nt) throw Error("Delaunay decomposition: boundary walk failed");
    } while (h.tri != start.tri || h.edge != start.edge);
    // normalise the cell frame so vertex 0 sits at the origin
    const Vec2 o = poly.vertices[0];
    for (auto& v : poly.vertices) v -= o;
    polys.push_back(std::move(poly));
  }
  std::vector<Gluing> glue;
  for (int t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) {
      if (merged[t][e]) continue;
      const HalfEdge o = m.adj[t][e];
      const EdgeRef a = where[t][e], b = where[o.tri][o.edge];
      if (b < a) continue;
      const Vec2 va = polys[a.polygon].edge(a.edge), vb = polys[b.polygon].edge(b.edge);
      const int r = infer_rotation(va, vb, s.k(), Tolerance{1e-7, 1e-9, 1e-9});
      if (r < 0) throw Error("Delaunay decomposition produced inconsistent gluing");
      glue.push_back({a, b, r});
    }
  return FlatSurface(s.k(), std::move(polys), std::move(glue), {}, s.tolerance());
}

namespace {

bool try_extend(const FlatSurface& X, const FlatSurface& Y, int seed_cell, int offset, int rot) {
  const int n = X.polygon_count();
  struct Map {
    int cell = -1, offset = 0, rot = 0;
  };
  std::vector<Map> fwd(n);
  std::vector<char> used(n, 0);
  const Tolerance tol{1e-7, 1e-9, 1e-9};
  auto matches = [&](int p, int c, int o, int j) {
    const Polygon& px = X.polygon(p);
    const Polygon& py = Y.polygon(c);
    if (px.size() != py.size()) return false;
    for (int e = 0; e < px.size(); ++e)
      if (!tol.near(py.edge(e + o), cmul(root_of_unity(j, X.k()), px.edge(e)))) return false;
    return true;
  };
  if (!matches(0, seed_cell, offset, rot)) return false;
  fwd[0] = {seed_cell, offset, rot};
  used[seed_cell] = 1;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    const Map mp = fwd[p];
    const int np = X.polygon(p).size();
    for (int e = 0; e < np; ++e) {
      const Partner& px = X.partner({p, e});
      const Partner& py = Y.partner({mp.cell, mod(e + mp.offset, np)});
      const int p2 = px.other.polygon, c2 = py.other.polygon;
      const int n2 = X.polygon(p2).size();
      if (Y.polygon(c2).size() != n2) return false;
      const Map want{c2, mod(py.other.edge - px.other.edge, n2), mod(mp.rot + py.rot - px.rot, X.k())};
      if (fwd[p2].cell >= 0) {
        if (fwd[p2].cell != want.cell || fwd[p2].offset != want.offset || fwd[p2].rot != want.rot)
          return false;
        continue;
      }
      if (used[c2] || !matches(p2, want.cell, want.offset, want.rot)) return false;
      fwd[p2] = want;
      used[c2] = 1;
      stack.push_back(p2);
    }
  }
  for (const Map& mp : fwd)
    if (mp.cell < 0) return false;
  return true;
}

}  // namespace

bool are_translation_equivalent(const FlatSurface& a, const FlatSurface& b) {
  if (a.k() != b.k()) return false;
  const double aa = area(a), ab = area(b);
  if (std::abs(aa - ab) > 1e-7 * std::max(aa, ab)) return false;
  const FlatSurface X = delaunay_decomposition(a);
  const FlatSurface Y = delaunay_decomposition(b);
  if (X.polygon_count() != Y.polygon_count()) return false;
  const int n0 = X.polygon(0).size();
  for (int c = 0; c < Y.polygon_count(); ++c) {
    if (Y.polygon(c).size() != n0) continue;
    for (int o = 0; o < n0; ++o)
      for (int j = 0; j < a.k(); ++j)
        if (try_extend(X, Y, c, o, j)) return true;
  }
  return false;
}

}  // namespace kflat
