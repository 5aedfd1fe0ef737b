#include "kflat/deform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <random>

#include "trace.hpp"

namespace kflat {

namespace {

using detail::HalfEdge;
using detail::Mesh;

Vec2 perp(Vec2 u) { return {-u.y, u.x}; }

struct Tracked {
  int tri;
  Vec2 p, u;
};

// Mesh whose vertices may include marked points of angle 2pi, created where
// the cylinder boundary crosses edges.
struct MarkedMesh {
  Mesh m;
  std::vector<std::array<bool, 3>> marked;
  std::vector<std::array<bool, 3>> cut;  // edge lies on the cylinder boundary
};

// A point on the boundary of a triangle: a corner, or a point on edge e at
// a + lambda (b - a).
struct BoundaryPoint {
  int corner = -1;
  int edge = -1;
  double lambda = 0;
};

struct Chord {
  int tri;
  BoundaryPoint a, b;
};

double min_barycentric(const std::array<Vec2, 3>& q, Vec2 p) {
  const double area = cross(q[1] - q[0], q[2] - q[0]);
  double lo = 1;
  for (int i = 0; i < 3; ++i) lo = std::min(lo, cross(q[(i + 2) % 3] - q[(i + 1) % 3], p - q[(i + 1) % 3]) / area);
  return lo;
}

// Pieces of the segment of length 2*half centred at mid, one per triangle crossed.
void segment_chords(const Mesh& m, const Tracked& mid, double half, std::vector<Chord>& out) {
  std::array<BoundaryPoint, 2> first_end;
  for (int side = 0; side < 2; ++side) {
    int t = mid.tri;
    Vec2 p = mid.p, d = side ? mid.u : -mid.u;
    double left = half;
    BoundaryPoint start;
    bool first = true;
    for (int step = 0;; ++step) {
      if (step > 100000) throw Error("cylinder boundary trace failed");
      const detail::Exit e = detail::exit_of(m, t, p, d);
      if (!e.ok) throw Error("cylinder boundary trace failed");
      BoundaryPoint end;
      bool last = false;
      if (e.s >= left - 1e-9 * std::max(1.0, half)) {
        const Vec2 q = p + d * left;
        int best = 0;
        for (int i = 1; i < 3; ++i)
          if ((m.pts[t][i] - q).norm() < (m.pts[t][best] - q).norm()) best = i;
        if ((m.pts[t][best] - q).norm() > 1e-7 * std::max(1.0, half)) throw Error("cylinder boundary trace failed");
        end.corner = best;
        last = true;
      } else {
        if (e.vertex) throw Error("cylinder boundary trace failed");
        end.edge = e.edge;
        end.lambda = e.lambda;
      }
      if (first)
        first_end[side] = end;
      else
        out.push_back({t, start, end});
      first = false;
      if (last) break;
      left -= e.s;
      const HalfEdge o = m.adj[t][e.edge];
      detail::cross_edge(m, t, p, e.edge, e.lambda, {&d});
      start = {-1, o.edge, 1 - e.lambda};
    }
  }
  out.push_back({mid.tri, first_end[0], first_end[1]});
}

// Cuts every triangle along the chords and triangulates the pieces. Points
// where chords meet edges become marked vertices.
MarkedMesh cut_along(const Mesh& m, const std::vector<Chord>& chords, Tracked& core) {
  const int T = static_cast<int>(m.pts.size());
  auto canon = [&](int t, int e) {
    const HalfEdge o = m.adj[t][e];
    return std::make_pair(t < o.tri || (t == o.tri && e <= o.edge), o);
  };
  // parameters along each half-edge, stored on its canonical side
  std::map<std::pair<int, int>, std::vector<double>> on_edge;
  auto key_lambda = [&](int t, int e, double lambda) {
    const auto [is_canon, o] = canon(t, e);
    return is_canon ? std::make_tuple(t, e, lambda) : std::make_tuple(o.tri, o.edge, 1 - lambda);
  };
  const double ltol = 1e-9;
  for (const Chord& c : chords)
    for (const BoundaryPoint* b : {&c.a, &c.b}) {
      if (b->corner >= 0) continue;
      const auto [t, e, l] = key_lambda(c.tri, b->edge, b->lambda);
      auto& v = on_edge[{t, e}];
      if (std::none_of(v.begin(), v.end(), [&](double x) { return std::abs(x - l) < ltol; })) v.push_back(l);
    }
  for (auto& [k, v] : on_edge) std::sort(v.begin(), v.end());

  auto params = [&](int t, int e) {
    const auto [is_canon, o] = canon(t, e);
    std::vector<double> v;
    const auto it = on_edge.find(is_canon ? std::make_pair(t, e) : std::make_pair(o.tri, o.edge));
    if (it != on_edge.end()) v = it->second;
    if (!is_canon) {
      for (double& x : v) x = 1 - x;
      std::reverse(v.begin(), v.end());
    }
    return v;
  };

  // boundary list of each triangle: corner 0, points on edge 0, corner 1, ...
  struct Outline {
    std::vector<Vec2> pts;
    std::vector<bool> marked;
    std::array<int, 3> corner;
    std::array<std::vector<double>, 3> lambdas;
  };
  std::vector<Outline> outline(T);
  for (int t = 0; t < T; ++t) {
    Outline& ol = outline[t];
    for (int e = 0; e < 3; ++e) {
      ol.corner[e] = static_cast<int>(ol.pts.size());
      ol.pts.push_back(m.pts[t][e]);
      ol.marked.push_back(false);
      ol.lambdas[e] = params(t, e);
      for (double l : ol.lambdas[e]) {
        ol.pts.push_back(m.pts[t][e] + (m.pts[t][(e + 1) % 3] - m.pts[t][e]) * l);
        ol.marked.push_back(true);
      }
    }
  }
  auto index_of = [&](int t, const BoundaryPoint& b) {
    const Outline& ol = outline[t];
    if (b.corner >= 0) return ol.corner[b.corner];
    const auto& ls = ol.lambdas[b.edge];
    for (std::size_t i = 0; i < ls.size(); ++i)
      if (std::abs(ls[i] - b.lambda) < 2 * ltol) return ol.corner[b.edge] + 1 + static_cast<int>(i);
    throw Error("cylinder boundary trace failed");
  };

  struct NewTri {
    int orig;
    std::array<int, 3> idx;
  };
  std::vector<NewTri> tris;
  std::set<std::tuple<int, int, int>> cut_keys;  // (orig, a, b) with a < b
  std::vector<std::vector<std::vector<int>>> pieces(T);
  for (int t = 0; t < T; ++t) {
    std::vector<int> all(outline[t].pts.size());
    std::iota(all.begin(), all.end(), 0);
    pieces[t].push_back(all);
  }
  for (const Chord& c : chords) {
    int i = index_of(c.tri, c.a), j = index_of(c.tri, c.b);
    if (i == j) throw Error("cylinder boundary trace failed");
    if (i > j) std::swap(i, j);
    cut_keys.insert({c.tri, i, j});
    const int n = static_cast<int>(outline[c.tri].pts.size());
    if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // along an edge
    bool done = false;
    for (auto& piece : pieces[c.tri]) {
      const auto pi = std::find(piece.begin(), piece.end(), i), pj = std::find(piece.begin(), piece.end(), j);
      if (pi == piece.end() || pj == piece.end()) continue;
      const auto a = std::min(pi, pj) - piece.begin(), b = std::max(pi, pj) - piece.begin();
      if (b == a + 1 || (a == 0 && b + 1 == static_cast<long>(piece.size()))) {
        done = true;  // already an edge
        break;
      }
      std::vector<int> one(piece.begin() + a, piece.begin() + b + 1), two(piece.begin() + b, piece.end());
      two.insert(two.end(), piece.begin(), piece.begin() + a + 1);
      piece = std::move(one);
      pieces[c.tri].push_back(std::move(two));
      done = true;
      break;
    }
    if (!done) throw Error("cylinder is not embedded");
  }
  // clip ears at strictly convex corners; pieces are convex
  for (int t = 0; t < T; ++t) {
    const auto& P = outline[t].pts;
    const double sc = m.scale(t), eps = 1e-12 * sc * sc;
    for (auto piece : pieces[t]) {
      while (piece.size() > 3) {
        const int n = static_cast<int>(piece.size());
        int ear = -1;
        double best = eps;
        for (int k = 0; k < n; ++k) {
          const Vec2 a = P[piece[(k + n - 1) % n]], b = P[piece[k]], c = P[piece[(k + 1) % n]];
          const double turn = cross(b - a, c - b) / ((b - a).norm() * (c - b).norm());
          if (cross(b - a, c - b) > eps && turn > best) {
            best = turn;
            ear = k;
          }
        }
        if (ear < 0) throw Error("cylinder boundary trace failed");
        tris.push_back({t, {piece[(ear + n - 1) % n], piece[ear], piece[(ear + 1) % n]}});
        piece.erase(piece.begin() + ear);
      }
      tris.push_back({t, {piece[0], piece[1], piece[2]}});
    }
  }

  MarkedMesh out;
  Mesh& nm = out.m;
  nm.k = m.k;
  nm.tol = m.tol;
  const int N = static_cast<int>(tris.size());
  nm.pts.resize(N);
  nm.adj.assign(N, {});
  nm.rot.assign(N, {0, 0, 0});
  out.marked.resize(N);
  out.cut.resize(N);
  std::map<std::tuple<int, int, int>, HalfEdge> directed;
  for (int n = 0; n < N; ++n)
    for (int e = 0; e < 3; ++e) {
      const auto& tr = tris[n];
      nm.pts[n][e] = outline[tr.orig].pts[tr.idx[e]];
      out.marked[n][e] = outline[tr.orig].marked[tr.idx[e]];
      directed[{tr.orig, tr.idx[e], tr.idx[(e + 1) % 3]}] = {n, e};
    }
  for (int n = 0; n < N; ++n)
    for (int e = 0; e < 3; ++e) {
      const auto& tr = tris[n];
      const int t = tr.orig, a = tr.idx[e], b = tr.idx[(e + 1) % 3];
      const int size = static_cast<int>(outline[t].pts.size());
      out.cut[n][e] = cut_keys.count({t, std::min(a, b), std::max(a, b)}) > 0;
      if (b != (a + 1) % size) {
        nm.adj[n][e] = directed.at({t, b, a});
        continue;
      }
      // a piece of original edge oe
      int oe = 2;
      while (outline[t].corner[oe] > a) --oe;
      const int j = a - outline[t].corner[oe];
      const int count = static_cast<int>(outline[t].lambdas[oe].size()) + 1;
      const HalfEdge o = m.adj[t][oe];
      const int pa = outline[o.tri].corner[o.edge] + (count - 1 - j);
      const int psize = static_cast<int>(outline[o.tri].pts.size());
      nm.adj[n][e] = directed.at({o.tri, pa, (pa + 1) % psize});
      nm.rot[n][e] = m.rot[t][oe];
    }
  // a cut along an original edge is seen from one side only
  for (int n = 0; n < N; ++n)
    for (int e = 0; e < 3; ++e)
      if (out.cut[n][e]) out.cut[nm.adj[n][e].tri][nm.adj[n][e].edge] = true;

  int best = -1;
  double inside = -1;
  for (int n = 0; n < N; ++n) {
    if (tris[n].orig != core.tri) continue;
    const double b = min_barycentric(nm.pts[n], core.p);
    if (b > inside) {
      inside = b;
      best = n;
    }
  }
  if (best < 0) throw Error("cylinder boundary trace failed");
  core.tri = best;
  return out;
}

// Corners around the vertex at corner (t,i), clockwise.
std::vector<HalfEdge> star(const Mesh& m, int t, int i) {
  std::vector<HalfEdge> out;
  HalfEdge c{t, i};
  do {
    out.push_back(c);
    if (out.size() > 3 * m.pts.size()) throw Error("marked point removal failed");
    const HalfEdge o = m.adj[c.tri][c.edge];
    c = {o.tri, (o.edge + 1) % 3};
  } while (c.tri != t || c.edge != i);
  return out;
}

// Removes the marked vertex at corner (t,i): its star is developed into the
// frame of one triangle and the link polygon is triangulated by ear clipping.
void remove_point(MarkedMesh& mm, int t, int i, Tracked& x) {
  Mesh& m = mm.m;
  const auto s = star(m, t, i);
  const int d = static_cast<int>(s.size());
  std::vector<int> tris;
  for (const auto& c : s) tris.push_back(c.tri);
  if (d < 3 || std::set<int>(tris.begin(), tris.end()).size() != tris.size())
    throw Error("marked point removal failed");

  // frame of s[j] -> frame of s[0]: q -> rho^(-shift[j]) q + T[j]
  std::vector<int> shift(d, 0);
  std::vector<Vec2> T(d, {0, 0});
  for (int j = 0; j + 1 < d; ++j) {
    const HalfEdge c = s[j], o = m.adj[c.tri][c.edge];
    shift[j + 1] = shift[j] + m.rot[c.tri][c.edge];
    const Vec2 z = m.rho(-shift[j]), z1 = m.rho(-shift[j + 1]);
    // pts[c][c.edge+1] in frame j equals pts[o][o.edge] in frame j+1
    T[j + 1] = cmul(z, m.pts[c.tri][(c.edge + 1) % 3]) + T[j] - cmul(z1, m.pts[o.tri][o.edge]);
  }
  auto to0 = [&](int j, Vec2 q) { return cmul(m.rho(-shift[j]), q) + T[j]; };

  // link polygon counterclockwise; link[a] is the far corner X of s[d-1-a],
  // and the edge link[a] -> link[a+1] is the outer edge of s[d-1-a]
  std::vector<Vec2> link(d);
  std::vector<bool> marks(d);
  std::vector<HalfEdge> outer(d), partner(d);
  std::vector<int> prot(d), sh(d);
  for (int a = 0; a < d; ++a) {
    const int j = d - 1 - a;
    const HalfEdge c = s[j];
    link[a] = to0(j, m.pts[c.tri][(c.edge + 1) % 3]);
    marks[a] = mm.marked[c.tri][(c.edge + 1) % 3];
    outer[a] = {c.tri, (c.edge + 1) % 3};
    partner[a] = m.adj[c.tri][outer[a].edge];
    prot[a] = m.rot[c.tri][outer[a].edge];
    sh[a] = shift[j];
  }
  Vec2 xp = x.p, xu = x.u;
  bool tracked = false;
  for (int j = 0; j < d; ++j)
    if (x.tri == s[j].tri) {
      xp = to0(j, x.p);
      xu = cmul(m.rho(-shift[j]), x.u);
      tracked = true;
    }

  std::vector<std::array<int, 3>> pieces;
  std::vector<int> poly(d);
  std::iota(poly.begin(), poly.end(), 0);
  double sc = 0;
  for (int a = 0; a < d; ++a) sc = std::max(sc, (link[(a + 1) % d] - link[a]).norm());
  const double eps = 1e-12 * sc * sc;
  while (poly.size() > 3) {
    const int n = static_cast<int>(poly.size());
    int ear = -1;
    double best = 0;
    for (int k = 0; k < n; ++k) {
      const int pa = poly[(k + n - 1) % n], pb = poly[k], pc = poly[(k + 1) % n];
      const Vec2 A = link[pa], B = link[pb], C = link[pc];
      if (cross(B - A, C - B) <= eps) continue;
      bool empty = true;
      for (int q : poly)
        if (q != pa && q != pb && q != pc && min_barycentric({A, B, C}, link[q]) >= -1e-12) empty = false;
      if (!empty) continue;
      const double quality = cross(B - A, C - A) / std::max({(B - A).norm(), (C - B).norm(), (A - C).norm()});
      if (quality > best) {
        best = quality;
        ear = k;
      }
    }
    if (ear < 0) throw Error("marked point removal failed");
    pieces.push_back({poly[(ear + n - 1) % n], poly[ear], poly[(ear + 1) % n]});
    poly.erase(poly.begin() + ear);
  }
  pieces.push_back({poly[0], poly[1], poly[2]});

  // the first d-2 star triangles are reused, the last two removed
  std::map<std::pair<int, int>, HalfEdge> directed;
  for (int p = 0; p < d - 2; ++p)
    for (int e = 0; e < 3; ++e) directed[{pieces[p][e], pieces[p][(e + 1) % 3]}] = {tris[p], e};
  for (int p = 0; p < d - 2; ++p) {
    const int nt = tris[p];
    for (int e = 0; e < 3; ++e) {
      m.pts[nt][e] = link[pieces[p][e]];
      mm.marked[nt][e] = marks[pieces[p][e]];
    }
  }
  for (int p = 0; p < d - 2; ++p) {
    const int nt = tris[p];
    for (int e = 0; e < 3; ++e) {
      const int a = pieces[p][e], b = pieces[p][(e + 1) % 3];
      mm.cut[nt][e] = false;
      if (b != (a + 1) % d) {
        m.adj[nt][e] = directed.at({b, a});
        m.rot[nt][e] = 0;
        continue;
      }
      int r = prot[a] + sh[a];
      HalfEdge np = partner[a];
      const auto it = std::find_if(outer.begin(), outer.end(),
                                   [&](const HalfEdge& h) { return h.tri == np.tri && h.edge == np.edge; });
      if (it != outer.end()) {
        const int q = static_cast<int>(it - outer.begin());
        np = directed.at({q, (q + 1) % d});
        r -= sh[q];
      } else {
        m.adj[np.tri][np.edge] = {nt, e};
        m.rot[np.tri][np.edge] = mod(-r, m.k);
      }
      m.adj[nt][e] = np;
      m.rot[nt][e] = mod(r, m.k);
    }
  }
  if (tracked) {
    int bestp = 0;
    double bb = -1e300;
    for (int p = 0; p < d - 2; ++p) {
      const double b = min_barycentric(m.pts[tris[p]], xp);
      if (b > bb) {
        bb = b;
        bestp = p;
      }
    }
    x = {tris[bestp], xp, xu};
  }

  // drop the last two star triangles
  const int N = static_cast<int>(m.pts.size());
  std::vector<int> idx(N, -1);
  int next = 0;
  for (int q = 0; q < N; ++q)
    if (q != tris[d - 2] && q != tris[d - 1]) idx[q] = next++;
  MarkedMesh out;
  out.m.k = m.k;
  out.m.tol = m.tol;
  for (int q = 0; q < N; ++q) {
    if (idx[q] < 0) continue;
    out.m.pts.push_back(m.pts[q]);
    auto adj = m.adj[q];
    for (auto& h : adj) h.tri = idx[h.tri];
    out.m.adj.push_back(adj);
    out.m.rot.push_back(m.rot[q]);
    out.marked.push_back(mm.marked[q]);
    out.cut.push_back(mm.cut[q]);
  }
  x.tri = idx[x.tri];
  mm = std::move(out);
}

void remove_marked(MarkedMesh& mm, Tracked& x) {
  for (;;) {
    HalfEdge found{-1, -1};
    for (int t = 0; t < static_cast<int>(mm.m.pts.size()) && found.tri < 0; ++t)
      for (int i = 0; i < 3; ++i)
        if (mm.marked[t][i]) {
          found = {t, i};
          break;
        }
    if (found.tri < 0) return;
    remove_point(mm, found.tri, found.edge, x);
  }
}
// Applies q -> q + f(y, u) to the cylinder, y being the height above its
// bottom boundary, and returns the new surface with the tracked core.
template <class Map>
DeformResult deform(const FlatSurface& surface, const Cylinder& cyl, Map f, double new_height) {
  const FlatSurface tri = detail::triangulated_input(surface);
  if (cyl.tri < 0 || cyl.tri >= tri.polygon_count() || !(cyl.height > 0) || !(cyl.circumference > 0))
    throw Error("invalid cylinder reference");
  const Mesh m = Mesh::from(tri);
  const double delta = cyl.core_offset, h = cyl.height, c = cyl.circumference;
  const Tolerance& tol = tri.tolerance();
  const double tolc = std::max(tol.abs_eps, 10 * tol.rel_eps * c);
  const double maxlen = c * (1 + 1e-9) + tolc;
  const detail::Trace first = detail::trace(m, nullptr, cyl.tri, cyl.core_point, cyl.direction, maxlen, tolc);
  if (first.status != detail::TraceStatus::closed || std::abs(first.length - c) > 1e-7 * maxlen ||
      canonical_cycle(tri, first.itinerary) != cyl.core_itinerary)
    throw Error("invalid cylinder reference");
  const double tolh = 1e-7 * std::max(1.0, c);
  for (const auto& v : first.verts)
    if (v.y > -delta + tolh && v.y < h - delta - tolh) throw Error("invalid cylinder reference");
  // for k > 2 the core may cross itself; such cylinders are only immersed
  std::vector<std::array<Vec2, 2>> piece(first.visits.size());
  for (std::size_t i = 0; i < first.visits.size(); ++i) {
    const auto& v = first.visits[i];
    piece[i] = {v.p, v.p + v.u * detail::exit_of(m, v.tri, v.p, v.u).s};
  }
  for (std::size_t i = 0; i < piece.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (first.visits[i].tri == first.visits[j].tri &&
          segments_cross(piece[i][0], piece[i][1], piece[j][0], piece[j][1], 1e-12 * m.scale(first.visits[i].tri)))
        throw Error("cylinder is not embedded");

  // boundary saddle connections, located from the core
  std::vector<Chord> chords;
  for (double y : {-delta, h - delta}) {
    std::vector<double> xs;
    for (const auto& v : first.verts)
      if (std::abs(v.y - y) <= tolh) {
        double x = std::fmod(v.x, c);
        if (x < 0) x += c;
        if (c - x <= tolh) x = 0;
        xs.push_back(x);
      }
    std::sort(xs.begin(), xs.end());
    std::vector<double> uniq;
    for (double x : xs)
      if (uniq.empty() || x - uniq.back() > tolh) uniq.push_back(x);
    if (uniq.empty()) throw Error("invalid cylinder reference");
    for (std::size_t i = 0; i < uniq.size(); ++i) {
      const double next = i + 1 < uniq.size() ? uniq[i + 1] : uniq[0] + c;
      int t = cyl.tri;
      Vec2 p = cyl.core_point, u = cyl.direction, n = perp(u);
      const double x = std::fmod((uniq[i] + next) / 2, c);
      if (x > 0 && !detail::advance(m, t, p, u, n, x)) throw Error("invalid cylinder reference");
      Vec2 d = y > 0 ? n : -n;
      if (!detail::advance(m, t, p, d, u, std::abs(y))) throw Error("invalid cylinder reference");
      segment_chords(m, {t, p, u}, (next - uniq[i]) / 2, chords);
    }
  }

  Tracked core{cyl.tri, cyl.core_point, cyl.direction};
  MarkedMesh mm = cut_along(m, chords, core);
  Mesh& cm = mm.m;

  // the cylinder is the region around the core bounded by cut edges; carry
  // the reference point and direction of the core into each of its triangles
  const int N = static_cast<int>(cm.pts.size());
  std::vector<bool> in(N, false);
  std::vector<Vec2> origin(N), dir(N);
  std::vector<int> stack{core.tri};
  in[core.tri] = true;
  origin[core.tri] = core.p;
  dir[core.tri] = core.u;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int e = 0; e < 3; ++e) {
      if (mm.cut[t][e]) continue;
      const HalfEdge o = cm.adj[t][e];
      if (in[o.tri]) continue;
      const Vec2 z = cm.rho(cm.rot[t][e]);
      in[o.tri] = true;
      origin[o.tri] = cm.pts[o.tri][o.edge] + cmul(z, origin[t] - cm.pts[t][(e + 1) % 3]);
      dir[o.tri] = cmul(z, dir[t]);
      stack.push_back(o.tri);
    }
  }
  for (int t = 0; t < N; ++t) {
    if (!in[t]) continue;
    for (int i = 0; i < 3; ++i) {
      double y = cross(dir[t], cm.pts[t][i] - origin[t]) + delta;
      if (std::abs(y) <= tolh)
        y = 0;
      else if (std::abs(y - h) <= tolh)
        y = h;
      else
        throw Error("cylinder boundary trace failed");
      cm.pts[t][i] = cm.pts[t][i] + f(y, dir[t]);
    }
  }
  core.p = core.p + f(delta, core.u);
  remove_marked(mm, core);

  DeformResult out{mm.m.to_surface(), cyl};
  const ValidationReport rep = validate(out.surface);
  if (!rep.ok()) throw Error("deformed surface is invalid: " + rep.issues.front());
  Cylinder& nc = out.cylinder;
  nc.tri = core.tri;
  nc.core_point = core.p;
  nc.direction = core.u;
  nc.height = new_height;
  nc.core_offset = delta * new_height / h;
  nc.bottom.clear();
  nc.top.clear();
  const detail::Trace tr = detail::trace(mm.m, nullptr, nc.tri, nc.core_point, nc.direction, maxlen, tolc);
  if (tr.status != detail::TraceStatus::closed) throw Error("deformed cylinder does not close");
  nc.core_itinerary = canonical_cycle(out.surface, tr.itinerary);
  return out;
}

}  // namespace

DeformResult cylinder_shear(const FlatSurface& surface, const Cylinder& cyl, double t) {
  return deform(surface, cyl, [t](double y, Vec2 u) { return u * (t * y); }, cyl.height);
}

DeformResult cylinder_stretch(const FlatSurface& surface, const Cylinder& cyl, double s) {
  if (!(s > 0)) throw Error("would collapse");
  if (s < 0.05) throw Error("collapse not supported");
  return deform(surface, cyl, [s](double y, Vec2 u) { return perp(u) * ((s - 1) * y); }, cyl.height * s);
}

double systole(const FlatSurface& surface) {
  double shortest = std::numeric_limits<double>::infinity();
  for (const auto& p : surface.polygons())
    for (int i = 0; i < p.size(); ++i) shortest = std::min(shortest, p.edge(i).norm());
  const auto sc = enumerate_saddle_connections(surface, shortest * (1 + 1e-9));
  for (const auto& s : sc.records) shortest = std::min(shortest, s.length);
  return shortest;
}

FlatSurface perturb_in_stratum(const FlatSurface& surface, double eps, std::uint64_t seed) {
  if (!(eps > 0)) throw Error("eps must be positive");
  if (!(eps < systole(surface) / 10)) throw Error("eps must be below systole/10");
  const auto& glue = surface.gluings();
  const int G = static_cast<int>(glue.size()), P = surface.polygon_count();
  // closure of every polygon as a linear map of the per-gluing changes
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2 * P, 2 * G);
  for (int g = 0; g < G; ++g) {
    C.block<2, 2>(2 * glue[g].a.polygon, 2 * g) += Eigen::Matrix2d::Identity();
    const Vec2 z = surface.rho(glue[g].rot);
    Eigen::Matrix2d R;
    R << -z.x, z.y, -z.y, -z.x;  // x -> -rho^rot x
    C.block<2, 2>(2 * glue[g].b.polygon, 2 * g) += R;
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(C);
  const StratumSignature sig = stratum_signature(surface);

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd d(2 * G);
    for (int g = 0; g < G; ++g) {
      const double r = eps * std::sqrt(unit(rng)), a = kTwoPi * unit(rng);
      d[2 * g] = r * std::cos(a);
      d[2 * g + 1] = r * std::sin(a);
    }
    const Eigen::VectorXd x = d - cod.solve(C * d);

    // per-edge changes, then vertex displacements with vertex 0 fixed
    std::vector<std::vector<Vec2>> change(P);
    for (int p = 0; p < P; ++p) change[p].assign(surface.polygon(p).size(), {0, 0});
    for (int g = 0; g < G; ++g) {
      const Vec2 w{x[2 * g], x[2 * g + 1]};
      change[glue[g].a.polygon][glue[g].a.edge] = w;
      change[glue[g].b.polygon][glue[g].b.edge] = -cmul(surface.rho(glue[g].rot), w);
    }
    double worst = 0;
    std::vector<std::vector<Vec2>> shift(P);
    for (int p = 0; p < P; ++p) {
      Vec2 acc{0, 0};
      for (const Vec2& w : change[p]) {
        shift[p].push_back(acc);
        acc += w;
        worst = std::max(worst, acc.norm());
      }
    }
    const double scale = worst > eps ? eps / worst : 1.0;
    std::vector<Polygon> polys;
    bool ok = true;
    for (int p = 0; p < P && ok; ++p) {
      Polygon q = surface.polygon(p);
      for (int i = 0; i < q.size(); ++i) q.vertices[i] += shift[p][i] * scale;
      ok = q.signed_area() > 0 && q.is_simple(surface.tolerance().abs_eps);
      polys.push_back(std::move(q));
    }
    if (!ok) continue;
    try {
      FlatSurface out(surface.k(), std::move(polys), glue, surface.names(), surface.tolerance());
      if (validate(out).ok() && stratum_signature(out) == sig) return out;
    } catch (const Error&) {
    }
  }
  throw Error("perturbation infeasible at this eps");
}

}  // namespace kflat
