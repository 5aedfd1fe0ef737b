#include "kflat/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "geodesics_detail.hpp"
#include "kflat/triangulation.hpp"
#include "parallel.hpp"

namespace kflat {

namespace detail {

FlatSurface triangulated_input(const FlatSurface& s) {
  for (int p = 0; p < s.polygon_count(); ++p)
    if (s.polygon(p).size() != 3) return delaunay_triangulation(s);
  return s;
}

Frame neighbour_frame(const Mesh& m, const Frame& f, int t, int e) {
  const HalfEdge o = m.adj[t][e];
  Frame g;
  g.R = cmul(f.R, m.rho(-m.rot[t][e]));
  g.T = f(m.pts[t][(e + 1) % 3]) - cmul(g.R, m.pts[o.tri][o.edge]);
  return g;
}

double cutoff_slack(double L) { return 1e-9 * std::max(1.0, L); }

}  // namespace detail

namespace {

using detail::Frame;
using detail::HalfEdge;
using detail::Mesh;

constexpr double kAngleEps = 1e-12;

// p strictly counterclockwise of a by more than the relative tolerance
bool strictly_ccw(Vec2 a, Vec2 p) { return cross(a, p) > kAngleEps * a.norm() * p.norm(); }

// Point where the ray through d meets the line through a and b.
Vec2 ray_hit(Vec2 d, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  return d * (cross(a, ab) / cross(d, ab));
}

bool window_reachable(Vec2 lo, Vec2 hi, Vec2 a, Vec2 b, double L) {
  return point_segment_distance({0, 0}, ray_hit(lo, a, b), ray_hit(hi, a, b)) <= L;
}

struct Window {
  int tri, edge;  // half-edge about to be crossed
  Frame frame;    // of tri
  Vec2 a, b;      // unfolded endpoints of the crossed edge, a clockwise of b
  Vec2 lo, hi;    // open cone of directions still visible from the origin
  std::vector<HalfEdgeRef> itinerary;
};

double direction_angle(Vec2 v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0) a += kTwoPi;
  return a;
}

// Every connection leaving corner (t,c), in any order.
std::vector<SaddleConnection> from_corner(const Mesh& m, const SingularityTable& sing, int t, int c,
                                          double L) {
  std::vector<SaddleConnection> out;
  const double Lmax = L + detail::cutoff_slack(L);
  const Vec2 O = m.pts[t][c];
  const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
  const Vec2 A = m.pts[t][c1] - O, B = m.pts[t][c2] - O;
  const int start = sing.id_of_corner[t][c];
  if (A.norm() <= Lmax)
    out.push_back({A, A.norm(), start, sing.id_of_corner[t][c1], t, c, t, c1, {}});

  Frame f0;
  f0.T = -O;
  std::vector<Window> stack;
  stack.push_back({t, c1, f0, A, B, A, B, {}});
  while (!stack.empty()) {
    Window w = std::move(stack.back());
    stack.pop_back();
    if (cross(w.lo, w.hi) <= kAngleEps * w.lo.norm() * w.hi.norm()) continue;
    if (!window_reachable(w.lo, w.hi, w.a, w.b, Lmax)) continue;
    const HalfEdge o = m.adj[w.tri][w.edge];
    const Frame g = detail::neighbour_frame(m, w.frame, w.tri, w.edge);
    const int apex = (o.edge + 2) % 3;
    const Vec2 r = g(m.pts[o.tri][apex]);
    w.itinerary.push_back({w.tri, w.edge});
    const HalfEdgeRef left{o.tri, (o.edge + 1) % 3}, right{o.tri, apex};
    if (strictly_ccw(w.lo, r) && strictly_ccw(r, w.hi)) {
      if (r.norm() <= Lmax)
        out.push_back({r, r.norm(), start, sing.id_of_corner[o.tri][apex], t, c, o.tri, apex, w.itinerary});
      stack.push_back({left.polygon, left.edge, g, w.a, r, w.lo, r, w.itinerary});
      stack.push_back({right.polygon, right.edge, g, r, w.b, r, w.hi, std::move(w.itinerary)});
    } else if (!strictly_ccw(r, w.hi)) {
      stack.push_back({left.polygon, left.edge, g, w.a, r, w.lo, w.hi, std::move(w.itinerary)});
    } else {
      stack.push_back({right.polygon, right.edge, g, r, w.b, w.lo, w.hi, std::move(w.itinerary)});
    }
  }
  return out;
}

bool record_less(const SaddleConnection& x, const SaddleConnection& y) {
  if (x.length != y.length) return x.length < y.length;
  const double ax = direction_angle(x.holonomy), ay = direction_angle(y.holonomy);
  if (ax != ay) return ax < ay;
  return std::tie(x.itinerary, x.tri, x.corner) < std::tie(y.itinerary, y.tri, y.corner);
}

std::vector<int> record_key(int tri, int corner, const std::vector<HalfEdgeRef>& it) {
  std::vector<int> key{tri, corner};
  for (const auto& h : it) {
    key.push_back(h.polygon);
    key.push_back(h.edge);
  }
  return key;
}

}  // namespace

namespace detail {

std::vector<int> reverse_ids(const FlatSurface& tri, const std::vector<SaddleConnection>& records) {
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(records.size()); ++i)
    index[record_key(records[i].tri, records[i].corner, records[i].itinerary)] = i;
  std::vector<int> rev(records.size(), -1);
  for (int i = 0; i < static_cast<int>(records.size()); ++i) {
    const SaddleConnection& s = records[i];
    std::vector<HalfEdgeRef> it;
    int t = s.end_tri, c = s.end_corner;
    if (s.itinerary.empty()) {
      const EdgeRef p = tri.partner({s.tri, s.corner}).other;
      t = p.polygon;
      c = p.edge;
    }
    for (auto h = s.itinerary.rbegin(); h != s.itinerary.rend(); ++h) it.push_back(tri.partner(*h).other);
    const auto found = index.find(record_key(t, c, it));
    if (found != index.end()) rev[i] = found->second;
  }
  return rev;
}

LengthSpectrum make_spectrum(SpectrumKind kind, double L, bool oriented, std::vector<std::pair<double, int>> e) {
  std::stable_sort(e.begin(), e.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return {kind, L, oriented, std::move(e)};
}

LengthSpectrum saddle_spectrum(const FlatSurface& tri, const std::vector<SaddleConnection>& records, double L,
                               bool oriented) {
  std::vector<std::pair<double, int>> entries;
  const std::vector<int> rev = oriented ? std::vector<int>{} : reverse_ids(tri, records);
  for (int i = 0; i < static_cast<int>(records.size()); ++i) {
    if (!oriented) {
      if (rev[i] < 0) throw Error("saddle connection without reverse");
      if (rev[i] < i) continue;
    }
    entries.emplace_back(records[i].length, i);
  }
  return make_spectrum(SpectrumKind::sc, L, oriented, std::move(entries));
}

}  // namespace detail

SaddleConnectionSet enumerate_saddle_connections(const FlatSurface& surface, double L,
                                                 const EnumerationOptions& opt) {
  if (!(L > 0)) throw Error("invalid cutoff");
  SaddleConnectionSet out;
  out.triangulated = detail::triangulated_input(surface);
  const Mesh m = Mesh::from(out.triangulated);
  const SingularityTable sing = singularities(out.triangulated);
  const int n = static_cast<int>(m.pts.size()) * 3;
  std::vector<std::vector<SaddleConnection>> parts(n);
  detail::parallel_for(n, opt.workers, [&](int i) { parts[i] = from_corner(m, sing, i / 3, i % 3, L); });
  for (auto& p : parts)
    for (auto& s : p) out.records.push_back(std::move(s));
  std::sort(out.records.begin(), out.records.end(), record_less);

  out.spectrum = detail::saddle_spectrum(out.triangulated, out.records, L, opt.oriented);
  return out;
}

std::vector<HalfEdgeRef> canonical_cycle(const FlatSurface& triangulated, std::vector<HalfEdgeRef> cycle) {
  if (cycle.empty()) return cycle;
  // Booth's least rotation
  auto min_rotation = [](const std::vector<HalfEdgeRef>& c) {
    const int n = static_cast<int>(c.size());
    std::vector<int> f(2 * n, -1);
    int k = 0;
    for (int j = 1; j < 2 * n; ++j) {
      const HalfEdgeRef sj = c[j % n];
      int i = f[j - k - 1];
      while (i != -1 && !(sj == c[(k + i + 1) % n])) {
        if (sj < c[(k + i + 1) % n]) k = j - i - 1;
        i = f[i];
      }
      if (i == -1 && !(sj == c[(k + i + 1) % n])) {
        if (sj < c[(k + i + 1) % n]) k = j;
        f[j - k] = -1;
      } else {
        f[j - k] = i + 1;
      }
    }
    std::vector<HalfEdgeRef> out(c.begin() + k, c.end());
    out.insert(out.end(), c.begin(), c.begin() + k);
    return out;
  };
  std::vector<HalfEdgeRef> rev;
  for (auto h = cycle.rbegin(); h != cycle.rend(); ++h) rev.push_back(triangulated.partner(*h).other);
  return std::min(min_rotation(cycle), min_rotation(rev));
}

}  // namespace kflat
