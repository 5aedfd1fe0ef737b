#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>

#include "geodesics_detail.hpp"
#include "parallel.hpp"
#include "trace.hpp"

namespace kflat {

namespace {

using detail::Frame;
using detail::HalfEdge;
using detail::Mesh;
using detail::ChainVertex;
using detail::Trace;
using detail::TraceStatus;

// Triangle of the saddle connection's chain containing its midpoint.
struct Located {
  int tri;
  Vec2 p, u;
};

std::optional<Located> locate_midpoint(const Mesh& m, const SaddleConnection& s) {
  Frame f;
  f.T = -m.pts[s.tri][s.corner];
  const Vec2 M = s.holonomy * 0.5;
  int t = s.tri;
  auto try_here = [&]() -> std::optional<Located> {
    std::array<Vec2, 3> q;
    for (int i = 0; i < 3; ++i) q[i] = f(m.pts[t][i]);
    const double eps = 1e-12 * m.scale(t) * m.scale(t);
    for (int i = 0; i < 3; ++i)
      if (cross(q[(i + 1) % 3] - q[i], M - q[i]) < -eps) return std::nullopt;
    return Located{t, cmul(conj(f.R), M - f.T), cmul(conj(f.R), s.holonomy / s.length)};
  };
  if (auto hit = try_here()) return hit;
  for (const auto& h : s.itinerary) {
    f = detail::neighbour_frame(m, f, h.polygon, h.edge);
    t = m.adj[h.polygon][h.edge].tri;
    if (auto hit = try_here()) return hit;
  }
  return std::nullopt;
}

struct Found {
  std::optional<Cylinder> cyl;
  std::string diagnostic;
};

struct BoundaryIndex {
  std::map<std::pair<int, int>, std::vector<int>> by_ends;
};

// Distance between two located points, allowing them to sit in triangles
// sharing an edge.
double located_distance(const Mesh& m, const Located& a, const Located& b) {
  if (a.tri == b.tri) return (a.p - b.p).norm();
  double best = std::numeric_limits<double>::infinity();
  for (int e = 0; e < 3; ++e) {
    const HalfEdge o = m.adj[a.tri][e];
    if (o.tri != b.tri) continue;
    const Vec2 q = m.pts[a.tri][(e + 1) % 3] + cmul(m.rho(-m.rot[a.tri][e]), b.p - m.pts[o.tri][o.edge]);
    best = std::min(best, (a.p - q).norm());
  }
  return best;
}

// Saddle connections along one boundary line y = line_y of the band traced
// from start, matched to records by ends, length, direction and midpoint.
std::vector<int> boundary_ids(const Mesh& m, const Located& start, double line_y, const std::vector<ChainVertex>& line,
                              double c, double tolh, const std::vector<SaddleConnection>& records,
                              const BoundaryIndex& index, std::string& diagnostic) {
  const Vec2 u = start.u;
  const int k = m.k;
  std::vector<std::pair<double, int>> pts;
  for (const auto& v : line) {
    double x = std::fmod(v.x, c);
    if (x < 0) x += c;
    if (c - x <= tolh) x = 0;
    pts.emplace_back(x, v.sid);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, int>> uniq;
  for (const auto& q : pts)
    if (uniq.empty() || q.first - uniq.back().first > tolh) uniq.push_back(q);
  std::vector<int> ids;
  const int n = static_cast<int>(uniq.size());
  for (int i = 0; i < n; ++i) {
    const auto& [x0, a] = uniq[i];
    const auto& [x1, b] = uniq[(i + 1) % n];
    const double gap = i + 1 < n ? x1 - x0 : x1 + c - x0;
    std::vector<int> candidates;
    const auto it = index.by_ends.find({a, b});
    if (it != index.by_ends.end())
      for (int r : it->second) {
        const SaddleConnection& s = records[r];
        if (std::abs(s.length - gap) > 10 * tolh) continue;
        bool parallel = false;
        for (int j = 0; j < k && !parallel; ++j)
          parallel = (s.holonomy - cmul(root_of_unity(j, k), u) * gap).norm() <= 10 * tolh;
        if (parallel) candidates.push_back(r);
      }
    int id = candidates.empty() ? -1 : candidates.front();
    if (candidates.size() > 1) {
      Located here = start;
      Vec2 n{-u.y, u.x};
      const double x = x0 + gap / 2;
      bool ok = detail::advance(m, here.tri, here.p, here.u, n, x);
      Vec2 d = line_y > 0 ? n : -n;
      ok = ok && detail::advance(m, here.tri, here.p, d, here.u, std::abs(line_y));
      double best = std::numeric_limits<double>::infinity();
      for (int r : candidates) {
        const auto mid = locate_midpoint(m, records[r]);
        if (!ok || !mid) continue;
        const double dist = located_distance(m, here, *mid);
        if (dist < best) {
          best = dist;
          id = r;
        }
      }
    }
    if (id < 0) diagnostic = "boundary saddle connection not found";
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

Found cylinder_at(const Mesh& m, const FlatSurface& tri, const SingularityTable& sing,
                  const std::vector<SaddleConnection>& records, const BoundaryIndex& index, int sid, double delta0,
                  double L) {
  Found out;
  const SaddleConnection& s = records[sid];
  const auto mid = locate_midpoint(m, s);
  if (!mid) {
    out.diagnostic = "midpoint not located";
    return out;
  }
  const Tolerance& tol = tri.tolerance();
  const double tolc = std::max(tol.abs_eps, 10 * tol.rel_eps * L);
  const double tolh = 1e-9 * std::max(1.0, L);
  const double maxlen = L + detail::cutoff_slack(L) + tolc;
  double delta = delta0;
  for (int halving = 0; halving <= 40 && delta > 10 * tolh; ++halving, delta *= 0.5) {
    int t = mid->tri;
    Vec2 p = mid->p, u = mid->u, n{-mid->u.y, mid->u.x};
    if (!detail::advance(m, t, p, n, u, delta)) continue;
    const Trace tr = detail::trace(m, &sing, t, p, u, maxlen, tolc);
    if (tr.status == TraceStatus::lost || tr.status == TraceStatus::vertex) continue;
    bool intruder = false, on_line = false;
    double top = std::numeric_limits<double>::infinity();
    for (const auto& v : tr.verts) {
      if (std::abs(v.y) <= tolh) on_line = true;
      if (v.y > -delta + tolh && v.y < -tolh) intruder = true;
      if (v.y > tolh) top = std::min(top, v.y);
    }
    if (intruder || on_line) continue;
    // the band between s and the trace is free of singularities, so any
    // smaller offset gives the same answer
    if (tr.status == TraceStatus::open) return out;
    // closed but longer than the cutoff: its boundary pieces may not be enumerated
    if (tr.length > L + detail::cutoff_slack(L)) return out;
    Cylinder c;
    c.direction = u;
    c.angle = std::atan2(u.y, u.x);
    if (c.angle < 0) c.angle += std::numbers::pi;
    if (c.angle >= std::numbers::pi) c.angle -= std::numbers::pi;
    c.circumference = tr.length;
    c.height = top + delta;
    c.tri = t;
    c.core_point = p;
    c.core_offset = delta;
    c.core_itinerary = canonical_cycle(tri, tr.itinerary);
    std::vector<ChainVertex> bottom, upper;
    for (const auto& v : tr.verts) {
      if (std::abs(v.y + delta) <= tolh) bottom.push_back(v);
      if (std::abs(v.y - top) <= tolh) upper.push_back(v);
    }
    const Located start{t, p, u};
    c.bottom = boundary_ids(m, start, -delta, bottom, c.circumference, tolh, records, index, out.diagnostic);
    c.top = boundary_ids(m, start, top, upper, c.circumference, tolh, records, index, out.diagnostic);
    out.cyl = std::move(c);
    return out;
  }
  out.diagnostic = "degenerate trace in direction " + std::to_string(std::atan2(s.holonomy.y, s.holonomy.x));
  return out;
}

}  // namespace

CylinderSet enumerate_cylinders(const FlatSurface& surface, double L, const EnumerationOptions& opt) {
  CylinderSet out;
  EnumerationOptions sc_opt = opt;
  sc_opt.oriented = true;
  out.saddles = enumerate_saddle_connections(surface, L, sc_opt);
  out.triangulated = out.saddles.triangulated;
  const auto& records = out.saddles.records;
  out.saddles.spectrum = detail::saddle_spectrum(out.triangulated, records, L, opt.oriented);
  out.spectrum = detail::make_spectrum(SpectrumKind::cyl, L, false, {});
  if (records.empty()) return out;

  const Mesh m = Mesh::from(out.triangulated);
  const SingularityTable sing = singularities(out.triangulated);
  BoundaryIndex index;
  for (int i = 0; i < static_cast<int>(records.size()); ++i)
    index.by_ends[{records[i].start, records[i].end}].push_back(i);
  double shortest = records.front().length;
  for (const auto& r : records) shortest = std::min(shortest, r.length);

  const double total_area = area(out.triangulated);
  const int n = static_cast<int>(records.size());
  std::vector<Found> found(n);
  detail::parallel_for(n, opt.workers, [&](int i) {
    // a cylinder bounded by records[i] has height <= Area / |records[i]|
    const double start = std::min(shortest / 4, 0.5 * total_area / records[i].length);
    found[i] = cylinder_at(m, out.triangulated, sing, records, index, i, start, L);
  });

  std::map<std::vector<HalfEdgeRef>, int> seen;
  for (auto& f : found) {
    if (!f.diagnostic.empty() &&
        std::find(out.diagnostics.begin(), out.diagnostics.end(), f.diagnostic) == out.diagnostics.end())
      out.diagnostics.push_back(f.diagnostic);
    if (!f.cyl || f.cyl->circumference > L + detail::cutoff_slack(L)) continue;
    if (seen.emplace(f.cyl->core_itinerary, 0).second) out.records.push_back(std::move(*f.cyl));
  }
  std::sort(out.records.begin(), out.records.end(), [](const Cylinder& a, const Cylinder& b) {
    return std::tie(a.circumference, a.angle, a.core_itinerary) < std::tie(b.circumference, b.angle, b.core_itinerary);
  });
  std::vector<std::pair<double, int>> entries;
  for (int i = 0; i < static_cast<int>(out.records.size()); ++i) entries.emplace_back(out.records[i].circumference, i);
  out.spectrum = detail::make_spectrum(SpectrumKind::cyl, L, false, std::move(entries));
  return out;
}

}  // namespace kflat
