#include "trace.hpp"

namespace kflat::detail {

Exit exit_of(const Mesh& m, int t, Vec2 p, Vec2 u) {
  Exit best;
  const double sc = m.scale(t);
  for (int e = 0; e < 3; ++e) {
    const Vec2 a = m.pts[t][e], d = m.pts[t][(e + 1) % 3] - a;
    const double den = cross(u, d);
    if (den <= 1e-14 * d.norm()) continue;
    const double s = cross(a - p, d) / den;
    if (s < -1e-12 * sc || s >= best.s) continue;
    best = {true, false, e, s, cross(a - p, u) / den};
  }
  if (best.ok) {
    const double len = (m.pts[t][(best.edge + 1) % 3] - m.pts[t][best.edge]).norm();
    const double vtol = 1e-10 * sc;
    best.vertex = best.lambda * len < vtol || (1 - best.lambda) * len < vtol;
  }
  return best;
}

void cross_edge(const Mesh& m, int& t, Vec2& p, int e, double lambda, std::initializer_list<Vec2*> vecs) {
  const HalfEdge o = m.adj[t][e];
  const Vec2 z = m.rho(m.rot[t][e]);
  for (Vec2* v : vecs) *v = cmul(z, *v);
  const Vec2 a = m.pts[o.tri][o.edge], b = m.pts[o.tri][(o.edge + 1) % 3];
  p = a + (b - a) * (1 - lambda);
  t = o.tri;
}

bool advance(const Mesh& m, int& t, Vec2& p, Vec2& d, Vec2& u, double dist) {
  for (int step = 0; step < 100000; ++step) {
    const Exit x = exit_of(m, t, p, d);
    if (!x.ok) return false;
    if (x.s >= dist) {
      p = p + d * dist;
      return true;
    }
    if (x.vertex) return false;
    dist -= x.s;
    cross_edge(m, t, p, x.edge, x.lambda, {&d, &u});
  }
  return false;
}

Trace trace(const Mesh& m, const SingularityTable* sing, int t0, Vec2 p0, Vec2 u0, double maxlen, double tolc) {
  Trace out;
  Frame f;
  int t = t0;
  Vec2 p = p0, u = u0;
  double total = 0;
  auto collect = [&] {
    for (int i = 0; i < 3; ++i) {
      const Vec2 v = f(m.pts[t][i]) - p0;
      out.verts.push_back({dot(u0, v), cross(u0, v), sing ? sing->id_of_corner[t][i] : -1});
    }
  };
  for (int step = 0; step < 1000000; ++step) {
    const Exit x = exit_of(m, t, p, u);
    if (!x.ok) return out;
    collect();
    out.visits.push_back({t, p, u});
    if (!out.itinerary.empty() && t == t0 && (u - u0).norm() <= 1e-9) {
      const Vec2 dp = p0 - p;
      const double along = dot(dp, u);
      if (std::abs(cross(u, dp)) <= tolc && along >= -tolc && along <= x.s + tolc) {
        out.status = TraceStatus::closed;
        out.length = total + along;
        return out;
      }
    }
    if (x.vertex) {
      out.status = TraceStatus::vertex;
      return out;
    }
    total += x.s;
    if (total > maxlen) {
      out.status = TraceStatus::open;
      return out;
    }
    out.itinerary.push_back({t, x.edge});
    f = detail::neighbour_frame(m, f, t, x.edge);
    cross_edge(m, t, p, x.edge, x.lambda, {&u});
  }
  return out;
}

}  // namespace kflat::detail
