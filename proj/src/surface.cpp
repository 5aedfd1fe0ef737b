#include "kflat/surface.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace kflat {

double Polygon::signed_area() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += cross(vertex(i), vertex(i + 1));
  return 0.5 * s;
}

bool Polygon::is_simple(double eps) const {
  const int n = size();
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i || j == mod(i + 1, n)) continue;
      // a vertex touching a non-incident edge
      if (point_segment_distance(vertex(j), vertex(i), vertex(i + 1)) <= eps) return false;
      const bool adjacent = mod(j + 1, n) == i;
      if (!adjacent && segments_cross(vertex(i), vertex(i + 1), vertex(j), vertex(j + 1), eps))
        return false;
    }
  }
  return true;
}

FlatSurface::FlatSurface(int k, std::vector<Polygon> polygons, std::vector<Gluing> gluings,
                         std::vector<std::string> names, Tolerance tol)
    : k_(k), polygons_(std::move(polygons)), gluings_(std::move(gluings)),
      names_(std::move(names)), tol_(tol) {
  if (k_ < 1) throw Error("k must be positive");
  if (!tol_.valid()) throw Error("tolerance must be strictly positive");
  if (names_.size() != polygons_.size()) {
    names_.resize(polygons_.size());
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i].empty()) names_[i] = "P" + std::to_string(i);
  }
  for (auto& g : gluings_) g.rot = mod(g.rot, k_);
  build_index();
}

void FlatSurface::build_index() {
  partners_.assign(polygons_.size(), {});
  multiplicity_.assign(polygons_.size(), {});
  for (std::size_t p = 0; p < polygons_.size(); ++p) {
    partners_[p].assign(polygons_[p].vertices.size(), Partner{});
    multiplicity_[p].assign(polygons_[p].vertices.size(), 0);
  }
  auto in_range = [&](EdgeRef e) {
    return e.polygon >= 0 && e.polygon < polygon_count() && e.edge >= 0 &&
           e.edge < polygons_[e.polygon].size();
  };
  for (int gi = 0; gi < static_cast<int>(gluings_.size()); ++gi) {
    const Gluing& g = gluings_[gi];
    if (!in_range(g.a) || !in_range(g.b)) throw Error("gluing references a missing edge");
    if (multiplicity_[g.a.polygon][g.a.edge]++ == 0)
      partners_[g.a.polygon][g.a.edge] = Partner{g.b, g.rot, gi, true};
    if (multiplicity_[g.b.polygon][g.b.edge]++ == 0)
      partners_[g.b.polygon][g.b.edge] = Partner{g.a, mod(-g.rot, k_), gi, false};
  }
}

int FlatSurface::edge_count() const {
  int n = 0;
  for (const auto& p : polygons_) n += p.size();
  return n;
}

int FlatSurface::polygon_index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

bool StratumSignature::gauss_bonnet_holds() const {
  const long sum = std::accumulate(mu.begin(), mu.end(), 0L);
  return sum == static_cast<long>(k) * (2L * g - 2L);
}

std::string StratumSignature::to_string() const {
  std::ostringstream os;
  os << "k=" << k << " g=" << g << " mu=";
  for (std::size_t i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
  return os.str();
}

StratumSignature make_signature(int k, int g, std::vector<int> mu) {
  if (k < 1) throw Error("invalid signature: k must be positive");
  if (g < 0) throw Error("invalid signature: negative genus");
  for (int m : mu)
    if (m <= -k) throw Error("invalid signature: pole of order >= k");
  std::sort(mu.begin(), mu.end(), std::greater<>());
  StratumSignature s{k, g, std::move(mu)};
  if (!s.gauss_bonnet_holds()) throw Error("inconsistent signature");
  return s;
}

double corner_angle(const Polygon& p, int vertex) {
  const Vec2 out = p.edge(vertex);
  const Vec2 back = -p.edge(vertex - 1);
  double a = ccw_angle(out, back);
  if (a == 0.0) a = kTwoPi;
  return a;
}

int infer_rotation(Vec2 va, Vec2 vb, int k, const Tolerance& tol) {
  for (int j = 0; j < k; ++j)
    if (tol.near(vb, -cmul(root_of_unity(j, k), va))) return j;
  return -1;
}

std::vector<int> polygon_components(const FlatSurface& s, int* count) {
  std::vector<int> comp(s.polygon_count(), -1);
  int c = 0;
  for (int start = 0; start < s.polygon_count(); ++start) {
    if (comp[start] >= 0) continue;
    std::queue<int> q;
    q.push(start);
    comp[start] = c;
    while (!q.empty()) {
      const int p = q.front();
      q.pop();
      for (int e = 0; e < s.polygon(p).size(); ++e) {
        const Partner& pt = s.partner({p, e});
        if (pt.other.valid() && comp[pt.other.polygon] < 0) {
          comp[pt.other.polygon] = c;
          q.push(pt.other.polygon);
        }
      }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

namespace {

// Corner cycles without order checks; requires every edge glued.
std::vector<std::vector<Corner>> corner_cycles(const FlatSurface& s) {
  std::vector<std::vector<char>> seen(s.polygon_count());
  for (int p = 0; p < s.polygon_count(); ++p) seen[p].assign(s.polygon(p).size(), 0);
  std::vector<std::vector<Corner>> cycles;
  for (int p = 0; p < s.polygon_count(); ++p) {
    for (int v = 0; v < s.polygon(p).size(); ++v) {
      if (seen[p][v]) continue;
      std::vector<Corner> cyc;
      Corner c{p, v};
      while (!seen[c.polygon][c.vertex]) {
        seen[c.polygon][c.vertex] = 1;
        cyc.push_back(c);
        const Partner& pt = s.partner({c.polygon, mod(c.vertex - 1, s.polygon(c.polygon).size())});
        if (!pt.other.valid()) throw Error("unglued edge");
        c = Corner{pt.other.polygon, pt.other.edge};
      }
      cycles.push_back(std::move(cyc));
    }
  }
  return cycles;
}

}  // namespace

ValidationReport validate(const FlatSurface& s) {
  ValidationReport r;
  const Tolerance& tol = s.tolerance();
  for (int p = 0; p < s.polygon_count(); ++p) {
    const Polygon& poly = s.polygon(p);
    const std::string nm = s.names()[p];
    if (poly.size() < 3) {
      r.issues.push_back("polygon " + nm + " has fewer than 3 vertices");
      continue;
    }
    if (poly.signed_area() <= 0) r.issues.push_back("polygon " + nm + " is not positively oriented");
    if (!poly.is_simple(tol.abs_eps)) r.issues.push_back("polygon " + nm + " is not simple");
  }
  bool all_glued = true;
  for (int p = 0; p < s.polygon_count(); ++p) {
    for (int e = 0; e < s.polygon(p).size(); ++e) {
      const int m = s.glue_multiplicity({p, e});
      if (m == 0) {
        r.issues.push_back("unglued edge " + s.names()[p] + "." + std::to_string(e));
        all_glued = false;
      } else if (m > 1) {
        r.issues.push_back("edge " + s.names()[p] + "." + std::to_string(e) + " glued more than once");
        all_glued = false;
      }
    }
  }
  for (const Gluing& g : s.gluings()) {
    const Vec2 va = s.polygon(g.a.polygon).edge(g.a.edge);
    const Vec2 vb = s.polygon(g.b.polygon).edge(g.b.edge);
    if (!tol.near(vb, -cmul(s.rho(g.rot), va))) {
      r.issues.push_back("edge vector mismatch at " + s.names()[g.a.polygon] + "." +
                         std::to_string(g.a.edge) + " / " + s.names()[g.b.polygon] + "." +
                         std::to_string(g.b.edge));
    }
  }
  int comps = 0;
  if (s.polygon_count() == 0) r.issues.push_back("surface has no polygons");
  polygon_components(s, &comps);
  if (comps > 1) r.issues.push_back("surface is disconnected (" + std::to_string(comps) + " components)");
  if (all_glued && r.ok()) {
    for (const auto& cyc : corner_cycles(s)) {
      double angle = 0.0;
      for (const Corner& c : cyc) angle += corner_angle(s.polygon(c.polygon), c.vertex);
      const double m = s.k() * angle / kTwoPi - s.k();
      const long mi = std::lround(m);
      if (std::abs(angle - kTwoPi * (1.0 + static_cast<double>(mi) / s.k())) >
          s.tolerance().angle_eps * cyc.size() * 8 + 1e-12 * angle) {
        r.issues.push_back("inconsistent cone angle");
      } else if (mi <= -s.k()) {
        r.issues.push_back("cone angle gives pole of order >= k");
      }
    }
  }
  return r;
}

SingularityTable singularities(const FlatSurface& s) {
  SingularityTable t;
  t.id_of_corner.resize(s.polygon_count());
  for (int p = 0; p < s.polygon_count(); ++p) t.id_of_corner[p].assign(s.polygon(p).size(), -1);
  for (auto& cyc : corner_cycles(s)) {
    Singularity sg;
    sg.id = static_cast<int>(t.entries.size());
    for (const Corner& c : cyc) {
      sg.cone_angle += corner_angle(s.polygon(c.polygon), c.vertex);
      t.id_of_corner[c.polygon][c.vertex] = sg.id;
    }
    const double m = s.k() * sg.cone_angle / kTwoPi - s.k();
    sg.order = static_cast<int>(std::lround(m));
    if (std::abs(sg.cone_angle - kTwoPi * (1.0 + static_cast<double>(sg.order) / s.k())) >
        s.tolerance().angle_eps * cyc.size() * 8 + 1e-12 * sg.cone_angle)
      throw Error("inconsistent cone angle");
    sg.corners = std::move(cyc);
    t.entries.push_back(std::move(sg));
  }
  return t;
}

int genus(const FlatSurface& s) {
  const int v = static_cast<int>(corner_cycles(s).size());
  const int e = static_cast<int>(s.gluings().size());
  const int f = s.polygon_count();
  return (2 - (v - e + f)) / 2;
}

double area(const FlatSurface& s) {
  double a = 0.0;
  for (const auto& p : s.polygons()) a += p.signed_area();
  return a;
}

StratumSignature stratum_signature(const FlatSurface& s) {
  const SingularityTable t = singularities(s);
  std::vector<int> mu;
  for (const auto& e : t.entries) mu.push_back(e.order);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  StratumSignature sig{s.k(), genus(s), std::move(mu)};
  if (!sig.gauss_bonnet_holds()) throw Error("inconsistent signature");
  return sig;
}

FlatSurface rotated(const FlatSurface& s, Vec2 unit) {
  std::vector<Polygon> polys = s.polygons();
  for (auto& p : polys)
    for (auto& v : p.vertices) v = cmul(unit, v);
  return FlatSurface(s.k(), std::move(polys), s.gluings(), s.names(), s.tolerance());
}

}  // namespace kflat
