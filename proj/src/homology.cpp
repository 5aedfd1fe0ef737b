#include "kflat/homology.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "kflat/surface_io.hpp"
#include "kflat/triangulation.hpp"

namespace kflat {

namespace mp = boost::multiprecision;

namespace {

int anchor_vertex(const FlatSurface& s, EdgeRef r) {
  return s.partner(r).is_side_a ? r.edge : mod(r.edge + 1, s.polygon(r.polygon).size());
}

void add_edge(const FlatSurface& s, EdgeRef r, int coeff, std::vector<int>& chain) {
  const Partner& pt = s.partner(r);
  chain[pt.gluing] += pt.is_side_a ? coeff : -coeff;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  IntMatrix c(n, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < inner; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a[0].size(), std::vector<long long>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

IntMatrix identity(std::size_t n) {
  IntMatrix I(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

// Exact inverse of an integer matrix known to be unimodular.
IntMatrix unimodular_inverse(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<mp::cpp_rational>> m(n, std::vector<mp::cpp_rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw Error("intersection pairing is degenerate");
    std::swap(m[piv], m[c]);
    const mp::cpp_rational inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const mp::cpp_rational f = m[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  IntMatrix out(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mp::cpp_rational& x = m[i][n + j];
      if (mp::denominator(x) != 1) throw Error("intersection pairing is not unimodular");
      out[i][j] = static_cast<long long>(mp::numerator(x));
    }
  return out;
}

}  // namespace

std::vector<int> chain_of_crossings(const FlatSurface& s, const std::vector<EdgeRef>& exits) {
  std::vector<int> chain(s.gluings().size(), 0);
  const int m = static_cast<int>(exits.size());
  for (int i = 0; i < m; ++i) {
    const EdgeRef entry = s.partner(exits[mod(i - 1, m)]).other;
    const EdgeRef exit = exits[i];
    if (entry.polygon != exit.polygon) throw Error("crossing sequence is not a loop");
    const int n = s.polygon(exit.polygon).size();
    for (int v = anchor_vertex(s, entry); v != anchor_vertex(s, exit); v = (v + 1) % n)
      add_edge(s, {exit.polygon, v}, 1, chain);
  }
  return chain;
}

HomologyData h1_basis(const FlatSurface& s) {
  const SingularityTable sing = singularities(s);
  const int nv = static_cast<int>(sing.entries.size());
  const int ne = static_cast<int>(s.gluings().size());
  const int nf = s.polygon_count();
  auto vstart = [&](const Gluing& g) { return sing.id_of_corner[g.a.polygon][g.a.edge]; };
  auto vend = [&](const Gluing& g) {
    return sing.id_of_corner[g.a.polygon][mod(g.a.edge + 1, s.polygon(g.a.polygon).size())];
  };

  // spanning tree of the 1-skeleton
  std::vector<std::vector<int>> vadj(nv);
  for (int g = 0; g < ne; ++g) {
    vadj[vstart(s.gluings()[g])].push_back(g);
    vadj[vend(s.gluings()[g])].push_back(g);
  }
  std::vector<int> vparent_edge(nv, -1), vseen(nv, 0);
  std::vector<char> in_tree(ne, 0);
  std::queue<int> q;
  q.push(0);
  vseen[0] = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int g : vadj[v]) {
      const int w = vstart(s.gluings()[g]) == v ? vend(s.gluings()[g]) : vstart(s.gluings()[g]);
      if (vseen[w]) continue;
      vseen[w] = 1;
      vparent_edge[w] = g;
      in_tree[g] = 1;
      q.push(w);
    }
  }
  // chain from v up to the root
  auto up = [&](int v) {
    std::vector<int> c(ne, 0);
    while (vparent_edge[v] >= 0) {
      const Gluing& g = s.gluings()[vparent_edge[v]];
      const bool forward_into_v = vend(g) == v && vstart(g) != v;
      c[vparent_edge[v]] += forward_into_v ? -1 : 1;
      v = forward_into_v ? vstart(g) : vend(g);
    }
    return c;
  };

  // spanning tree of the dual graph avoiding primal tree edges
  std::vector<EdgeRef> fparent_exit(nf, EdgeRef{});  // edge of the parent leading here
  std::vector<int> fdepth(nf, -1);
  std::vector<char> in_cotree(ne, 0);
  fdepth[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const int p = q.front();
    q.pop();
    for (int e = 0; e < s.polygon(p).size(); ++e) {
      const Partner& pt = s.partner({p, e});
      if (in_tree[pt.gluing] || fdepth[pt.other.polygon] >= 0) continue;
      fdepth[pt.other.polygon] = fdepth[p] + 1;
      fparent_exit[pt.other.polygon] = {p, e};
      in_cotree[pt.gluing] = 1;
      q.push(pt.other.polygon);
    }
  }
  // exits along the dual tree from polygon a to polygon b
  auto tree_path = [&](int a, int b) {
    std::vector<EdgeRef> from_a, from_b;
    while (a != b) {
      if (fdepth[a] >= fdepth[b]) {
        from_a.push_back(s.partner(fparent_exit[a]).other);
        a = fparent_exit[a].polygon;
      } else {
        from_b.push_back(fparent_exit[b]);
        b = fparent_exit[b].polygon;
      }
    }
    from_a.insert(from_a.end(), from_b.rbegin(), from_b.rend());
    return from_a;
  };

  HomologyData h;
  for (int g = 0; g < ne; ++g) {
    if (in_tree[g] || in_cotree[g]) continue;
    const Gluing& gl = s.gluings()[g];
    std::vector<int> z = up(vend(gl));
    const std::vector<int> back = up(vstart(gl));
    for (int i = 0; i < ne; ++i) z[i] -= back[i];
    z[g] += 1;
    h.basis.push_back(std::move(z));
    std::vector<EdgeRef> loop{gl.a};
    const auto rest = tree_path(gl.b.polygon, gl.a.polygon);
    loop.insert(loop.end(), rest.begin(), rest.end());
    std::vector<DualCrossing> dc;
    for (const EdgeRef& r : loop) dc.push_back({s.partner(r).gluing, s.partner(r).is_side_a ? -1 : 1});
    h.duals.push_back(std::move(dc));
    h.dual_exits.push_back(std::move(loop));
  }
  h.rank = static_cast<int>(h.basis.size());
  if (h.rank != 2 * genus(s)) throw Error("homology rank does not match the genus");
  // Z_i . W_j = -delta_ij, so with W_j ~ sum_l Y_jl Z_l we get Q Y^T = -I.
  IntMatrix Y;
  for (const auto& exits : h.dual_exits) Y.push_back(cycle_coordinates(h, chain_of_crossings(s, exits)));
  IntMatrix Q = h.rank ? unimodular_inverse(transpose(Y)) : IntMatrix{};
  for (auto& row : Q)
    for (auto& x : row) x = -x;
  h.intersection = std::move(Q);
  return h;
}

std::vector<long long> cycle_coordinates(const HomologyData& h, const std::vector<int>& chain) {
  std::vector<long long> x(h.rank, 0);
  for (int j = 0; j < h.rank; ++j) {
    long long dot = 0;
    for (const DualCrossing& c : h.duals[j]) dot += static_cast<long long>(c.sign) * chain[c.gluing];
    x[j] = -dot;
  }
  return x;
}

long long intersection_number(const HomologyData& h, const std::vector<long long>& x,
                              const std::vector<long long>& y) {
  long long s = 0;
  for (int i = 0; i < h.rank; ++i)
    for (int j = 0; j < h.rank; ++j) s += x[i] * h.intersection[i][j] * y[j];
  return s;
}

DeckActionMatrix deck_action(const CoverResult& cr, const HomologyData& h) {
  const FlatSurface& c = cr.cover;
  DeckActionMatrix out;
  out.T.assign(h.rank, std::vector<long long>(h.rank, 0));
  for (int i = 0; i < h.rank; ++i) {
    std::vector<int> img(c.gluings().size(), 0);
    for (std::size_t g = 0; g < c.gluings().size(); ++g) {
      const int coeff = h.basis[i][g];
      if (!coeff) continue;
      const EdgeRef a = c.gluings()[g].a;
      add_edge(c, {cr.deck.perm[a.polygon], a.edge}, coeff, img);
    }
    const auto x = cycle_coordinates(h, img);
    for (int r = 0; r < h.rank; ++r) out.T[r][i] = x[r];
  }
  IntMatrix P = identity(h.rank);
  for (int i = 0; i < cr.deck.order; ++i) P = multiply(out.T, P);
  if (P != identity(h.rank)) out.diagnostics.push_back("T^" + std::to_string(cr.deck.order) + " != I");
  if (multiply(multiply(transpose(out.T), h.intersection), out.T) != h.intersection)
    out.diagnostics.push_back("T does not preserve the intersection form");
  return out;
}

std::vector<long long> characteristic_polynomial(const IntMatrix& A) {
  using big = mp::cpp_int;
  const std::size_t n = A.size();
  std::vector<big> p{1};
  for (std::size_t r = 0; r < n; ++r) {
    // leading (r+1)x(r+1) block: new row/column r
    std::vector<big> t(r + 2);
    t[0] = 1;
    t[1] = -big(A[r][r]);
    std::vector<big> v(r);  // A'^j C
    for (std::size_t i = 0; i < r; ++i) v[i] = A[i][r];
    for (std::size_t j = 2; j < r + 2; ++j) {
      big dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot += big(A[r][i]) * v[i];
      t[j] = -dot;
      std::vector<big> nv(r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = 0; l < r; ++l) nv[i] += big(A[i][l]) * v[l];
      v = std::move(nv);
    }
    std::vector<big> np(r + 2, 0);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) np[i] += t[i - j] * p[j];
    p = std::move(np);
  }
  std::vector<long long> out;
  for (const big& c : p) {
    if (mp::abs(c) > big(std::numeric_limits<long long>::max())) throw Error("characteristic polynomial overflow");
    out.push_back(static_cast<long long>(c));
  }
  return out;
}

namespace {

// Exact division of integer polynomials (highest degree first) by a monic one.
bool divide_exact(std::vector<long long>& num, const std::vector<long long>& den) {
  if (num.size() < den.size()) return false;
  std::vector<long long> r = num;
  std::vector<long long> quot(num.size() - den.size() + 1, 0);
  for (std::size_t i = 0; i < quot.size(); ++i) {
    const long long c = r[i];
    quot[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) r[i + j] -= c * den[j];
  }
  for (std::size_t i = quot.size(); i < r.size(); ++i)
    if (r[i] != 0) return false;
  num = std::move(quot);
  return true;
}

}  // namespace

std::vector<long long> cyclotomic_polynomial(int d) {
  std::vector<long long> p(d + 1, 0);  // x^d - 1
  p[0] = 1;
  p[d] = -1;
  for (int e = 1; e < d; ++e)
    if (d % e == 0 && !divide_exact(p, cyclotomic_polynomial(e))) throw Error("cyclotomic division failed");
  return p;
}

std::map<int, int> eigenspace_multiplicities(const DeckActionMatrix& T, int k) {
  std::vector<long long> p = characteristic_polynomial(T.T);
  std::map<int, int> out;
  for (int d = 1; d <= k; ++d) {
    if (k % d) continue;
    const auto phi = cyclotomic_polynomial(d);
    int m = 0;
    while (p.size() > 1 && divide_exact(p, phi)) ++m;
    out[d] = m;
  }
  if (p.size() != 1 || p[0] != 1) throw Error("action is not of order dividing k");
  return out;
}

int expected_primitive_eigenspace_dimension(const StratumSignature& b) {
  int divisible = 0;
  for (int m : b.mu) divisible += (m % b.k == 0);
  return 2 * b.g + static_cast<int>(b.mu.size()) - 2 - divisible;
}

CurvePath parse_curve(std::istream& in, const FlatSurface& s) {
  CurvePath path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw, name, t[4];
    if (!(ls >> kw)) continue;
    if (kw != "seg" || !(ls >> name >> t[0] >> t[1] >> t[2] >> t[3]))
      throw Error("line " + std::to_string(lineno) + ": expected seg <polygon> x0 y0 x1 y1");
    const int p = s.polygon_index(name);
    if (p < 0) throw Error("line " + std::to_string(lineno) + ": unknown polygon '" + name + "'");
    path.segments.push_back({p, {parse_number(t[0]), parse_number(t[1])}, {parse_number(t[2]), parse_number(t[3])}});
  }
  if (path.segments.empty()) throw Error("curve has no segments");
  return path;
}

CurvePath load_curve(const std::string& file, const FlatSurface& s) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file);
  return parse_curve(in, s);
}

namespace {

struct Joint {
  bool crossing = false;
  EdgeRef exit;
  int rot = 0;
};

double polygon_scale(const Polygon& p) {
  double s = 0;
  for (int i = 0; i < p.size(); ++i) s = std::max(s, p.edge(i).norm());
  return s;
}

std::vector<Joint> curve_joints(const FlatSurface& s, const CurvePath& path) {
  const int n = static_cast<int>(path.segments.size());
  if (n == 0) throw Error("curve has no segments");
  std::vector<Joint> joints;
  const int count = path.closed ? n : n - 1;
  for (int i = 0; i < count; ++i) {
    const CurveSegment& cur = path.segments[i];
    const CurveSegment& nxt = path.segments[(i + 1) % n];
    const Polygon& poly = s.polygon(cur.polygon);
    const double eps = 1e-7 * std::max(1.0, polygon_scale(poly));
    if (nxt.polygon == cur.polygon && (nxt.a - cur.b).norm() <= eps) {
      joints.push_back({});
      continue;
    }
    for (int v = 0; v < poly.size(); ++v)
      if ((poly.vertex(v) - cur.b).norm() <= eps) throw Error("curve passes through a vertex");
    int edge = -1;
    for (int e = 0; e < poly.size() && edge < 0; ++e)
      if (point_segment_distance(cur.b, poly.vertex(e), poly.vertex(e + 1)) <= eps) edge = e;
    if (edge < 0) throw Error("segments do not connect at joint " + std::to_string(i));
    const Vec2 ev = poly.edge(edge);
    const double lambda = dot(cur.b - poly.vertex(edge), ev) / ev.norm2();
    const Partner& pt = s.partner({cur.polygon, edge});
    const Polygon& other = s.polygon(pt.other.polygon);
    const Vec2 mapped = other.vertex(pt.other.edge) + (1.0 - lambda) * other.edge(pt.other.edge);
    if (pt.other.polygon != nxt.polygon || (mapped - nxt.a).norm() > eps)
      throw Error("segments do not connect at joint " + std::to_string(i));
    joints.push_back({true, {cur.polygon, edge}, pt.rot});
  }
  return joints;
}

}  // namespace

std::vector<EdgeRef> curve_crossings(const FlatSurface& s, const CurvePath& path) {
  std::vector<EdgeRef> out;
  for (const Joint& j : curve_joints(s, path))
    if (j.crossing) out.push_back(j.exit);
  return out;
}

int curve_index(const FlatSurface& s, const CurvePath& path) {
  if (!path.closed) throw Error("curve must be closed");
  const auto joints = curve_joints(s, path);
  const int n = static_cast<int>(path.segments.size());
  double total = 0;
  for (int i = 0; i < n; ++i) {
    const CurveSegment& cur = path.segments[i];
    const CurveSegment& nxt = path.segments[(i + 1) % n];
    Vec2 din = cur.b - cur.a;
    if (joints[i].crossing) din = cmul(s.rho(joints[i].rot), din);
    total += signed_angle(din, nxt.b - nxt.a);
  }
  const double ind = total / (kTwoPi / s.k());
  const double r = std::round(ind);
  if (std::abs(ind - r) > 1e-6 * std::max(1.0, std::abs(ind))) throw Error("inconsistent turning");
  return static_cast<int>(r);
}

CurvePath reversed(const CurvePath& path) {
  CurvePath out;
  out.closed = path.closed;
  for (auto it = path.segments.rbegin(); it != path.segments.rend(); ++it)
    out.segments.push_back({it->polygon, it->b, it->a});
  return out;
}

CurvePath loop_around_singularity(const FlatSurface& s, int id, double r) {
  const SingularityTable t = singularities(s);
  if (id < 0 || id >= static_cast<int>(t.entries.size())) throw Error("no such singularity");
  CurvePath path;
  for (const Corner& c : t.entries[id].corners) {
    const Polygon& p = s.polygon(c.polygon);
    const Vec2 v = p.vertex(c.vertex);
    const Vec2 out = p.edge(c.vertex) / p.edge(c.vertex).norm();
    const double theta = corner_angle(p, c.vertex);
    const int pieces = static_cast<int>(std::ceil(theta / (std::numbers::pi / 3)));
    Vec2 prev = v + r * out;
    for (int i = 1; i <= pieces; ++i) {
      const double a = theta * i / pieces;
      const Vec2 nxt = v + r * cmul({std::cos(a), std::sin(a)}, out);
      path.segments.push_back({c.polygon, prev, nxt});
      prev = nxt;
    }
  }
  return path;
}

CurvePath dual_curve(const FlatSurface& s, const std::vector<EdgeRef>& exits) {
  CurvePath path;
  const int m = static_cast<int>(exits.size());
  for (int i = 0; i < m; ++i) {
    const EdgeRef entry = s.partner(exits[mod(i - 1, m)]).other;
    const EdgeRef exit = exits[i];
    const Polygon& p = s.polygon(exit.polygon);
    Vec2 centroid{0, 0};
    for (const Vec2& v : p.vertices) centroid += v;
    centroid = centroid / p.size();
    const Vec2 in = p.vertex(entry.edge) + 0.5 * p.edge(entry.edge);
    const Vec2 out = p.vertex(exit.edge) + 0.5 * p.edge(exit.edge);
    path.segments.push_back({exit.polygon, in, centroid});
    path.segments.push_back({exit.polygon, centroid, out});
  }
  return path;
}

int gcd_of_nonzero(const std::vector<int>& values) {
  int g = 0;
  for (int v : values)
    if (v != 0) g = std::gcd(g, std::abs(v));
  return g;
}

int rotation_number(const FlatSurface& s, const CurvePath& alpha, const CurvePath& beta) {
  if (genus(s) != 1) throw Error("rotation number needs genus one");
  const HomologyData h = h1_basis(s);
  const auto a = cycle_coordinates(h, chain_of_crossings(s, curve_crossings(s, alpha)));
  const auto b = cycle_coordinates(h, chain_of_crossings(s, curve_crossings(s, beta)));
  if (std::abs(intersection_number(h, a, b)) != 1) throw Error("not a symplectic pair");
  std::vector<int> args{curve_index(s, alpha), curve_index(s, beta)};
  for (int m : stratum_signature(s).mu) args.push_back(m);
  return gcd_of_nonzero(args);
}

std::vector<SymplecticPair> symplectic_basis(const HomologyData& h) {
  const int n = h.rank;
  std::vector<std::vector<long long>> rest;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> e(n, 0);
    e[i] = 1;
    rest.push_back(std::move(e));
  }
  auto pair = [&](const std::vector<long long>& x, const std::vector<long long>& y) {
    return intersection_number(h, x, y);
  };
  auto axpy = [](std::vector<long long>& y, long long a, const std::vector<long long>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  };
  std::vector<SymplecticPair> out;
  while (!rest.empty()) {
    const std::vector<long long> e = rest[0];
    rest.erase(rest.begin());
    // Euclid on the pairings with e until a single vector pairs nontrivially
    for (;;) {
      int best = -1, nonzero = 0;
      for (int i = 0; i < static_cast<int>(rest.size()); ++i) {
        const long long p = pair(e, rest[i]);
        if (p == 0) continue;
        ++nonzero;
        if (best < 0 || std::abs(p) < std::abs(pair(e, rest[best]))) best = i;
      }
      if (best < 0) throw Error("intersection pairing is not unimodular");
      if (nonzero == 1) {
        std::swap(rest[0], rest[best]);
        break;
      }
      const long long pb = pair(e, rest[best]);
      for (int i = 0; i < static_cast<int>(rest.size()); ++i) {
        if (i == best) continue;
        const long long p = pair(e, rest[i]);
        if (p) axpy(rest[i], -(p / pb), rest[best]);
      }
    }
    std::vector<long long> f = rest[0];
    rest.erase(rest.begin());
    const long long p = pair(e, f);
    if (std::abs(p) != 1) throw Error("intersection pairing is not unimodular");
    if (p < 0)
      for (auto& x : f) x = -x;
    for (auto& v : rest) {
      const long long vf = pair(v, f), ve = pair(v, e);
      axpy(v, -vf, e);
      axpy(v, ve, f);
    }
    out.push_back({e, f});
  }
  return out;
}

int arf_parity(const FlatSurface& s, const std::vector<std::pair<CurvePath, CurvePath>>& pairs) {
  const HomologyData h = h1_basis(s);
  std::vector<std::vector<long long>> a, b;
  for (const auto& [x, y] : pairs) {
    a.push_back(cycle_coordinates(h, chain_of_crossings(s, curve_crossings(s, x))));
    b.push_back(cycle_coordinates(h, chain_of_crossings(s, curve_crossings(s, y))));
  }
  const int g = static_cast<int>(pairs.size());
  if (2 * g != h.rank) throw Error("not symplectic mod 2");
  auto odd = [&](const std::vector<long long>& x, const std::vector<long long>& y) {
    return static_cast<int>(std::abs(intersection_number(h, x, y)) % 2);
  };
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (odd(a[i], a[j]) || odd(b[i], b[j]) || odd(a[i], b[j]) != (i == j ? 1 : 0))
        throw Error("not symplectic mod 2");
  int phi = 0;
  for (const auto& [x, y] : pairs) phi += (curve_index(s, x) + 1) * (curve_index(s, y) + 1);
  return mod(phi, 2);
}

int SpinForm::q(const std::vector<long long>& x) const {
  const int n = h.rank;
  std::vector<long long> c(n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) c[j] += x[i] * h.intersection[i][j];
  long long v = 0;
  for (int j = 0; j < n; ++j) v += (c[j] & 1) * q_dual[j];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((c[i] & 1) && (c[j] & 1)) v += intersection_number(h, dual_coords[i], dual_coords[j]);
  return static_cast<int>(((v % 2) + 2) % 2);
}

int SpinForm::arf(const std::vector<SymplecticPair>& basis) const {
  int a = 0;
  for (const auto& p : basis) a += q(p.a) * q(p.b);
  return a % 2;
}

SpinForm spin_form(const FlatSurface& s) {
  if (s.k() != 1) throw Error("spin parity needs an abelian differential");
  for (int m : stratum_signature(s).mu)
    if (m % 2) throw Error("spin parity needs zeros of even order");
  SpinForm f;
  f.triangulated = delaunay_triangulation(s);
  f.h = h1_basis(f.triangulated);
  for (const auto& exits : f.h.dual_exits) {
    f.q_dual.push_back(mod(curve_index(f.triangulated, dual_curve(f.triangulated, exits)) + 1, 2));
    f.dual_coords.push_back(cycle_coordinates(f.h, chain_of_crossings(f.triangulated, exits)));
  }
  return f;
}

}  // namespace kflat
