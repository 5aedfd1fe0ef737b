#include "kflat/generators.hpp"

#include <cmath>
#include <random>

namespace kflat {

FlatSurface torus(Vec2 a, Vec2 b) {
  if (cross(a, b) <= 0) throw Error("torus needs a positively oriented basis");
  Polygon p{{{0, 0}, a, a + b, b}};
  return FlatSurface(1, {p}, {{{0, 0}, {0, 2}, 0}, {{0, 1}, {0, 3}, 0}}, {"T"});
}

FlatSurface regular_ngon(int n) {
  if (n < 4 || n % 2) throw Error("regular_ngon needs an even n >= 4");
  Polygon p;
  Vec2 at{0, 0};
  for (int i = 0; i < n; ++i) {
    p.vertices.push_back(at);
    const double t = kTwoPi * i / n;
    at += Vec2{std::cos(t), std::sin(t)};
  }
  std::vector<Gluing> g;
  for (int i = 0; i < n / 2; ++i) g.push_back({{0, i}, {0, i + n / 2}, 0});
  return FlatSurface(1, {p}, std::move(g), {"N"});
}

FlatSurface pillowcase() {
  const Polygon sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  // A.e1 meets B.e3 and B.e1 meets A.e3 by translation; the bottom and top
  // edges fold onto each other by a half turn.
  return FlatSurface(2, {sq, sq},
                     {{{0, 1}, {1, 3}, 0}, {{1, 1}, {0, 3}, 0}, {{0, 0}, {1, 0}, 1}, {{0, 2}, {1, 2}, 1}},
                     {"A", "B"});
}

Polygon angle_polygon(int k, const std::vector<int>& a, const std::vector<double>& lengths) {
  const int n = static_cast<int>(a.size());
  if (n < 3 || static_cast<int>(lengths.size()) != n - 2)
    throw Error("angle_polygon needs n angles and n-2 lengths");
  long sum = 0;
  for (int x : a) sum += x;
  if (sum != static_cast<long>(k) * (n - 2)) throw Error("angles do not sum to (n-2)*pi");
  std::vector<Vec2> dir(n);
  double th = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0) th += std::numbers::pi * (1.0 - static_cast<double>(a[i]) / k);
    dir[i] = {std::cos(th), std::sin(th)};
  }
  Vec2 s{0, 0};
  for (int i = 0; i < n - 2; ++i) s += lengths[i] * dir[i];
  const Vec2 u = dir[n - 2], w = dir[n - 1];
  const double det = cross(u, w);
  if (std::abs(det) < 1e-12) throw Error("angle_polygon: last two edges are parallel");
  const double x = cross(-s, w) / det, y = cross(u, -s) / det;
  if (x <= 1e-9 || y <= 1e-9) throw Error("angle_polygon: closure needs a non-positive length");
  Polygon p;
  Vec2 at{0, 0};
  for (int i = 0; i < n; ++i) {
    p.vertices.push_back(at);
    at += (i < n - 2 ? lengths[i] : (i == n - 2 ? x : y)) * dir[i];
  }
  if (p.signed_area() <= 0 || !p.is_simple(1e-9)) throw Error("angle_polygon: polygon is not simple");
  return p;
}

FlatSurface doubled_polygon(int k, const Polygon& p) {
  const int n = p.size();
  Polygon m;
  for (int j = 0; j < n; ++j) m.vertices.push_back(conj(p.vertex(n - j)));
  const Tolerance tol;
  std::vector<Gluing> g;
  for (int i = 0; i < n; ++i) {
    const int j = n - 1 - i;
    const int r = infer_rotation(p.edge(i), m.edge(j), k, Tolerance{1e-9, 1e-12, 1e-9});
    if (r < 0) throw Error("doubled_polygon: edge direction is not a multiple of pi/k");
    g.push_back({{0, i}, {1, j}, r});
  }
  return FlatSurface(k, {p, m}, std::move(g), {"P", "Q"}, tol);
}

FlatSurface equilateral_k3() {
  const double h = std::sqrt(3.0) / 2.0;
  const Polygon up{{{0, 0}, {1, 0}, {0.5, h}}};
  const Polygon down{{{0, 0}, {0.5, -h}, {1, 0}}};
  const std::vector<std::pair<EdgeRef, EdgeRef>> pairs{{{0, 0}, {2, 0}}, {{0, 1}, {2, 1}}, {{0, 2}, {3, 0}},
                                                       {{1, 0}, {2, 2}}, {{1, 1}, {3, 2}}, {{1, 2}, {3, 1}}};
  const std::vector<Polygon> polys{up, up, down, down};
  std::vector<Gluing> g;
  for (const auto& [a, b] : pairs) {
    const int r = infer_rotation(polys[a.polygon].edge(a.edge), polys[b.polygon].edge(b.edge), 3,
                                 Tolerance{1e-9, 1e-12, 1e-9});
    if (r < 0) throw Error("equilateral_k3: gluing mismatch");
    g.push_back({a, b, r});
  }
  return FlatSurface(3, polys, std::move(g), {"U0", "U1", "D0", "D1"});
}

FlatSurface hyperelliptic_k6_octagon() {
  return doubled_polygon(6, angle_polygon(6, {11, 7, 3, 3, 3, 3, 3, 3}, {1, 1, 1, 2, 2, 1}));
}

FlatSurface doubled_angle_polygon(int k, const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> tenth(3, 25);
  std::vector<double> len(n - 2, 1.0);
  for (int attempt = 0; attempt < 5000; ++attempt) {
    try {
      return doubled_polygon(k, angle_polygon(k, a, len));
    } catch (const Error&) {
    }
    for (auto& l : len) l = tenth(rng) / 10.0;
  }
  throw Error("no simple polygon found for the angle pattern");
}

std::vector<NamedSurface> battery() {
  const std::vector<std::pair<int, std::vector<int>>> patterns{
      {2, {1, 1, 1, 1}},    {2, {2, 1, 1, 2, 1, 1}}, {3, {1, 1, 1}},       {3, {1, 1, 2, 2}},
      {3, {1, 2, 1, 2}},    {3, {2, 2, 2, 2, 2, 2}}, {3, {3, 1, 1, 2, 2}}, {5, {1, 1, 3}},
      {5, {1, 2, 2}},       {5, {1, 2, 3, 4}},       {5, {2, 2, 3, 3}},    {5, {1, 3, 3, 3}},
      {5, {2, 2, 2, 4}},    {7, {1, 1, 5}},          {7, {1, 2, 4}},       {7, {1, 3, 3}},
      {7, {2, 2, 3}},       {7, {1, 3, 4, 6}},       {7, {2, 4, 4, 4}},    {7, {3, 3, 4, 4}},
      {7, {4, 4, 5, 6, 8, 4, 4}}};
  std::vector<NamedSurface> out;
  out.push_back({"pillowcase", pillowcase()});
  out.push_back({"equilateral-k3", equilateral_k3()});
  for (const auto& [k, a] : patterns) {
    std::string nm = "doubled-k" + std::to_string(k) + "-";
    for (std::size_t i = 0; i < a.size(); ++i) nm += (i ? "." : "") + std::to_string(a[i]);
    out.push_back({nm, doubled_angle_polygon(k, a)});
  }
  return out;
}

FlatSurface builtin_surface(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (name == "torus") {
      if (arg.empty()) return torus({1, 0}, {0, 1});
      const auto comma = arg.find(',');
      if (comma == std::string::npos) throw Error("torus:a,b expected");
      return torus({std::stod(arg.substr(0, comma)), 0}, {0, std::stod(arg.substr(comma + 1))});
    }
    if (name == "ngon") return regular_ngon(std::stoi(arg));
  } catch (const std::logic_error&) {
    throw Error("bad generator parameters '" + spec + "'");
  }
  if (name == "pillowcase") return pillowcase();
  if (name == "equilateral-k3") return equilateral_k3();
  if (name == "hyperelliptic-k6") return hyperelliptic_k6_octagon();
  throw Error("unknown generator '" + spec + "'");
}

}  // namespace kflat
