#include "kflat/surface_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace kflat {

double parse_number(const std::string& token) {
  const auto slash = token.find('/');
  std::size_t used = 0;
  try {
    if (slash == std::string::npos) {
      const double v = std::stod(token, &used);
      if (used != token.size()) throw Error("bad number '" + token + "'");
      return v;
    }
    const std::string p = token.substr(0, slash), q = token.substr(slash + 1);
    const double num = std::stod(p, &used);
    if (used != p.size()) throw Error("bad number '" + token + "'");
    const double den = std::stod(q, &used);
    if (used != q.size() || den == 0.0) throw Error("bad number '" + token + "'");
    return num / den;
  } catch (const std::logic_error&) {
    throw Error("bad number '" + token + "'");
  }
}

namespace {

EdgeRef parse_edge_ref(const std::string& tok, const std::map<std::string, int>& index, int line) {
  const auto dot = tok.rfind('.');
  if (dot == std::string::npos) throw Error("line " + std::to_string(line) + ": expected <name>.<edge>");
  const auto it = index.find(tok.substr(0, dot));
  if (it == index.end()) throw Error("line " + std::to_string(line) + ": unknown polygon '" + tok.substr(0, dot) + "'");
  int e = -1;
  const std::string es = tok.substr(dot + 1);
  auto [ptr, ec] = std::from_chars(es.data(), es.data() + es.size(), e);
  if (ec != std::errc() || ptr != es.data() + es.size())
    throw Error("line " + std::to_string(line) + ": bad edge index");
  return {it->second, e};
}

}  // namespace

FlatSurface parse_surface(std::istream& in, Tolerance tol) {
  int k = 0;
  std::vector<Polygon> polys;
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<std::pair<std::string, int>> pending;  // glue lines resolved after all polygons
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "k") {
      if (!(ls >> k) || k < 1) throw Error("line " + std::to_string(lineno) + ": bad k");
    } else if (kw == "polygon") {
      std::string nm;
      if (!(ls >> nm)) throw Error("line " + std::to_string(lineno) + ": polygon needs a name");
      if (index.count(nm)) throw Error("line " + std::to_string(lineno) + ": duplicate polygon '" + nm + "'");
      index[nm] = static_cast<int>(polys.size());
      polys.emplace_back();
      names.push_back(nm);
    } else if (kw == "v") {
      if (polys.empty()) throw Error("line " + std::to_string(lineno) + ": vertex outside polygon");
      std::string xs, ys;
      if (!(ls >> xs >> ys)) throw Error("line " + std::to_string(lineno) + ": vertex needs x y");
      polys.back().vertices.push_back({parse_number(xs), parse_number(ys)});
    } else if (kw == "glue") {
      pending.emplace_back(line, lineno);
    } else {
      throw Error("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
    }
  }
  if (k < 1) throw Error("missing 'k' line");
  std::vector<Gluing> gluings;
  for (const auto& [text, ln] : pending) {
    std::istringstream ls(text);
    std::string kw, a, b, rotkw;
    int r = 0;
    if (!(ls >> kw >> a >> b >> rotkw >> r) || rotkw != "rot")
      throw Error("line " + std::to_string(ln) + ": expected glue A.i B.j rot r");
    gluings.push_back({parse_edge_ref(a, index, ln), parse_edge_ref(b, index, ln), r});
  }
  return FlatSurface(k, std::move(polys), std::move(gluings), std::move(names), tol);
}

FlatSurface parse_surface_string(const std::string& text, Tolerance tol) {
  std::istringstream in(text);
  return parse_surface(in, tol);
}

FlatSurface load_surface(const std::string& path, Tolerance tol) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_surface(in, tol);
}

void write_surface(std::ostream& out, const FlatSurface& s) {
  char buf[64];
  out << "k " << s.k() << "\n";
  for (int p = 0; p < s.polygon_count(); ++p) {
    out << "polygon " << s.names()[p] << "\n";
    for (const Vec2& v : s.polygon(p).vertices) {
      std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", v.x, v.y);
      out << buf;
    }
  }
  for (const Gluing& g : s.gluings()) {
    out << "glue " << s.names()[g.a.polygon] << "." << g.a.edge << " " << s.names()[g.b.polygon] << "."
        << g.b.edge << " rot " << g.rot << "\n";
  }
}

std::string surface_to_string(const FlatSurface& s) {
  std::ostringstream os;
  write_surface(os, s);
  return os.str();
}

void save_surface(const std::string& path, const FlatSurface& s) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_surface(out, s);
}

StratumSignature parse_signature(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  int k = -1, g = -1;
  std::vector<int> mu;
  bool have_mu = false;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error("bad signature token '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "k") {
        k = std::stoi(val);
      } else if (key == "g") {
        g = std::stoi(val);
      } else if (key == "mu") {
        have_mu = true;
        std::istringstream vs(val);
        std::string item;
        while (std::getline(vs, item, ','))
          if (!item.empty()) mu.push_back(std::stoi(item));
      } else {
        throw Error("bad signature key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error("bad signature value '" + tok + "'");
    }
  }
  if (k < 0 || g < 0 || !have_mu) throw Error("signature needs k=, g= and mu=");
  return make_signature(k, g, std::move(mu));
}

}  // namespace kflat
