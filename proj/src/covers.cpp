#include "kflat/covers.hpp"

#include <algorithm>
#include <numeric>

namespace kflat {

int DeckMap::apply(int polygon, int times) const {
  for (int i = 0; i < times; ++i) polygon = perm[polygon];
  return polygon;
}

CoverSignaturePrediction predict_intermediate_signature(const StratumSignature& sig, int d) {
  const int k = sig.k;
  if (d < 1 || k % d) throw Error("invalid cover degree");
  const int kk = k / d;
  CoverSignaturePrediction out;
  long ramification = 0;
  for (int m : sig.mu) {
    const int g = std::gcd(m, d);
    ramification += d - g;
    for (int i = 0; i < g; ++i) out.mu_hat.push_back((m + k) / g - kk);
  }
  // Riemann-Hurwitz for a cyclic cover branched only over the singularities
  const long chi2 = static_cast<long>(d) * (2L * sig.g - 2L) + ramification;
  if (chi2 % 2) throw Error("inconsistent signature");
  out.g_hat = static_cast<int>(chi2 / 2 + 1);
  std::sort(out.mu_hat.begin(), out.mu_hat.end(), std::greater<>());
  const long sum = std::accumulate(out.mu_hat.begin(), out.mu_hat.end(), 0L);
  if (sum != static_cast<long>(kk) * (2L * out.g_hat - 2L)) throw Error("inconsistent signature");
  return out;
}

CoverSignaturePrediction predict_cover_signature(const StratumSignature& sig) {
  return predict_intermediate_signature(sig, sig.k);
}

CoverResult intermediate_cover(const FlatSurface& s, int d) {
  const int k = s.k();
  if (d < 1 || k % d) throw Error("invalid cover degree");
  const int kk = k / d;
  const int np = s.polygon_count();
  std::vector<Polygon> polys;
  std::vector<std::string> names;
  std::vector<SheetRef> sheet_of;
  auto id = [np](int p, int sheet) { return sheet * np + p; };
  for (int sh = 0; sh < d; ++sh) {
    const Vec2 u = root_of_unity(sh, k);
    for (int p = 0; p < np; ++p) {
      Polygon q = s.polygon(p);
      for (auto& v : q.vertices) v = cmul(u, v);
      polys.push_back(std::move(q));
      names.push_back(d == 1 ? s.names()[p] : s.names()[p] + "_s" + std::to_string(sh));
      sheet_of.push_back({p, sh});
    }
  }
  std::vector<Gluing> glue;
  for (int sh = 0; sh < d; ++sh) {
    for (const Gluing& g : s.gluings()) {
      const int t = mod(sh - g.rot, d);
      const int lift = (t + g.rot - sh) / d;  // exact: t + rot - sh is a multiple of d
      glue.push_back({{id(g.a.polygon, sh), g.a.edge}, {id(g.b.polygon, t), g.b.edge}, mod(lift, kk)});
    }
  }
  CoverResult cr;
  cr.degree = d;
  cr.cover = FlatSurface(kk, std::move(polys), std::move(glue), std::move(names), s.tolerance());
  cr.sheet_of = std::move(sheet_of);
  cr.deck.order = d;
  cr.deck.k = k;
  cr.deck.perm.resize(np * d);
  cr.deck.rot.resize(np * d);
  for (int sh = 0; sh < d; ++sh)
    for (int p = 0; p < np; ++p) {
      cr.deck.perm[id(p, sh)] = id(p, (sh + 1) % d);
      cr.deck.rot[id(p, sh)] = sh + 1 == d ? 1 - d : 1;
    }
  polygon_components(cr.cover, &cr.component_count);
  cr.primitive = cr.component_count == 1;
  return cr;
}

CoverResult holonomy_cover(const FlatSurface& s) { return intermediate_cover(s, s.k()); }

CheckReport deck_generator_checks(const CoverResult& cr) {
  CheckReport rep;
  const FlatSurface& c = cr.cover;
  const DeckMap& tau = cr.deck;
  const int n = c.polygon_count();
  if (static_cast<int>(tau.perm.size()) != n || static_cast<int>(tau.rot.size()) != n) {
    rep.failures.push_back("deck map size does not match the cover");
    return rep;
  }
  std::vector<char> hit(n, 0);
  for (int p = 0; p < n; ++p) {
    if (tau.perm[p] < 0 || tau.perm[p] >= n || hit[tau.perm[p]]) {
      rep.failures.push_back("deck map is not a permutation");
      return rep;
    }
    hit[tau.perm[p]] = 1;
  }
  for (int p = 0; p < n; ++p)
    if (tau.apply(p, tau.order) != p) {
      rep.failures.push_back("tau^" + std::to_string(tau.order) + " != id at " + c.names()[p]);
      break;
    }
  const Tolerance& tol = c.tolerance();
  const bool holonomy = c.k() == 1;
  const Vec2 zeta = root_of_unity(1, tau.k);
  for (int p = 0; p < n; ++p) {
    const int q = tau.perm[p];
    const Polygon& a = c.polygon(p);
    const Polygon& b = c.polygon(q);
    if (a.size() != b.size()) {
      rep.failures.push_back("tau changes the shape of " + c.names()[p]);
      continue;
    }
    const Vec2 u = root_of_unity(tau.rot[p], tau.k);
    for (int e = 0; e < a.size(); ++e) {
      if (!tol.near(b.edge(e), cmul(u, a.edge(e)))) {
        rep.failures.push_back("tau is not an isometry on " + c.names()[p] + "." + std::to_string(e));
        break;
      }
      if (holonomy && !tol.near(b.edge(e), cmul(zeta, a.edge(e)))) {
        rep.failures.push_back("period of " + c.names()[p] + "." + std::to_string(e) + " not rotated by zeta");
        break;
      }
      const Partner& pa = c.partner({p, e});
      const Partner& pb = c.partner({q, e});
      if (pb.other.polygon != tau.perm[pa.other.polygon] || pb.other.edge != pa.other.edge) {
        rep.failures.push_back("tau does not respect the gluing at " + c.names()[p] + "." + std::to_string(e));
        break;
      }
    }
  }
  return rep;
}

HyperellipticCase parse_case(const std::string& s) {
  if (s == "a") return HyperellipticCase::a;
  if (s == "b") return HyperellipticCase::b;
  if (s == "c") return HyperellipticCase::c;
  throw Error("unknown hyperelliptic case '" + s + "'");
}

const char* case_name(HyperellipticCase c) {
  switch (c) {
    case HyperellipticCase::a: return "a";
    case HyperellipticCase::b: return "b";
    case HyperellipticCase::c: return "c";
  }
  return "?";
}

namespace {

bool same_multiset(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

QuadraticTargetSignature hyperelliptic_target_stratum(const StratumSignature& sig, HyperellipticCase which,
                                                      const std::vector<int>& params) {
  const int k = sig.k, g = sig.g;
  std::vector<int> mu;
  for (int m : sig.mu)
    if (m != 0) mu.push_back(m);
  const auto bad = [] { return Error("not a hyperelliptic signature"); };
  QuadraticTargetSignature out;
  out.which = which;
  int poles = 0;
  switch (which) {
    case HyperellipticCase::a: {
      if (mu.size() != 2 || mu[0] % 2 || mu[1] % 2) throw bad();
      int m1 = mu[0] / 2, m2 = mu[1] / 2;
      if (!params.empty()) {
        if (params.size() != 2 || !same_multiset({2 * params[0], 2 * params[1]}, mu)) throw bad();
        m1 = params[0];
        m2 = params[1];
      }
      out.n1 = 2 * m1 + k - 2;
      out.n2 = 2 * m2 + k - 2;
      poles = 2 * g * k;
      break;
    }
    case HyperellipticCase::b: {
      if (mu.size() != 3) throw bad();
      int m = 0, l = 0;
      if (!params.empty()) {
        if (params.size() != 2 || !same_multiset({2 * params[0], params[1], params[1]}, mu)) throw bad();
        m = params[0];
        l = params[1];
      } else {
        // the repeated entry is l; the remaining one must be even
        int found = 0;
        for (int i = 0; i < 3; ++i) {
          const int x = mu[i], y = mu[(i + 1) % 3], z = mu[(i + 2) % 3];
          if (y == z && x % 2 == 0) {
            if (found && (m != x / 2 || l != y)) throw Error("ambiguous hyperelliptic shape; pass m and l");
            m = x / 2;
            l = y;
            found = 1;
          }
        }
        if (!found) throw bad();
      }
      out.n1 = 2 * m + k - 2;
      out.n2 = 2 * l + 2 * k - 2;
      poles = 2 * g * k + k;
      break;
    }
    case HyperellipticCase::c: {
      if (mu.size() != 4) throw bad();
      std::vector<int> srt = mu;
      std::sort(srt.begin(), srt.end());
      int l1 = srt[0], l2 = srt[2];
      if (srt[0] != srt[1] || srt[2] != srt[3]) throw bad();
      if (!params.empty()) {
        if (params.size() != 2 || !same_multiset({params[0], params[0], params[1], params[1]}, mu)) throw bad();
        l1 = params[0];
        l2 = params[1];
      }
      out.n1 = 2 * l1 + 2 * k - 2;
      out.n2 = 2 * l2 + 2 * k - 2;
      poles = 2 * g * k + 2 * k;
      break;
    }
  }
  out.orders = {out.n1, out.n2};
  out.orders.insert(out.orders.end(), poles, -1);
  std::sort(out.orders.begin(), out.orders.end(), std::greater<>());
  if (std::accumulate(out.orders.begin(), out.orders.end(), 0) != -4)
    throw Error("target orders do not sum to -4");
  return out;
}

}  // namespace kflat
