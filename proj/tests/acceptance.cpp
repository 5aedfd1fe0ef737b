// One line per criterion: PASS/FAIL, what was checked, runtime.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "kflat/counting.hpp"
#include "kflat/deform.hpp"
#include "kflat/generators.hpp"
#include "kflat/homology.hpp"
#include "kflat/sv_predict.hpp"
#include "kflat/triangulation.hpp"

using namespace kflat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* what, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += "; over the time budget";
  }
  failures += !o.pass;
  std::printf("criterion %d %s: %s (%s; %.2f s)\n", id, o.pass ? "PASS" : "FAIL", what, o.detail.c_str(), secs);
  std::fflush(stdout);
}

bool is_prime(int k) {
  if (k < 2) return false;
  for (int d = 2; d * d <= k; ++d)
    if (k % d == 0) return false;
  return true;
}

long long lattice_points(long long r2, bool primitive) {
  long long n = 0;
  const long long R = static_cast<long long>(std::sqrt(static_cast<double>(r2))) + 1;
  for (long long a = -R; a <= R; ++a)
    for (long long b = -R; b <= R; ++b)
      if (a * a + b * b <= r2 && (a || b) && (!primitive || std::gcd(a, b) == 1)) ++n;
  return n;
}

const Cylinder& widest(const CylinderSet& cs) {
  const Cylinder* best = &cs.records.front();
  for (const auto& c : cs.records)
    if (c.height * c.circumference > best->height * best->circumference) best = &c;
  return *best;
}

Outcome riemann_hurwitz() {
  std::set<std::string> sigs;
  std::set<int> ks;
  Outcome o;
  int checked = 0;
  for (const auto& [name, s] : battery()) {
    const StratumSignature sig = stratum_signature(s);
    const CoverResult cr = holonomy_cover(s);
    if (!cr.primitive) continue;
    const StratumSignature want = predict_cover_signature(sig).as_signature(1);
    if (stratum_signature(cr.cover) != want) {
      o.pass = false;
      o.detail += name + " mismatch; ";
    }
    ++checked;
    sigs.insert(sig.to_string());
    ks.insert(s.k());
  }
  const bool pillow = sigs.count(make_signature(2, 0, {-1, -1, -1, -1}).to_string()) > 0;
  const bool spans = ks.count(2) && ks.count(3) && ks.count(5) && ks.count(7);
  if (sigs.size() < 20 || !pillow || !spans) o.pass = false;
  o.detail += std::to_string(checked) + " covers, " + std::to_string(sigs.size()) + " distinct signatures";
  return o;
}

Outcome cover_relations() {
  Outcome o;
  std::ostringstream d;
  const std::pair<FlatSurface, std::vector<double>> cases[] = {
      {pillowcase(), {1.5, 3, 4.5, 6, 7.5, 9, 10.5, 12, 13.5, 15}},
      {equilateral_k3(), {1.2, 2, 2.8, 3.6, 4.4, 5.2, 6, 6.8, 7.6, 8.4}},
  };
  for (const auto& [s, grid] : cases) {
    const FlatSurface base = delaunay_triangulation(s);
    const CoverRelationReport r = cover_relation_report(base, holonomy_cover(base), grid);
    for (const auto& f : r.failures) d << f << "; ";
    o.pass = o.pass && r.ok() && r.rows.size() == 10;
    const double rel = std::abs(r.area_cover - r.k * r.area_base) / (r.k * r.area_base);
    o.pass = o.pass && rel <= 1e-9;
    d << "k=" << r.k << " N_sc(cover)=" << r.rows.back().cover_sc << " N_cyl(cover)=" << r.rows.back().cover_cyl
      << " at L=" << grid.back() << ", area rel err " << rel << "; ";
  }
  o.detail = d.str();
  o.detail.resize(o.detail.size() - 2);
  return o;
}

Outcome torus_oracle() {
  const FlatSurface t = torus({1, 0}, {0, 1});
  const CylinderSet cs = enumerate_cylinders(t, 20);
  Outcome o;
  int checked = 0;
  for (long long r2 = 0; r2 <= 400; ++r2) {
    const double L = r2 ? std::sqrt(static_cast<double>(r2)) : 0.5;
    const long long sc = count(cs.saddles.spectrum, L).N, cyl = count(cs.spectrum, L).N;
    const long long want = lattice_points(r2, true);
    if (sc != want || 2 * cyl != want) {
      if (o.pass) o.detail = "first mismatch at L^2=" + std::to_string(r2) + "; ";
      o.pass = false;
    }
    ++checked;
  }
  if (!cs.diagnostics.empty()) o.pass = false;
  o.detail += std::to_string(checked) + " radii, N_sc(20)=" + std::to_string(count(cs.saddles.spectrum, 20).N) +
              " N_cyl(20)=" + std::to_string(count(cs.spectrum, 20).N);
  return o;
}

Outcome cesaro() {
  Outcome o;
  std::ostringstream d;
  const double L = std::log(1000.0);
  for (double c : {1.0, 4.0, 10.0}) {
    const double est = cesaro_average(quadratic_spectrum(c, 1000), L);
    const double rel = std::abs(est - c) / c;
    o.pass = o.pass && rel <= 0.01;
    d << "c=" << c << " estimate " << est << " (rel err " << rel << "); ";
  }
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double Lr = std::uniform_real_distribution<double>(0.5, 5)(rng);
    LengthSpectrum s;
    s.cutoff = std::exp(Lr);
    const int n = std::uniform_int_distribution<int>(1, 300)(rng);
    for (int i = 0; i < n; ++i) s.entries.emplace_back(std::uniform_real_distribution<double>(0.3, s.cutoff)(rng), i);
    std::sort(s.entries.begin(), s.entries.end());
    const double a = cesaro_average(s, Lr), b = cesaro_by_quadrature(s, Lr);
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
  }
  o.pass = o.pass && worst <= 1e-6;
  d << "quadrature worst rel diff " << worst << " over 100 spectra";
  o.detail = d.str();
  return o;
}

Outcome eigenspaces() {
  Outcome o;
  int checked = 0;
  for (const auto& [name, s] : battery()) {
    if (!is_prime(s.k())) continue;
    const CoverResult cr = holonomy_cover(s);
    if (!cr.primitive) continue;
    const StratumSignature sig = stratum_signature(s);
    const auto mult = eigenspace_multiplicities(deck_action(cr, h1_basis(cr.cover)), s.k());
    const int got_k = mult.count(s.k()) ? mult.at(s.k()) : 0, got_1 = mult.count(1) ? mult.at(1) : 0;
    if (got_k != expected_primitive_eigenspace_dimension(sig) || got_1 != 2 * sig.g) {
      o.pass = false;
      o.detail += name + " Phi_k " + std::to_string(got_k) + " Phi_1 " + std::to_string(got_1) + "; ";
    }
    ++checked;
  }
  o.detail += std::to_string(checked) + " covers with prime k";
  return o;
}

Outcome deformation() {
  Outcome o;
  std::ostringstream d;
  int twists = 0;
  double worst_area = 0;
  for (const FlatSurface& s : {torus({1, 0}, {0.3, 1.1}), regular_ngon(8), pillowcase()}) {
    const auto cs = enumerate_cylinders(s, 4);
    for (std::size_t i = 0; i < std::min<std::size_t>(cs.records.size(), 4); ++i) {
      const Cylinder& c = cs.records[i];
      const DeformResult r = cylinder_shear(s, c, c.circumference / c.height);
      if (!are_translation_equivalent(r.surface, s)) {
        o.pass = false;
        d << "full twist not equivalent; ";
      }
      ++twists;
    }
  }
  const FlatSurface oct = regular_ngon(8);
  const Cylinder c = widest(enumerate_cylinders(oct, 4));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pick(-1, 1);
  int composed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = pick(rng) * c.circumference / c.height, b = pick(rng) * c.circumference / c.height;
    const DeformResult first = cylinder_shear(oct, c, a);
    const DeformResult both = cylinder_shear(first.surface, first.cylinder, b);
    const DeformResult direct = cylinder_shear(oct, c, a + b);
    composed += are_translation_equivalent(both.surface, direct.surface);
    for (const FlatSurface* x : {&first.surface, &both.surface, &direct.surface})
      worst_area = std::max(worst_area, std::abs(area(*x) - area(oct)) / area(oct));
  }
  o.pass = o.pass && composed == 50 && worst_area <= 1e-12;
  d << twists << " full twists, " << composed << "/50 compositions, worst area rel err " << worst_area;
  o.detail = d.str();
  return o;
}

Outcome sv_algebra() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> n(0, 60);
  double worst_ratio = 0, worst_sum = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n1 = n(rng), n2 = n(rng);
    const double ratio = c_envelope(n1, n2) / c_simple(n1, n2), want = (n1 + 2.0) * (n2 + 2.0) / 2;
    worst_ratio = std::max(worst_ratio, std::abs(ratio - want) / want);
    const int m = n1 + n2 + 4;
    const double closed = 0.5 * m * (m - 1) / (2 * std::numbers::pi * std::numbers::pi) *
                          (1 + 4 / ((n1 + 2.0) * (n2 + 2.0)));
    worst_sum = std::max(worst_sum, std::abs(2 * c_simple(n1, n2) + c_envelope(n1, n2) - closed) / closed);
  }
  // "exactly" up to one rounding of the division
  o.pass = worst_ratio <= 4e-16 && worst_sum <= 1e-12;
  std::ostringstream d;
  d << "ratio worst rel err " << worst_ratio << ", sum worst rel err " << worst_sum;
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  criterion(1, "holonomy cover signatures match Riemann-Hurwitz", 60, riemann_hurwitz);
  criterion(2, "cover counting relations and area on pillowcase and the k=3 example", 300, cover_relations);
  criterion(3, "unit torus counts match the lattice for L <= 20", 120, torus_oracle);
  criterion(4, "Cesaro estimator on floor(c t^2) and against quadrature", 60, cesaro);
  criterion(5, "deck eigenspace dimensions on prime-k covers", 120, eigenspaces);
  criterion(6, "cylinder full twist, area and shear composition", 120, deformation);
  criterion(7, "Siegel-Veech constant algebra", 1, sv_algebra);
  std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
