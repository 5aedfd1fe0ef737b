#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "kflat/generators.hpp"
#include "kflat/geodesics.hpp"
#include "kflat/triangulation.hpp"

using namespace kflat;

namespace {

// primitive lattice vectors of length <= L
int lattice_sc(double L) {
  int n = 0;
  const int R = static_cast<int>(std::floor(L)) + 1;
  for (int a = -R; a <= R; ++a)
    for (int b = -R; b <= R; ++b)
      if (std::gcd(a, b) == 1 && a * a + b * b <= L * L + 1e-9) ++n;
  return n;
}

std::size_t count(const LengthSpectrum& s, double L) {
  std::size_t n = 0;
  for (const auto& e : s.entries) n += e.first <= L + 1e-9;
  return n;
}

}  // namespace

TEST_CASE("torus saddle connections against the lattice") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  const auto one = enumerate_saddle_connections(t, 1);
  CHECK(one.records.size() == 4);
  CHECK(enumerate_saddle_connections(t, 2.5).records.size() == 16);
  const auto big = enumerate_saddle_connections(t, 12, {true, 4});
  for (double L : {1.0, 1.5, 2.0, 3.3, 5.0, 7.1, 12.0}) {
    CAPTURE(L);
    CHECK(count(big.spectrum, L) == static_cast<std::size_t>(lattice_sc(L)));
  }
  CHECK(enumerate_saddle_connections(t, 12, {false, 1}).spectrum.entries.size() * 2 == big.records.size());
  CHECK(enumerate_saddle_connections(t, 0.9).records.empty());
  CHECK_THROWS_WITH(enumerate_saddle_connections(t, 0), "invalid cutoff");
  for (const auto& s : big.records) {
    CHECK(s.start == 0);
    CHECK(std::abs(s.length - s.holonomy.norm()) < 1e-12);
  }
}

TEST_CASE("torus cylinders against the lattice") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  const auto one = enumerate_cylinders(t, 1);
  REQUIRE(one.records.size() == 2);
  for (const auto& c : one.records) {
    CHECK(c.circumference == doctest::Approx(1));
    CHECK(c.height == doctest::Approx(1));
    CHECK(c.bottom.size() == 1);
    CHECK(c.top.size() == 1);
  }
  CHECK(enumerate_cylinders(t, std::sqrt(2.0) + 0.01).records.size() == 4);
  CHECK(enumerate_cylinders(t, 0.5).records.empty());
  const auto big = enumerate_cylinders(t, 8);
  CHECK(big.diagnostics.empty());
  for (double L : {1.0, 2.3, 4.0, 6.5, 8.0}) CHECK(count(big.spectrum, L) * 2 == static_cast<std::size_t>(lattice_sc(L)));
  for (const auto& c : big.records) CHECK(c.height * c.circumference == doctest::Approx(1));
}

TEST_CASE("spectrum does not depend on the presentation") {
  const FlatSurface a = torus({1, 0}, {0.3, 1.1});
  const FlatSurface b = torus({1, 0}, {1.3, 1.1});
  const auto sa = enumerate_saddle_connections(a, 6), sb = enumerate_saddle_connections(b, 6);
  REQUIRE(sa.records.size() == sb.records.size());
  for (std::size_t i = 0; i < sa.records.size(); ++i)
    CHECK(sa.records[i].length == doctest::Approx(sb.records[i].length));
  const FlatSurface oct = regular_ngon(8);
  const auto so = enumerate_saddle_connections(oct, 4), sr = enumerate_saddle_connections(rotated(oct, Vec2{std::cos(0.7), std::sin(0.7)}), 4);
  CHECK(so.records.size() == sr.records.size());
  CHECK(enumerate_cylinders(oct, 4).records.size() == enumerate_cylinders(rotated(oct, Vec2{std::cos(0.7), std::sin(0.7)}), 4).records.size());
}

TEST_CASE("pillowcase lift") {
  const FlatSurface base = delaunay_triangulation(pillowcase());
  const CoverResult cr = holonomy_cover(base);
  const LiftResult lift = lift_spectrum(cr, base, 3);
  CHECK(lift.report.ok());
  for (int s : lift.report.sc_orbit_sizes) CHECK(s == 2);
  for (int s : lift.report.cyl_orbit_sizes) CHECK(s == 2);
  const auto direct = enumerate_cylinders(base, 3);
  CHECK(direct.diagnostics.empty());
  CHECK(lift.report.cover_sc == 2 * static_cast<int>(direct.saddles.records.size()));
  CHECK(lift.report.cover_cyl == 2 * static_cast<int>(direct.records.size()));
  // the cover is the square torus of side 2 with four marked points
  CHECK(lift.report.cover_sc > 0);
}

TEST_CASE("trivial and cubic lifts") {
  const FlatSurface t = delaunay_triangulation(torus({1, 0}, {0.2, 1}));
  const LiftResult id = lift_spectrum(holonomy_cover(t), t, 4);
  CHECK(id.report.ok());
  CHECK(id.report.sc_orbits == id.report.cover_sc);
  const FlatSurface e = equilateral_k3();
  const auto sys = enumerate_saddle_connections(e, 10).records.front().length;
  const LiftResult lift = lift_spectrum(e, sys * 1.5);
  CHECK(lift.report.ok());
  for (int s : lift.report.sc_orbit_sizes) CHECK(s == 3);
  for (int s : lift.report.cyl_orbit_sizes) CHECK(s == 3);
  CHECK(lift.report.cover_sc == 3 * static_cast<int>(enumerate_saddle_connections(e, sys * 1.5).records.size()));
}

TEST_CASE("canonical cycles") {
  const FlatSurface t = delaunay_triangulation(regular_ngon(8));
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> tri(0, t.polygon_count() - 1), edge(0, 2), len(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<HalfEdgeRef> c(len(rng));
    for (auto& h : c) h = {tri(rng) % 2, edge(rng) % 2};  // small alphabet forces repeats
    std::vector<HalfEdgeRef> best = c, cur = c, rev;
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      best = std::min(best, cur);
    }
    for (auto h = c.rbegin(); h != c.rend(); ++h) rev.push_back(t.partner(*h).other);
    for (std::size_t i = 0; i < rev.size(); ++i) {
      std::rotate(rev.begin(), rev.begin() + 1, rev.end());
      best = std::min(best, rev);
    }
    CHECK(canonical_cycle(t, c) == best);
  }
}

TEST_CASE("cylinder boundaries") {
  for (const FlatSurface& s : {equilateral_k3(), regular_ngon(8), torus({1, 0}, {0.3, 1.1})}) {
    const auto cs = enumerate_cylinders(s, 3);
    const double total = area(cs.triangulated);
    for (const auto& c : cs.records) {
      double bottom = 0, top = 0;
      for (int id : c.bottom) bottom += cs.saddles.records.at(id).length;
      for (int id : c.top) top += cs.saddles.records.at(id).length;
      CHECK(bottom == doctest::Approx(c.circumference));
      CHECK(top == doctest::Approx(c.circumference));
      // a cylinder bounded by the same saddle connection on both sides fills the surface
      if (c.bottom == c.top) CHECK(c.height * c.circumference == doctest::Approx(total));
    }
  }
}
