#include <random>
#include <sstream>

#include "doctest.h"
#include "kflat/generators.hpp"
#include "kflat/homology.hpp"
#include "kflat/triangulation.hpp"

using namespace kflat;

namespace {

long long det(IntMatrix a) {
  // fraction-free Bareiss elimination
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  long long sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[r], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

CurvePath segment_loop(int polygon, Vec2 a, Vec2 b) { return CurvePath{{{polygon, a, b}}, true}; }

}  // namespace

TEST_CASE("torus homology") {
  const HomologyData h = h1_basis(torus({1, 0}, {0, 1}));
  CHECK(h.rank == 2);
  CHECK(h.intersection == IntMatrix{{0, 1}, {-1, 0}});
}

TEST_CASE("octagon and genus zero homology") {
  const HomologyData h = h1_basis(regular_ngon(8));
  CHECK(h.rank == 4);
  CHECK(det(h.intersection) == 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(h.intersection[i][j] == -h.intersection[j][i]);
  CHECK(h1_basis(pillowcase()).rank == 0);
  const HomologyData t = h1_basis(delaunay_triangulation(regular_ngon(8)));
  CHECK(t.rank == 4);
  CHECK(det(t.intersection) == 1);
}

TEST_CASE("characteristic polynomial and cyclotomics") {
  CHECK(characteristic_polynomial({{0, -1}, {1, 0}}) == std::vector<long long>{1, 0, 1});
  CHECK(characteristic_polynomial({{2, 1}, {1, 3}}) == std::vector<long long>{1, -5, 5});
  CHECK(characteristic_polynomial({}) == std::vector<long long>{1});
  CHECK(cyclotomic_polynomial(1) == std::vector<long long>{1, -1});
  CHECK(cyclotomic_polynomial(3) == std::vector<long long>{1, 1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
  DeckActionMatrix bad{{{2, 0}, {0, 1}}, {}};
  CHECK_THROWS_WITH(eigenspace_multiplicities(bad, 2), "action is not of order dividing k");
}

TEST_CASE("pillowcase deck action") {
  const CoverResult cr = holonomy_cover(pillowcase());
  const HomologyData h = h1_basis(cr.cover);
  const DeckActionMatrix T = deck_action(cr, h);
  CHECK(T.diagnostics.empty());
  CHECK(T.T == IntMatrix{{-1, 0}, {0, -1}});
  const auto mult = eigenspace_multiplicities(T, 2);
  CHECK(mult.at(2) == 2);
  CHECK(mult.at(1) == 0);
  CHECK(expected_primitive_eigenspace_dimension(stratum_signature(pillowcase())) == 2);
}

TEST_CASE("trivial deck action") {
  const FlatSurface oct = regular_ngon(8);
  const CoverResult cr = holonomy_cover(oct);
  const auto T = deck_action(cr, h1_basis(cr.cover));
  CHECK(T.T == IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(eigenspace_multiplicities(T, 1).at(1) == 4);
}

TEST_CASE("cubic example eigenspaces") {
  const FlatSurface e = equilateral_k3();
  const CoverResult cr = holonomy_cover(e);
  const HomologyData h = h1_basis(cr.cover);
  CHECK(h.rank == 6);
  const DeckActionMatrix T = deck_action(cr, h);
  CHECK(T.diagnostics.empty());
  const auto mult = eigenspace_multiplicities(T, 3);
  CHECK(mult.at(3) == 2);
  CHECK(mult.at(1) == 2);
  CHECK(expected_primitive_eigenspace_dimension(stratum_signature(e)) == 2);
}

TEST_CASE("battery eigenspaces for prime k") {
  for (const auto& [name, s] : battery()) {
    CAPTURE(name);
    const CoverResult cr = holonomy_cover(s);
    if (!cr.primitive) continue;
    const auto sig = stratum_signature(s);
    const auto T = deck_action(cr, h1_basis(cr.cover));
    CHECK(T.diagnostics.empty());
    const auto mult = eigenspace_multiplicities(T, s.k());
    CHECK(mult.at(1) == 2 * sig.g);
    bool prime = s.k() > 1;
    for (int d = 2; d < s.k(); ++d) prime = prime && s.k() % d;
    if (prime) CHECK(mult.at(s.k()) == expected_primitive_eigenspace_dimension(sig));
  }
}

TEST_CASE("curve index") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  const CurvePath horizontal = segment_loop(0, {0, 0.5}, {1, 0.5});
  const CurvePath vertical = segment_loop(0, {0.3, 0}, {0.3, 1});
  CHECK(curve_index(t, horizontal) == 0);
  CHECK(curve_index(t, vertical) == 0);
  CHECK(curve_crossings(t, horizontal).size() == 1);
  CHECK(curve_index(t, loop_around_singularity(t, 0, 0.1)) == 1);
  const FlatSurface oct = regular_ngon(8);
  CHECK(curve_index(oct, loop_around_singularity(oct, 0, 0.1)) == 3);
  const FlatSurface e = equilateral_k3();
  const auto sing = singularities(e);
  for (const auto& entry : sing.entries) {
    const CurvePath loop = loop_around_singularity(e, entry.id, 0.05);
    CHECK(curve_index(e, loop) == 3 + entry.order);
    CHECK(curve_index(e, reversed(loop)) == -(3 + entry.order));
  }
  const FlatSurface p = pillowcase();
  CHECK(curve_index(p, loop_around_singularity(p, 2, 0.1)) == 1);
  const FlatSurface h = hyperelliptic_k6_octagon();
  for (const auto& entry : singularities(h).entries)
    CHECK(curve_index(h, loop_around_singularity(h, entry.id, 0.02)) == 6 + entry.order);
  CHECK_THROWS_WITH(curve_index(t, segment_loop(0, {0, 0.5}, {0.7, 0.5})), doctest::Contains("do not connect"));
}

TEST_CASE("curve parsing and homology classes") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  std::istringstream in("# diagonal\nseg T 0 0.5 0.5 1\nseg T 0.5 0 1 0.5\n");
  const CurvePath diag = parse_curve(in, t);
  CHECK(curve_index(t, diag) == 0);
  const HomologyData h = h1_basis(t);
  const auto c = cycle_coordinates(h, chain_of_crossings(t, curve_crossings(t, diag)));
  const auto a = cycle_coordinates(h, chain_of_crossings(t, curve_crossings(t, segment_loop(0, {0, 0.5}, {1, 0.5}))));
  CHECK(std::abs(intersection_number(h, a, c)) == 1);
  CHECK(a == std::vector<long long>{1, 0});
}

TEST_CASE("rotation number") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  const CurvePath a = segment_loop(0, {0, 0.5}, {1, 0.5});
  const CurvePath b = segment_loop(0, {0.3, 0}, {0.3, 1});
  CHECK(rotation_number(t, a, b) == 0);
  CHECK_THROWS_WITH(rotation_number(t, a, a), "not a symplectic pair");
  CHECK(gcd_of_nonzero({2, 4, 2, -2}) == 2);
  CHECK(gcd_of_nonzero({0, 0, 0}) == 0);
  CHECK(gcd_of_nonzero({0, 3, 1, -1}) == 1);
}

TEST_CASE("symplectic basis") {
  for (const FlatSurface& s : {torus({1, 0}, {0, 1}), regular_ngon(8), regular_ngon(12), pillowcase()}) {
    const HomologyData h = h1_basis(s);
    const auto basis = symplectic_basis(h);
    CHECK(static_cast<int>(basis.size()) * 2 == h.rank);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        CHECK(intersection_number(h, basis[i].a, basis[j].b) == (i == j ? 1 : 0));
        CHECK(intersection_number(h, basis[i].a, basis[j].a) == 0);
        CHECK(intersection_number(h, basis[i].b, basis[j].b) == 0);
      }
  }
}

TEST_CASE("Arf parity") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  const CurvePath a = segment_loop(0, {0, 0.5}, {1, 0.5});
  const CurvePath b = segment_loop(0, {0.3, 0}, {0.3, 1});
  CHECK(arf_parity(t, {{a, b}}) == 1);
  CHECK_THROWS_WITH(arf_parity(t, {{a, a}}), "not symplectic mod 2");
  CHECK(spin_form(t).arf(symplectic_basis(spin_form(t).h)) == 1);

  const SpinForm f = spin_form(regular_ngon(8));
  auto basis = symplectic_basis(f.h);
  CHECK(f.arf(basis) == 1);
  // random symplectic transvections x -> x + <x,v> v keep the parity
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<long long> v(f.h.rank);
    for (auto& x : v) x = coef(rng);
    for (auto& p : basis) {
      const long long ca = intersection_number(f.h, p.a, v), cb = intersection_number(f.h, p.b, v);
      for (int i = 0; i < f.h.rank; ++i) {
        p.a[i] += ca * v[i];
        p.b[i] += cb * v[i];
      }
    }
    CHECK(f.arf(basis) == 1);
  }
  // the loop around the zero is null-homologous with odd index so q(0) = 0
  CHECK(f.q(std::vector<long long>(f.h.rank, 0)) == 0);
}
