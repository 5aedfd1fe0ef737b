#include <cmath>

#include "doctest.h"
#include "kflat/generators.hpp"
#include "kflat/surface_io.hpp"
#include "kflat/triangulation.hpp"

using namespace kflat;

namespace {

bool has_issue(const ValidationReport& r, const std::string& needle) {
  for (const auto& s : r.issues)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("unit square torus") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  CHECK(validate(t).ok());
  const auto sing = singularities(t);
  REQUIRE(sing.entries.size() == 1);
  CHECK(sing.entries[0].order == 0);
  CHECK(sing.entries[0].cone_angle == doctest::Approx(kTwoPi));
  CHECK(genus(t) == 1);
  CHECK(area(t) == doctest::Approx(1.0));
  CHECK(stratum_signature(t) == make_signature(1, 1, {0}));
}

TEST_CASE("pillowcase") {
  const FlatSurface p = pillowcase();
  CHECK(validate(p).ok());
  CHECK(genus(p) == 0);
  CHECK(area(p) == doctest::Approx(2.0));
  const auto sing = singularities(p);
  REQUIRE(sing.entries.size() == 4);
  for (const auto& e : sing.entries) {
    CHECK(e.order == -1);
    CHECK(e.cone_angle == doctest::Approx(std::numbers::pi));
  }
  CHECK(stratum_signature(p).to_string() == "k=2 g=0 mu=-1,-1,-1,-1");
}

TEST_CASE("regular octagon") {
  const FlatSurface o = regular_ngon(8);
  CHECK(validate(o).ok());
  const auto sing = singularities(o);
  REQUIRE(sing.entries.size() == 1);
  CHECK(sing.entries[0].order == 2);
  CHECK(sing.entries[0].cone_angle == doctest::Approx(3 * kTwoPi));
  CHECK(genus(o) == 2);
  CHECK(area(o) == doctest::Approx(2 * (1 + std::sqrt(2.0))));
  CHECK(stratum_signature(o) == make_signature(1, 2, {2}));
}

TEST_CASE("validation failures") {
  SUBCASE("vector mismatch") {
    Polygon p{{{0, 0}, {1, 0}, {1.1, 1}, {0, 1}}};
    FlatSurface s(1, {p}, {{{0, 0}, {0, 2}, 0}, {{0, 1}, {0, 3}, 0}});
    CHECK(has_issue(validate(s), "edge vector mismatch"));
  }
  SUBCASE("unglued edge") {
    Polygon p{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    FlatSurface s(1, {p}, {{{0, 0}, {0, 2}, 0}});
    CHECK(has_issue(validate(s), "unglued edge"));
  }
  SUBCASE("non-simple polygon") {
    Polygon p{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
    FlatSurface s(1, {p}, {{{0, 0}, {0, 2}, 0}, {{0, 1}, {0, 3}, 0}});
    CHECK(has_issue(validate(s), "not simple"));
  }
  SUBCASE("disconnected") {
    const FlatSurface a = torus({1, 0}, {0, 1});
    Polygon sq = a.polygon(0);
    FlatSurface s(1, {sq, sq},
                  {{{0, 0}, {0, 2}, 0}, {{0, 1}, {0, 3}, 0}, {{1, 0}, {1, 2}, 0}, {{1, 1}, {1, 3}, 0}});
    CHECK(has_issue(validate(s), "disconnected"));
  }
}

TEST_CASE("signature checks") {
  CHECK_THROWS_WITH(make_signature(3, 1, {1, 1}), "inconsistent signature");
  CHECK_THROWS(make_signature(3, 1, {3, -3}));
  CHECK(make_signature(3, 1, {-1, 1}).mu == std::vector<int>{1, -1});
}

TEST_CASE("surface format round trip") {
  const std::string text =
      "# unit square\n"
      "k 1\n"
      "polygon S\n"
      "v 0 0\nv 1 0\nv 1 1\nv 0 1\n"
      "glue S.0 S.2 rot 0\n"
      "glue S.1 S.3 rot 0\n";
  const FlatSurface s = parse_surface_string(text);
  CHECK(validate(s).ok());
  const FlatSurface r = parse_surface_string(surface_to_string(pillowcase()));
  CHECK(validate(r).ok());
  CHECK(stratum_signature(r) == stratum_signature(pillowcase()));
  CHECK(parse_number("1/3") == doctest::Approx(1.0 / 3));
  CHECK_THROWS(parse_surface_string("k 1\npolygon A\nv 0 x\n"));
  CHECK(parse_signature("k=3 g=1 mu=2,-2") == make_signature(3, 1, {2, -2}));
}

TEST_CASE("doubled polygons and shipped examples") {
  const FlatSurface t = doubled_polygon(3, angle_polygon(3, {1, 1, 1}, {1}));
  CHECK(validate(t).ok());
  CHECK(stratum_signature(t) == make_signature(3, 0, {-2, -2, -2}));
  const FlatSurface e = equilateral_k3();
  CHECK(validate(e).ok());
  CHECK(stratum_signature(e) == make_signature(3, 1, {2, -2}));
  const FlatSurface h = hyperelliptic_k6_octagon();
  CHECK(validate(h).ok());
  CHECK(stratum_signature(h) == make_signature(6, 0, {5, 1, -3, -3, -3, -3, -3, -3}));
}

TEST_CASE("Delaunay triangulation") {
  for (const FlatSurface& s : {torus({1, 0}, {0, 1}), torus({1, 0}, {3.7, 0.4}), regular_ngon(8), pillowcase(),
                               equilateral_k3(), hyperelliptic_k6_octagon()}) {
    const FlatSurface d = delaunay_triangulation(s);
    CHECK(validate(d).ok());
    CHECK(is_delaunay(d));
    CHECK(area(d) == doctest::Approx(area(s)));
    CHECK(stratum_signature(d) == stratum_signature(s));
    for (const auto& p : d.polygons()) CHECK(p.size() == 3);
  }
  const FlatSurface once = delaunay_triangulation(torus({1, 0}, {0, 1}));
  CHECK(are_translation_equivalent(once, delaunay_triangulation(once)));
}

TEST_CASE("translation equivalence") {
  const FlatSurface sq = torus({1, 0}, {0, 1});
  CHECK(are_translation_equivalent(sq, sq));
  CHECK(are_translation_equivalent(sq, torus({1, 0}, {1, 1})));
  CHECK(are_translation_equivalent(sq, torus({0, 1}, {-1, 0})));
  CHECK_FALSE(are_translation_equivalent(sq, torus({2, 0}, {0, 1})));
  CHECK_FALSE(are_translation_equivalent(torus({1, 0}, {0.3, 1}), sq));
  const FlatSurface oct = regular_ngon(8);
  CHECK(are_translation_equivalent(oct, delaunay_triangulation(oct)));
  const FlatSurface p = pillowcase();
  FlatSurface swapped(2, {p.polygon(1), p.polygon(0)},
                      {{{1, 1}, {0, 3}, 0}, {{0, 1}, {1, 3}, 0}, {{1, 0}, {0, 0}, 1}, {{1, 2}, {0, 2}, 1}});
  CHECK(validate(swapped).ok());
  CHECK(are_translation_equivalent(p, swapped));
  CHECK(are_translation_equivalent(equilateral_k3(), rotated(equilateral_k3(), root_of_unity(1, 3))));
}
