#include <cmath>
#include <random>

#include "doctest.h"
#include "kflat/deform.hpp"
#include "kflat/generators.hpp"
#include "kflat/triangulation.hpp"

using namespace kflat;

namespace {

const Cylinder& widest(const CylinderSet& cs) {
  const Cylinder* best = &cs.records.front();
  for (const auto& c : cs.records)
    if (c.height * c.circumference > best->height * best->circumference) best = &c;
  return *best;
}

}  // namespace

TEST_CASE("trivial shear and full twist give the same surface") {
  for (const FlatSurface& s : {torus({1, 0}, {0.3, 1.1}), regular_ngon(8), pillowcase()}) {
    const auto cs = enumerate_cylinders(s, 4);
    REQUIRE(!cs.records.empty());
    for (std::size_t i = 0; i < std::min<std::size_t>(cs.records.size(), 4); ++i) {
      const Cylinder& c = cs.records[i];
      CAPTURE(i);
      const DeformResult zero = cylinder_shear(s, c, 0);
      CHECK(are_translation_equivalent(zero.surface, s));
      const DeformResult twist = cylinder_shear(s, c, c.circumference / c.height);
      CHECK(are_translation_equivalent(twist.surface, s));
      CHECK(area(twist.surface) == doctest::Approx(area(s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("cubic differential cylinders") {
  const FlatSurface s = equilateral_k3();
  int embedded = 0, immersed = 0;
  for (const auto& c : enumerate_cylinders(s, 3).records) {
    try {
      const DeformResult d = cylinder_shear(s, c, c.circumference / c.height);
      CHECK(are_translation_equivalent(d.surface, s));
      ++embedded;
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "cylinder is not embedded");
      ++immersed;
    }
  }
  CHECK(embedded > 0);
  CHECK(immersed > 0);
}

TEST_CASE("shears compose") {
  const FlatSurface s = regular_ngon(8);
  const Cylinder c = widest(enumerate_cylinders(s, 4));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> t(-0.7, 0.7);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = t(rng) * c.circumference / c.height, b = t(rng) * c.circumference / c.height;
    const DeformResult first = cylinder_shear(s, c, a);
    const DeformResult both = cylinder_shear(first.surface, first.cylinder, b);
    CHECK(are_translation_equivalent(both.surface, cylinder_shear(s, c, a + b).surface));
    CHECK(area(both.surface) == doctest::Approx(area(s)).epsilon(1e-12));
  }
}

TEST_CASE("half shear of the square torus") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  const auto cs = enumerate_cylinders(t, 1);
  REQUIRE(cs.records.size() == 2);
  const DeformResult d = cylinder_shear(t, cs.records.front(), 0.5);
  CHECK(are_translation_equivalent(d.surface, torus({1, 0}, {0.5, 1})) !=
        are_translation_equivalent(d.surface, t));
  const auto before = enumerate_saddle_connections(t, 1.2), after = enumerate_saddle_connections(d.surface, 1.2);
  CHECK(before.records.size() != after.records.size());
}

TEST_CASE("stretch") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  for (const auto& c : enumerate_cylinders(t, 1).records) {
    const DeformResult d = cylinder_stretch(t, c, 2);
    const bool horizontal = std::abs(c.direction.y) < 1e-12;
    CHECK(are_translation_equivalent(d.surface, horizontal ? torus({1, 0}, {0, 2}) : torus({2, 0}, {0, 1})));
    CHECK(d.cylinder.height == doctest::Approx(2));
  }
  const FlatSurface s = regular_ngon(8);
  const Cylinder c = widest(enumerate_cylinders(s, 4));
  const DeformResult d = cylinder_stretch(s, c, 1.7);
  CHECK(area(d.surface) == doctest::Approx(area(s) + 0.7 * c.height * c.circumference).epsilon(1e-12));
  CHECK(are_translation_equivalent(cylinder_stretch(d.surface, d.cylinder, 1 / 1.7).surface, s));
  CHECK_THROWS_WITH(cylinder_stretch(s, c, 0), "would collapse");
  CHECK_THROWS_WITH(cylinder_stretch(s, c, 0.01), "collapse not supported");
  Cylinder bad = c;
  bad.core_point = bad.core_point + Vec2{0.013, 0.021};
  bad.direction = Vec2{std::cos(0.1), std::sin(0.1)};
  CHECK_THROWS_WITH(cylinder_shear(s, bad, 0.1), "invalid cylinder reference");
}

TEST_CASE("perturbation stays in the stratum") {
  for (const FlatSurface& s : {regular_ngon(8), equilateral_k3(), pillowcase()}) {
    const double eps = systole(s) / 20;
    const FlatSurface a = perturb_in_stratum(s, eps, 7), b = perturb_in_stratum(s, eps, 7);
    CHECK(stratum_signature(a) == stratum_signature(s));
    CHECK(validate(a).ok());
    double worst = 0, moved = 0;
    for (int p = 0; p < s.polygon_count(); ++p)
      for (int i = 0; i < s.polygon(p).size(); ++i) {
        const double d = (a.polygon(p).vertex(i) - s.polygon(p).vertex(i)).norm();
        worst = std::max(worst, d);
        moved += d;
        CHECK(a.polygon(p).vertex(i).x == b.polygon(p).vertex(i).x);
        CHECK(a.polygon(p).vertex(i).y == b.polygon(p).vertex(i).y);
      }
    CHECK(worst <= eps * (1 + 1e-12));
    CHECK(moved > 0);
  }
  CHECK_THROWS_WITH(perturb_in_stratum(regular_ngon(8), 1, 1), "eps must be below systole/10");
  CHECK(systole(torus({1, 0}, {0, 1})) == doctest::Approx(1));
}
