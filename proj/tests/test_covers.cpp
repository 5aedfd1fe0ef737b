#include "doctest.h"
#include "kflat/covers.hpp"
#include "kflat/generators.hpp"
#include "kflat/triangulation.hpp"

using namespace kflat;

TEST_CASE("cover signature prediction") {
  auto p = predict_cover_signature(make_signature(2, 0, {-1, -1, -1, -1}));
  CHECK(p.g_hat == 1);
  CHECK(p.mu_hat == std::vector<int>{0, 0, 0, 0});
  p = predict_cover_signature(make_signature(3, 1, {1, -1}));
  CHECK(p.g_hat == 3);
  CHECK(p.mu_hat == std::vector<int>{3, 1});
  p = predict_cover_signature(make_signature(3, 3, {12}));
  CHECK(p.g_hat == 7);
  CHECK(p.mu_hat == std::vector<int>{4, 4, 4});
  p = predict_cover_signature(make_signature(3, 1, {2, -2}));
  CHECK(p.g_hat == 3);
  CHECK(p.mu_hat == std::vector<int>{4, 0});
}

TEST_CASE("intermediate cover prediction limits") {
  const auto sig = make_signature(6, 0, {5, 1, -3, -3, -3, -3, -3, -3});
  const auto one = predict_intermediate_signature(sig, 1);
  CHECK(one.g_hat == 0);
  CHECK(one.mu_hat == sig.mu);
  const auto full = predict_intermediate_signature(sig, 6);
  const auto hol = predict_cover_signature(sig);
  CHECK(full.g_hat == hol.g_hat);
  CHECK(full.mu_hat == hol.mu_hat);
  const auto two = predict_intermediate_signature(sig, 2);
  CHECK(two.g_hat == 3);
  CHECK(two.mu_hat == std::vector<int>{8, 4, 0, 0, 0, 0, 0, 0});
  const auto pc = predict_intermediate_signature(make_signature(2, 0, {-1, -1, -1, -1}), 2);
  CHECK(pc.mu_hat == std::vector<int>{0, 0, 0, 0});
  CHECK_THROWS_WITH(predict_intermediate_signature(sig, 4), "invalid cover degree");
}

TEST_CASE("pillowcase holonomy cover") {
  const FlatSurface base = pillowcase();
  const CoverResult cr = holonomy_cover(base);
  CHECK(cr.primitive);
  CHECK(cr.cover.k() == 1);
  CHECK(cr.cover.polygon_count() == 4);
  CHECK(validate(cr.cover).ok());
  CHECK(stratum_signature(cr.cover) == make_signature(1, 1, {0, 0, 0, 0}));
  CHECK(area(cr.cover) == doctest::Approx(2 * area(base)));
  CHECK(deck_generator_checks(cr).ok());
  CHECK(cr.deck.order == 2);
}

TEST_CASE("trivial cover") {
  const FlatSurface t = torus({1, 0}, {0, 1});
  const CoverResult cr = holonomy_cover(t);
  CHECK(cr.cover.polygon_count() == 1);
  CHECK(cr.deck.perm == std::vector<int>{0});
  CHECK(deck_generator_checks(cr).ok());
  CHECK(are_translation_equivalent(cr.cover, t));
  CHECK(are_translation_equivalent(intermediate_cover(pillowcase(), 1).cover, pillowcase()));
}

TEST_CASE("cubic example cover") {
  const FlatSurface e = equilateral_k3();
  const CoverResult cr = holonomy_cover(e);
  CHECK(cr.primitive);
  CHECK(validate(cr.cover).ok());
  CHECK(stratum_signature(cr.cover) == predict_cover_signature(stratum_signature(e)).as_signature());
  CHECK(deck_generator_checks(cr).ok());
  CHECK(are_translation_equivalent(cr.cover, intermediate_cover(e, 3).cover));
}

TEST_CASE("corrupted deck map is caught") {
  CoverResult cr = holonomy_cover(equilateral_k3());
  std::swap(cr.deck.perm[0], cr.deck.perm[1]);
  const auto rep = deck_generator_checks(cr);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& f : rep.failures) found = found || f.find("tau^3 != id") != std::string::npos;
  CHECK(found);
}

TEST_CASE("intermediate cover of the sextic octagon") {
  const FlatSurface h = hyperelliptic_k6_octagon();
  const CoverResult cr = intermediate_cover(h, 2);
  CHECK(cr.primitive);
  CHECK(cr.cover.k() == 3);
  CHECK(validate(cr.cover).ok());
  CHECK(stratum_signature(cr.cover) == make_signature(3, 3, {8, 4, 0, 0, 0, 0, 0, 0}));
  CHECK(deck_generator_checks(cr).ok());
  CHECK_THROWS_WITH(intermediate_cover(h, 4), "invalid cover degree");
}

TEST_CASE("battery covers match Riemann-Hurwitz") {
  for (const auto& [name, s] : battery()) {
    CAPTURE(name);
    REQUIRE(validate(s).ok());
    const CoverResult cr = holonomy_cover(s);
    CHECK(validate(cr.cover).ok());
    CHECK(deck_generator_checks(cr).ok());
    CHECK(area(cr.cover) == doctest::Approx(s.k() * area(s)));
    if (cr.primitive)
      CHECK(stratum_signature(cr.cover) == predict_cover_signature(stratum_signature(s)).as_signature());
  }
}

TEST_CASE("non-primitive differentials are flagged") {
  // a torus viewed as a quadratic differential is the square of an abelian one
  const FlatSurface t = torus({1, 0}, {0, 1});
  FlatSurface sq(2, t.polygons(), t.gluings(), t.names());
  const CoverResult cr = holonomy_cover(sq);
  CHECK_FALSE(cr.primitive);
  CHECK(cr.component_count == 2);
}

TEST_CASE("hyperelliptic target strata") {
  auto t = hyperelliptic_target_stratum(make_signature(3, 3, {6, 6}), HyperellipticCase::a);
  CHECK(t.n1 == 7);
  CHECK(t.n2 == 7);
  CHECK(std::count(t.orders.begin(), t.orders.end(), -1) == 18);
  t = hyperelliptic_target_stratum(make_signature(3, 3, {4, 4, 4}), HyperellipticCase::b, {2, 4});
  CHECK(t.orders.front() == 12);
  CHECK(t.n1 == 5);
  CHECK(std::count(t.orders.begin(), t.orders.end(), -1) == 21);
  t = hyperelliptic_target_stratum(make_signature(3, 3, {2, 2, 4, 4}), HyperellipticCase::c);
  CHECK(t.n1 == 8);
  CHECK(t.n2 == 12);
  CHECK(std::count(t.orders.begin(), t.orders.end(), -1) == 24);
  t = hyperelliptic_target_stratum(make_signature(3, 3, {8, 4, 0, 0, 0, 0, 0, 0}), HyperellipticCase::a);
  CHECK(t.n1 == 9);
  CHECK(t.n2 == 5);
  CHECK_THROWS_WITH(hyperelliptic_target_stratum(make_signature(3, 3, {12}), HyperellipticCase::a),
                    "not a hyperelliptic signature");
  CHECK_THROWS_WITH(hyperelliptic_target_stratum(make_signature(3, 3, {7, 5}), HyperellipticCase::a),
                    "not a hyperelliptic signature");
}
