#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "kflat/sv_predict.hpp"

using namespace kflat;

namespace {
const double pi2 = std::numbers::pi * std::numbers::pi;
}

TEST_CASE("closed form constants") {
  CHECK(c_simple(0, 0) == doctest::Approx(3 / (2 * pi2)).epsilon(1e-14));
  CHECK(c_simple(1, 1) == doctest::Approx(5 / (3 * pi2)).epsilon(1e-14));
  CHECK(c_envelope(0, 0) == doctest::Approx(3 / pi2).epsilon(1e-14));
  CHECK(c_envelope(1, 1) == doctest::Approx(15 / (2 * pi2)).epsilon(1e-14));
  CHECK(c_hat_cyl(0, 0) == doctest::Approx(6 / pi2).epsilon(1e-14));
  CHECK(c_hat_cyl(1, 1) == doctest::Approx(65 / (6 * pi2)).epsilon(1e-14));
  CHECK_THROWS(c_simple(-1, 0));
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> n(0, 40);
  for (int i = 0; i < 100; ++i) {
    const int a = n(rng), b = n(rng);
    CHECK(c_simple(a, b) == doctest::Approx(c_simple(b, a)).epsilon(1e-15));
    CHECK(c_envelope(a, b) / c_simple(a, b) == doctest::Approx((a + 2.0) * (b + 2.0) / 2).epsilon(1e-13));
    const double alt = (a + b + 4.0) * (a + b + 3.0) / 2 / (2 * pi2) * (1 + 4.0 / ((a + 2.0) * (b + 2.0)));
    CHECK(c_hat_cyl(a, b) == doctest::Approx(alt).epsilon(1e-12));
    CHECK(c_hat_cyl(a, b) > c_envelope(a, b));
  }
}

TEST_CASE("hyperelliptic predictions") {
  const StratumSignature s = make_signature(3, 3, {6, 6});
  const SVPrediction p = predict_hyperelliptic(s, HyperellipticCase::a, PredictionForm::display);
  CHECK(p.n1 == 7);
  CHECK(p.n2 == 7);
  // printed per-case displays, written in the k-differential orders
  auto shown = [](double top, double a, double b, int k) {
    return (1 / (2 * pi2)) * (top * (top - 1) / 2) * (1 + 4 / (a * b)) * 2 * std::numbers::pi / (k * k);
  };
  CHECK(p.coefficient == doctest::Approx(shown(2 * 3 + 2 * 3 + 6, 9, 9, 3)).epsilon(1e-12));
  const SVPrediction b = predict_hyperelliptic(make_signature(3, 3, {6, 3, 3}), HyperellipticCase::b,
                                               PredictionForm::display);
  CHECK(b.coefficient == doctest::Approx(shown(6 + 6 + 9, 6 + 3, 6 + 6, 3)).epsilon(1e-12));
  const SVPrediction cd = predict_hyperelliptic(make_signature(3, 3, {2, 2, 4, 4}), HyperellipticCase::c,
                                                PredictionForm::display);
  CHECK(cd.coefficient == doctest::Approx(shown(4 + 8 + 12, 4 + 6, 8 + 6, 3)).epsilon(1e-12));
  const SVPrediction c = predict_hyperelliptic(make_signature(3, 3, {2, 2, 4, 4}), HyperellipticCase::c);
  CHECK(c.n1 + c.n2 == 20);
  CHECK(c.c_hat == doctest::Approx(c_hat_cyl(8, 12)));
  CHECK_THROWS_WITH(predict_hyperelliptic(make_signature(3, 1, {2, -2}), HyperellipticCase::a),
                    "configuration weights for marked pre-images not implemented");
  CHECK(c_hat_sc({0.5, 0.25, 0.125}) == doctest::Approx(0.5));
}
