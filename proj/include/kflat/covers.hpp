#pragma once

#include <string>
#include <vector>

#include "kflat/surface.hpp"

namespace kflat {

/// Generator of the deck group. Polygon p maps to perm[p]; a point x of p is
/// sent to rho_k^rot[p] * x in the coordinates of perm[p].
struct DeckMap {
  std::vector<int> perm;
  std::vector<int> rot;
  int order = 1;
  int k = 1;  // base k, the unit of rot

  int apply(int polygon, int times = 1) const;
};

struct SheetRef {
  int base_polygon = -1;
  int sheet = 0;
};

struct CoverResult {
  FlatSurface cover;
  DeckMap deck;
  std::vector<SheetRef> sheet_of;
  int degree = 1;
  int component_count = 1;
  bool primitive = true;  // false when the cover is disconnected
};

struct CoverSignaturePrediction {
  int g_hat = 0;
  std::vector<int> mu_hat;

  StratumSignature as_signature(int k_hat = 1) const { return make_signature(k_hat, g_hat, mu_hat); }
};

/// Riemann-Hurwitz data of the holonomy (degree k) cover.
CoverSignaturePrediction predict_cover_signature(const StratumSignature& sig);

/// Same for the degree-d intermediate cover; the result is a (k/d)-differential.
CoverSignaturePrediction predict_intermediate_signature(const StratumSignature& sig, int d);

CoverResult intermediate_cover(const FlatSurface& surface, int d);
CoverResult holonomy_cover(const FlatSurface& surface);

struct CheckReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Verifies tau^d = id, that tau is an isometry compatible with the gluings,
/// and, for the holonomy cover, that tau multiplies every period by zeta.
CheckReport deck_generator_checks(const CoverResult& cr);

enum class HyperellipticCase { a, b, c };

HyperellipticCase parse_case(const std::string& s);
const char* case_name(HyperellipticCase c);

struct QuadraticTargetSignature {
  HyperellipticCase which = HyperellipticCase::a;
  std::vector<int> orders;  // descending; the two zeros first, then the poles
  int n1 = 0, n2 = 0;       // the two non-pole orders
};

/// Target quadratic stratum of a hyperelliptic locus. params optionally pins the
/// decomposition: (a) {m1, m2}; (b) {m, l}; (c) {l1, l2}. Marked points are
/// ignored when matching the shape.
QuadraticTargetSignature hyperelliptic_target_stratum(const StratumSignature& sig, HyperellipticCase which,
                                                      const std::vector<int>& params = {});

}  // namespace kflat
