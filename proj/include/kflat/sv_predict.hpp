#pragma once

#include <string>
#include <vector>

#include "kflat/covers.hpp"

namespace kflat {

enum class PredictionForm { theorem, display };

struct SVPrediction {
  double c_hat = 0;
  PredictionForm form = PredictionForm::theorem;
  double coefficient = 0;  // of L^2 / Area in the chosen form
  double theorem = 0;      // c_hat pi / k^2
  double display = 0;      // 2 c_hat pi / k^2
  int k = 1;
  HyperellipticCase which = HyperellipticCase::a;
  int n1 = 0, n2 = 0;
  std::vector<int> target;  // quadratic stratum orders the constants come from
};

double c_simple(int n1, int n2);
double c_envelope(int n1, int n2);
/// 2 c_simple + c_envelope.
double c_hat_cyl(int n1, int n2);

/// Siegel-Veech constants of the three saddle-connection configurations on
/// the quadratic quotient. Values come from external tables.
struct ScConfigurationConstants {
  double pole_pole = 0, pole_zero = 0, zero_zero = 0;
};

/// Weights 0, 1, 2 by the number of preimages of each configuration.
double c_hat_sc(const ScConfigurationConstants& c);

SVPrediction predict_hyperelliptic(const StratumSignature& sig, HyperellipticCase which,
                                   PredictionForm form = PredictionForm::theorem,
                                   const std::vector<int>& params = {});

PredictionForm parse_form(const std::string& s);
const char* form_name(PredictionForm f);

}  // namespace kflat
