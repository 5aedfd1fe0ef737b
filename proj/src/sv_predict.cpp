#include "kflat/sv_predict.hpp"

#include <algorithm>
#include <numbers>

namespace kflat {

namespace {

double binom2(int n) { return 0.5 * n * (n - 1.0); }

void check(int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw Error("orders must be non-negative");
}

}  // namespace

double c_envelope(int n1, int n2) {
  check(n1, n2);
  return binom2(n1 + n2 + 4) / (2 * std::numbers::pi * std::numbers::pi);
}

double c_simple(int n1, int n2) { return c_envelope(n1, n2) * 2.0 / ((n1 + 2.0) * (n2 + 2.0)); }

double c_hat_cyl(int n1, int n2) { return 2 * c_simple(n1, n2) + c_envelope(n1, n2); }

double c_hat_sc(const ScConfigurationConstants& c) { return 0 * c.pole_pole + c.pole_zero + 2 * c.zero_zero; }

SVPrediction predict_hyperelliptic(const StratumSignature& sig, HyperellipticCase which, PredictionForm form,
                                   const std::vector<int>& params) {
  if (std::find(sig.mu.begin(), sig.mu.end(), -(sig.k - 1)) != sig.mu.end() && sig.k > 1)
    throw Error("configuration weights for marked pre-images not implemented");
  const QuadraticTargetSignature t = hyperelliptic_target_stratum(sig, which, params);
  SVPrediction p;
  p.k = sig.k;
  p.which = which;
  p.n1 = t.n1;
  p.n2 = t.n2;
  p.target = t.orders;
  p.form = form;
  p.c_hat = c_hat_cyl(t.n1, t.n2);
  p.theorem = p.c_hat * std::numbers::pi / (sig.k * sig.k);
  p.display = 2 * p.theorem;
  p.coefficient = form == PredictionForm::theorem ? p.theorem : p.display;
  return p;
}

PredictionForm parse_form(const std::string& s) {
  if (s == "theorem") return PredictionForm::theorem;
  if (s == "display") return PredictionForm::display;
  throw Error("unknown prediction form '" + s + "'");
}

const char* form_name(PredictionForm f) { return f == PredictionForm::theorem ? "theorem" : "display"; }

}  // namespace kflat
