#include "kflat/counting.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>

#include "geodesics_detail.hpp"

namespace kflat {

namespace {

void require_within(const LengthSpectrum& s, double length) {
  if (length > s.cutoff + detail::cutoff_slack(s.cutoff)) throw Error("cutoff exceeded");
}

long long count_upto(const LengthSpectrum& s, double L) {
  const double lim = L + detail::cutoff_slack(L);
  const auto it = std::upper_bound(s.entries.begin(), s.entries.end(), lim,
                                   [](double v, const std::pair<double, int>& e) { return v < e.first; });
  return it - s.entries.begin();
}

}  // namespace

CountReport count(const LengthSpectrum& spectrum, double L) {
  require_within(spectrum, L);
  return {L, count_upto(spectrum, L), spectrum.kind};
}

double cesaro_average(const LengthSpectrum& spectrum, double L) {
  if (!(L > 0)) throw Error("invalid cutoff");
  const double T = std::exp(L);
  require_within(spectrum, T);
  const double tail = std::exp(-2 * L);
  double sum = 0;
  for (const auto& [len, id] : spectrum.entries) {
    if (len > T) break;
    sum += (std::min(1.0, 1.0 / (len * len)) - tail) / 2;
  }
  return sum / L;
}

double cesaro_by_quadrature(const LengthSpectrum& spectrum, double L) {
  if (!(L > 0)) throw Error("invalid cutoff");
  require_within(spectrum, std::exp(L));
  // breakpoints in t where N(e^t) jumps
  std::vector<double> cuts{0.0};
  for (const auto& e : spectrum.entries) {
    const double t = std::log(e.first);
    if (t > 0 && t < L) cuts.push_back(t);
  }
  cuts.push_back(L);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0;
  std::size_t below = 0;  // entries with log length <= current piece start
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    while (below < spectrum.entries.size() && std::log(spectrum.entries[below].first) <= a) ++below;
    const double N = static_cast<double>(below);
    if (N == 0) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / 0.25)));
    for (int j = 0; j < pieces; ++j) {
      const double lo = a + (b - a) * j / pieces, hi = a + (b - a) * (j + 1) / pieces;
      total += boost::math::quadrature::gauss<double, 15>::integrate(
          [N](double t) { return N * std::exp(-2 * t); }, lo, hi);
    }
  }
  return total / L;
}

LengthSpectrum quadratic_spectrum(double c, double T) {
  if (!(c > 0) || !(T > 0)) throw Error("invalid synthetic spectrum");
  LengthSpectrum s{SpectrumKind::cyl, T, false, {}};
  const auto n = static_cast<long long>(std::floor(c * T * T));
  s.entries.reserve(n);
  // N(t) >= i exactly when c t^2 >= i
  for (long long i = 1; i <= n; ++i) s.entries.emplace_back(std::sqrt(i / c), static_cast<int>(i - 1));
  return s;
}

std::vector<AsymptoticEstimate> weak_asymptotic_estimate(const LengthSpectrum& spectrum,
                                                         const std::vector<double>& grid) {
  std::vector<AsymptoticEstimate> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error("grid must be increasing");
    AsymptoticEstimate e;
    e.L = grid[i];
    e.kind = spectrum.kind;
    e.oriented = spectrum.oriented;
    e.cesaro = cesaro_average(spectrum, grid[i]);
    const double T = std::exp(grid[i]);
    e.naive = static_cast<double>(count(spectrum, T).N) / (T * T);
    if (i == 0)
      e.change = std::numeric_limits<double>::quiet_NaN();
    else
      e.change = out.back().cesaro > 0 ? std::abs(e.cesaro - out.back().cesaro) / out.back().cesaro : 0.0;
    out.push_back(e);
  }
  return out;
}

CoverRelationReport cover_relation_report(const FlatSurface& base, const CoverResult& cr,
                                          const std::vector<double>& grid, const EnumerationOptions& opt) {
  if (grid.empty()) throw Error("empty grid");
  const double Lmax = *std::max_element(grid.begin(), grid.end());
  CoverRelationReport rep;
  const LiftResult lift = lift_spectrum(cr, base, Lmax, opt);
  const CylinderSet direct = enumerate_cylinders(base, Lmax, opt);
  rep.k = lift.report.k;
  rep.failures = lift.report.violations;
  for (const auto& d : lift.cover_cylinders.diagnostics) rep.failures.push_back("cover: " + d);
  for (const auto& d : direct.diagnostics) rep.failures.push_back("base: " + d);
  rep.area_base = area(base);
  rep.area_cover = area(cr.cover);
  if (std::abs(rep.area_cover - rep.k * rep.area_base) > 1e-9 * rep.k * rep.area_base)
    rep.failures.push_back("area relation violated");
  for (double L : grid) {
    CoverRelationRow r;
    r.L = L;
    r.cover_sc = count(lift.cover_saddles.spectrum, L).N;
    r.cover_cyl = count(lift.cover_cylinders.spectrum, L).N;
    r.orbit_sc = count(lift.projected_sc, L).N;
    r.orbit_cyl = count(lift.projected_cyl, L).N;
    r.direct_sc = count(direct.saddles.spectrum, L).N;
    r.direct_cyl = count(direct.spectrum, L).N;
    const std::string at = " at L=" + std::to_string(L);
    if (r.cover_sc != rep.k * r.orbit_sc || r.cover_sc != rep.k * r.direct_sc)
      rep.failures.push_back("saddle connection count relation violated" + at);
    if (r.cover_cyl != rep.k * r.orbit_cyl || r.cover_cyl != rep.k * r.direct_cyl)
      rep.failures.push_back("cylinder count relation violated" + at);
    rep.rows.push_back(r);
  }
  return rep;
}

CoverRelationReport verify_cover_relations(const FlatSurface& base, const CoverResult& cr, double L,
                                           const EnumerationOptions& opt) {
  CoverRelationReport rep = cover_relation_report(base, cr, {L}, opt);
  if (!rep.ok()) throw Error(rep.failures.front());
  return rep;
}

ComparisonRow prediction_comparison(const AsymptoticEstimate& estimate, double constant) {
  ComparisonRow r;
  r.estimate = estimate.cesaro;
  r.theorem = r.display = constant;
  if (constant > 0) r.ratio_theorem = r.ratio_display = estimate.cesaro / constant;
  return r;
}

ComparisonRow prediction_comparison(const AsymptoticEstimate& estimate, const SVPrediction& prediction, double area) {
  if (!(area > 0)) throw Error("area must be positive");
  ComparisonRow r;
  r.estimate = estimate.cesaro;
  r.theorem = prediction.theorem / area;
  r.display = prediction.display / area;
  r.ratio_theorem = estimate.cesaro / r.theorem;
  r.ratio_display = estimate.cesaro / r.display;
  return r;
}

}  // namespace kflat
