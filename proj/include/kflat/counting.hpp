#pragma once

#include <string>
#include <vector>

#include "kflat/geodesics.hpp"
#include "kflat/sv_predict.hpp"

namespace kflat {

struct CountReport {
  double L = 0;
  long long N = 0;
  SpectrumKind kind = SpectrumKind::sc;
};

/// Entries with length <= L (ties count). Throws "cutoff exceeded".
CountReport count(const LengthSpectrum& spectrum, double L);

/// (1/L) int_0^L N(e^t) e^{-2t} dt in closed form. Needs e^L <= cutoff.
double cesaro_average(const LengthSpectrum& spectrum, double L);

/// The same integral by composite Gauss-Legendre quadrature on each piece
/// where N is constant. Used as an oracle.
double cesaro_by_quadrature(const LengthSpectrum& spectrum, double L);

/// Spectrum whose counting function is exactly floor(c t^2) up to T.
LengthSpectrum quadratic_spectrum(double c, double T);

struct AsymptoticEstimate {
  double L = 0;       // log scale: lengths up to e^L
  double cesaro = 0;
  double naive = 0;   // N(e^L) / e^{2L}
  double change = 0;  // relative change of cesaro from the previous grid point
  SpectrumKind kind = SpectrumKind::sc;
  bool oriented = true;
};

std::vector<AsymptoticEstimate> weak_asymptotic_estimate(const LengthSpectrum& spectrum,
                                                         const std::vector<double>& grid);

struct CoverRelationRow {
  double L = 0;
  long long cover_sc = 0, cover_cyl = 0;
  long long orbit_sc = 0, orbit_cyl = 0;    // base counts from deck orbits
  long long direct_sc = 0, direct_cyl = 0;  // base counts by enumerating the base
};

struct CoverRelationReport {
  int k = 1;
  double area_base = 0, area_cover = 0;
  std::vector<CoverRelationRow> rows;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks N(cover) = k N(base) for saddle connections and cylinders at every L
/// in the grid and Area(cover) = k Area(base). cr must be the holonomy cover
/// of base, and base must be triangulated.
CoverRelationReport cover_relation_report(const FlatSurface& base, const CoverResult& cr,
                                          const std::vector<double>& grid, const EnumerationOptions& opt = {});

/// Same, throwing on the first violation.
CoverRelationReport verify_cover_relations(const FlatSurface& base, const CoverResult& cr, double L,
                                           const EnumerationOptions& opt = {});

struct ComparisonRow {
  double estimate = 0;
  double theorem = 0, display = 0;  // predicted coefficient divided by the area
  double ratio_theorem = 0, ratio_display = 0;
};

ComparisonRow prediction_comparison(const AsymptoticEstimate& estimate, const SVPrediction& prediction, double area);

/// For a known constant, e.g. from a lattice count.
ComparisonRow prediction_comparison(const AsymptoticEstimate& estimate, double constant);

}  // namespace kflat
