#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kflat/covers.hpp"

namespace kflat {

using IntMatrix = std::vector<std::vector<long long>>;

/// One crossing of a dual loop: the gluing crossed and the sign of the
/// crossing (-1 leaving through side A, +1 leaving through side B).
struct DualCrossing {
  int gluing = -1;
  int sign = 0;
};

/// Integral first homology of the closed surface via a tree-cotree split.
/// Cycles are integer vectors indexed by gluing, oriented along side A.
struct HomologyData {
  int rank = 0;
  std::vector<std::vector<int>> basis;
  std::vector<std::vector<DualCrossing>> duals;  // basis[i] . duals[j] = -delta_ij
  std::vector<std::vector<EdgeRef>> dual_exits;  // same loops as exit edges
  IntMatrix intersection;
};

HomologyData h1_basis(const FlatSurface& surface);

/// Coordinates of a 1-cycle (gluing coefficients) in the basis.
std::vector<long long> cycle_coordinates(const HomologyData& h, const std::vector<int>& chain);

/// Algebraic intersection of classes given in basis coordinates.
long long intersection_number(const HomologyData& h, const std::vector<long long>& x,
                              const std::vector<long long>& y);

/// Primal cycle homologous to a loop given by the edges it leaves through.
std::vector<int> chain_of_crossings(const FlatSurface& surface, const std::vector<EdgeRef>& exits);

struct DeckActionMatrix {
  IntMatrix T;  // column i = coordinates of tau(basis[i])
  std::vector<std::string> diagnostics;
};

DeckActionMatrix deck_action(const CoverResult& cr, const HomologyData& h);

/// Multiplicity of each cyclotomic factor Phi_d, d | k, in the characteristic
/// polynomial of T. Throws when a factor is left over.
std::map<int, int> eigenspace_multiplicities(const DeckActionMatrix& T, int k);

/// 2g + n - 2 - #{m_i divisible by k}.
int expected_primitive_eigenspace_dimension(const StratumSignature& base);

/// Coefficients of det(xI - A), highest degree first (division-free).
std::vector<long long> characteristic_polynomial(const IntMatrix& A);
std::vector<long long> cyclotomic_polynomial(int d);

struct CurveSegment {
  int polygon = -1;
  Vec2 a, b;
};

struct CurvePath {
  std::vector<CurveSegment> segments;
  bool closed = true;
};

/// Reads "seg <polygon> x0 y0 x1 y1" lines.
CurvePath parse_curve(std::istream& in, const FlatSurface& surface);
CurvePath load_curve(const std::string& path, const FlatSurface& surface);

/// Edges left through at each gluing crossing, in order. Checks that
/// consecutive segments meet, directly or across a gluing.
std::vector<EdgeRef> curve_crossings(const FlatSurface& surface, const CurvePath& path);

/// Total turning along the closed path divided by 2*pi/k.
int curve_index(const FlatSurface& surface, const CurvePath& path);

CurvePath reversed(const CurvePath& path);

/// Small loop around a singularity through points at distance r from it.
CurvePath loop_around_singularity(const FlatSurface& surface, int singularity_id, double r);

/// Loop through polygon centroids and edge midpoints; polygons must be convex.
CurvePath dual_curve(const FlatSurface& surface, const std::vector<EdgeRef>& exits);

/// gcd(Ind(alpha), Ind(beta), m_1, ..., m_n) over the nonzero arguments.
int rotation_number(const FlatSurface& surface, const CurvePath& alpha, const CurvePath& beta);
int gcd_of_nonzero(const std::vector<int>& values);

struct SymplecticPair {
  std::vector<long long> a, b;  // basis coordinates
};

std::vector<SymplecticPair> symplectic_basis(const HomologyData& h);

/// Sum over pairs of (Ind(alpha_i)+1)(Ind(beta_i)+1) mod 2.
int arf_parity(const FlatSurface& surface, const std::vector<std::pair<CurvePath, CurvePath>>& pairs);

/// Parity from the mod-2 quadratic form q = Ind + 1, evaluated on simple dual
/// loops of a Delaunay triangulation, on the given symplectic basis.
struct SpinForm {
  FlatSurface triangulated;
  HomologyData h;
  std::vector<int> q_dual;  // q on each dual loop
  std::vector<std::vector<long long>> dual_coords;

  int q(const std::vector<long long>& x) const;
  int arf(const std::vector<SymplecticPair>& basis) const;
};

SpinForm spin_form(const FlatSurface& surface);

}  // namespace kflat
