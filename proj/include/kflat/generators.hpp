#pragma once

#include <string>
#include <vector>

#include "kflat/surface.hpp"

namespace kflat {

/// Parallelogram spanned by a and b with opposite sides glued (k = 1),
/// one marked point.
FlatSurface torus(Vec2 a, Vec2 b);

/// Regular n-gon (n even, side 1) with opposite sides glued (k = 1).
FlatSurface regular_ngon(int n);

/// Two unit squares glued into the pillowcase (k = 2, four poles).
FlatSurface pillowcase();

/// Polygon with interior angles pi*a[i]/k. The first n-2 edge lengths are given,
/// the last two are solved for closure. Throws when closure needs a
/// non-positive length or the polygon is not simple.
Polygon angle_polygon(int k, const std::vector<int>& a, const std::vector<double>& lengths);

/// The polygon glued to its mirror image edge by edge: a genus-zero
/// k-differential with orders a[i]-k. Edge directions must be multiples of pi/k.
FlatSurface doubled_polygon(int k, const Polygon& p);

/// Four equilateral triangles forming a cubic differential of genus one
/// with orders (2,-2).
FlatSurface equilateral_k3();

/// Doubled octagon with angles (11,7,3,3,3,3,3,3)*pi/6, a sextic differential
/// whose degree-2 intermediate cover lies in the hyperelliptic locus of the
/// cubic stratum with orders (8,4) plus six marked points.
FlatSurface hyperelliptic_k6_octagon();

/// Doubled polygon for the angle pattern, trying a few edge-length choices
/// until the polygon closes up simply.
FlatSurface doubled_angle_polygon(int k, const std::vector<int>& a);

struct NamedSurface {
  std::string name;
  FlatSurface surface;
};

/// Test battery: doubled polygons for k in {2,3,5,7} and the shipped examples.
std::vector<NamedSurface> battery();

/// Builds a named surface: "torus", "torus:a,b" (a x b rectangle), "ngon:n",
/// "pillowcase", "equilateral-k3", "hyperelliptic-k6".
FlatSurface builtin_surface(const std::string& spec);

}  // namespace kflat
