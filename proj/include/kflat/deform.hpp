#pragma once

#include <cstdint>

#include "kflat/geodesics.hpp"

namespace kflat {

struct DeformResult {
  FlatSurface surface;  // triangulated
  Cylinder cylinder;    // the deformed cylinder, valid for further deformations of surface
};

/// Shears the cylinder by [[1,t],[0,1]] in the frame where it is horizontal,
/// fixing its bottom boundary. cyl must come from enumerate_cylinders on surface.
DeformResult cylinder_shear(const FlatSurface& surface, const Cylinder& cyl, double t);

/// Multiplies the cylinder's height by s, fixing its bottom boundary.
DeformResult cylinder_stretch(const FlatSurface& surface, const Cylinder& cyl, double s);

/// Random nearby surface in the same stratum: every gluing's edge vector moves
/// by at most eps before the polygons are closed up again, and no vertex moves
/// by more than eps. Needs eps < systole / 10.
FlatSurface perturb_in_stratum(const FlatSurface& surface, double eps, std::uint64_t seed);

/// Shortest saddle connection length.
double systole(const FlatSurface& surface);

}  // namespace kflat
