#pragma once

#include "kflat/surface.hpp"

namespace kflat {

/// Ear-clipping triangulation of every polygon. Diagonals are glued with rot 0.
FlatSurface triangulate(const FlatSurface& surface);

/// Delaunay triangulation by edge flips; the input may be any valid surface.
FlatSurface delaunay_triangulation(const FlatSurface& surface);

/// True when every edge of an all-triangle surface satisfies the empty
/// circumdisk condition against the opposite vertex across it.
bool is_delaunay(const FlatSurface& triangulated);

/// Delaunay decomposition: Delaunay triangles merged across cocircular edges.
/// Unique for a given surface, so it serves as a normal form.
FlatSurface delaunay_decomposition(const FlatSurface& surface);

/// Isomorphism of (1/k)-translation surfaces up to cut-and-paste, relabeling,
/// and a global rotation by a power of rho. Both surfaces must share k.
bool are_translation_equivalent(const FlatSurface& a, const FlatSurface& b);

/// Incircle predicate: > 0 when d lies strictly inside the circle through
/// the counterclockwise triangle a, b, c.
double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

}  // namespace kflat
