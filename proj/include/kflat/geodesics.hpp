#pragma once

#include <string>
#include <vector>

#include "kflat/covers.hpp"

namespace kflat {

/// Half-edge (triangle, edge) of the triangulation a geodesic was traced on.
using HalfEdgeRef = EdgeRef;

struct SaddleConnection {
  Vec2 holonomy;  // in the frame of the start triangle
  double length = 0;
  int start = -1, end = -1;  // singularity ids of the triangulated surface
  int tri = -1, corner = -1;  // start corner
  int end_tri = -1, end_corner = -1;  // corner the connection arrives in
  std::vector<HalfEdgeRef> itinerary;  // exits, in order
};

struct Cylinder {
  Vec2 direction;  // unit core direction, in the frame of the traced triangle
  double angle = 0;  // direction angle mod pi
  double circumference = 0;
  double height = 0;
  int tri = -1;  // triangle containing the traced core point
  Vec2 core_point;         // local coordinates in tri
  double core_offset = 0;  // distance of the core point above the bottom boundary
  std::vector<int> bottom, top;  // boundary saddle-connection ids
  std::vector<HalfEdgeRef> core_itinerary;  // canonical rotation
};

enum class SpectrumKind { sc, cyl };

struct LengthSpectrum {
  SpectrumKind kind = SpectrumKind::sc;
  double cutoff = 0;
  bool oriented = true;
  std::vector<std::pair<double, int>> entries;  // (length, record id), ascending
};

struct EnumerationOptions {
  bool oriented = true;  // saddle connections v and -v counted separately
  int workers = 1;
};

struct SaddleConnectionSet {
  FlatSurface triangulated;
  std::vector<SaddleConnection> records;  // both orientations, sorted
  LengthSpectrum spectrum;
};

struct CylinderSet {
  FlatSurface triangulated;
  std::vector<Cylinder> records;
  SaddleConnectionSet saddles;
  LengthSpectrum spectrum;
  std::vector<std::string> diagnostics;
};

/// All saddle connections of length <= L. All-triangle inputs are used as
/// given; other surfaces are Delaunay triangulated first. Works for any k by
/// unfolding with the gluing rotations; lengths do not depend on the frame.
SaddleConnectionSet enumerate_saddle_connections(const FlatSurface& surface, double L,
                                                 const EnumerationOptions& opt = {});

/// All cylinders of circumference <= L, unoriented.
CylinderSet enumerate_cylinders(const FlatSurface& surface, double L, const EnumerationOptions& opt = {});

/// Key of a half-edge cycle that does not depend on the starting point or
/// the direction of travel.
std::vector<HalfEdgeRef> canonical_cycle(const FlatSurface& triangulated, std::vector<HalfEdgeRef> cycle);

struct LiftReport {
  int k = 1;
  int cover_sc = 0, cover_cyl = 0;
  int sc_orbits = 0, cyl_orbits = 0;
  std::vector<int> sc_orbit_sizes, cyl_orbit_sizes;
  double projected_sc = 0, projected_cyl = 0;  // cover counts / k
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct LiftResult {
  SaddleConnectionSet cover_saddles;
  CylinderSet cover_cylinders;
  std::vector<int> sc_orbit;  // orbit index of each cover saddle connection
  std::vector<int> cyl_orbit;
  LengthSpectrum projected_sc, projected_cyl;  // one entry per deck orbit
  LiftReport report;
};

/// Enumerates on the cover and groups records into deck orbits. cr must be the
/// holonomy cover of the triangulated base so that tau acts on triangles.
LiftResult lift_spectrum(const CoverResult& cr, const FlatSurface& base, double L,
                         const EnumerationOptions& opt = {});

/// Convenience: Delaunay triangulates the base and builds its holonomy cover.
LiftResult lift_spectrum(const FlatSurface& base, double L, const EnumerationOptions& opt = {});

}  // namespace kflat
