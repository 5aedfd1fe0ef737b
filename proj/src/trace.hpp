#pragma once

// Straight-line flow on a triangle mesh.

#include <initializer_list>
#include <limits>
#include <vector>

#include "geodesics_detail.hpp"

namespace kflat::detail {

struct Exit {
  bool ok = false;
  bool vertex = false;
  int edge = -1;
  double s = std::numeric_limits<double>::infinity();
  double lambda = 0;
};

struct ChainVertex {
  double x, y;  // along and across the core direction, relative to the start
  int sid;
};

enum class TraceStatus { closed, open, vertex, lost };

struct Visit {
  int tri;
  Vec2 p, u;  // where the trace entered, and its direction, in local coordinates
};

struct Trace {
  TraceStatus status = TraceStatus::lost;
  std::vector<Visit> visits;
  double length = 0;
  std::vector<HalfEdgeRef> itinerary;
  std::vector<ChainVertex> verts;
};

// First edge hit by the ray p + s u, s >= 0, from a point of triangle t.
Exit exit_of(const Mesh& m, int t, Vec2 p, Vec2 u);

// Moves across (t, e) at parameter lambda, turning the carried vectors.
void cross_edge(const Mesh& m, int& t, Vec2& p, int e, double lambda, std::initializer_list<Vec2*> vecs);

// Straight move by dist in direction d; u is carried along. False on a vertex.
bool advance(const Mesh& m, int& t, Vec2& p, Vec2& d, Vec2& u, double dist);

// Flow from (t0, p0) in direction u0 until it closes up (same triangle, point
// and direction), hits a vertex, or exceeds maxlen. sing may be null.
Trace trace(const Mesh& m, const SingularityTable* sing, int t0, Vec2 p0, Vec2 u0, double maxlen, double tolc);

}  // namespace kflat::detail
