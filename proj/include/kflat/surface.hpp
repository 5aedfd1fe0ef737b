#pragma once

#include <compare>
#include <string>
#include <vector>

#include "kflat/geometry.hpp"

namespace kflat {

struct Polygon {
  std::vector<Vec2> vertices;

  int size() const { return static_cast<int>(vertices.size()); }
  Vec2 vertex(int i) const { return vertices[mod(i, size())]; }
  /// Edge i runs from vertex i to vertex i+1.
  Vec2 edge(int i) const { return vertex(i + 1) - vertex(i); }
  double signed_area() const;
  bool is_simple(double eps) const;
};

struct EdgeRef {
  int polygon = -1;
  int edge = -1;

  auto operator<=>(const EdgeRef&) const = default;
  bool valid() const { return polygon >= 0; }
};

/// Side b is the image of side a under translation plus rotation by
/// rho^rot, rho = exp(2 pi i / k); edge vectors satisfy v(b) = -rho^rot v(a).
struct Gluing {
  EdgeRef a;
  EdgeRef b;
  int rot = 0;
};

/// What lies across an edge. Directions crossing from this side are
/// multiplied by rho^rot to be expressed in the other polygon's frame.
struct Partner {
  EdgeRef other;
  int rot = 0;
  int gluing = -1;
  bool is_side_a = true;
};

/// A (1/k)-translation surface given by polygons and edge identifications.
class FlatSurface {
 public:
  FlatSurface() = default;
  FlatSurface(int k, std::vector<Polygon> polygons, std::vector<Gluing> gluings,
              std::vector<std::string> names = {}, Tolerance tol = {});

  int k() const { return k_; }
  const std::vector<Polygon>& polygons() const { return polygons_; }
  const Polygon& polygon(int i) const { return polygons_[i]; }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  const std::vector<std::string>& names() const { return names_; }
  const Tolerance& tolerance() const { return tol_; }
  int polygon_count() const { return static_cast<int>(polygons_.size()); }
  int edge_count() const;

  /// Partner of an edge; other.polygon == -1 when the edge is unglued.
  const Partner& partner(EdgeRef e) const { return partners_[e.polygon][e.edge]; }
  /// Number of gluing rules mentioning the edge (1 on a well-formed surface).
  int glue_multiplicity(EdgeRef e) const { return multiplicity_[e.polygon][e.edge]; }
  /// Rotation rho^j as a unit vector.
  Vec2 rho(int j) const { return root_of_unity(j, k_); }
  int polygon_index(const std::string& name) const;

 private:
  void build_index();

  int k_ = 1;
  std::vector<Polygon> polygons_;
  std::vector<Gluing> gluings_;
  std::vector<std::string> names_;
  Tolerance tol_;
  std::vector<std::vector<Partner>> partners_;
  std::vector<std::vector<int>> multiplicity_;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

struct Corner {
  int polygon = 0;
  int vertex = 0;
  auto operator<=>(const Corner&) const = default;
};

struct Singularity {
  int id = 0;
  int order = 0;
  double cone_angle = 0.0;
  std::vector<Corner> corners;  // counterclockwise around the point
};

struct SingularityTable {
  std::vector<Singularity> entries;
  /// Singularity id of each (polygon, vertex) corner.
  std::vector<std::vector<int>> id_of_corner;
};

struct StratumSignature {
  int k = 1;
  int g = 0;
  std::vector<int> mu;  // sorted descending

  bool gauss_bonnet_holds() const;
  std::string to_string() const;
  bool operator==(const StratumSignature&) const = default;
};

/// Builds a signature after sorting mu; validates entries and Gauss-Bonnet.
StratumSignature make_signature(int k, int g, std::vector<int> mu);

ValidationReport validate(const FlatSurface& surface);
SingularityTable singularities(const FlatSurface& surface);
int genus(const FlatSurface& surface);
double area(const FlatSurface& surface);
StratumSignature stratum_signature(const FlatSurface& surface);

/// Interior angle of the polygon at a vertex, in (0, 2 pi).
double corner_angle(const Polygon& p, int vertex);

/// Smallest j in [0,k) with vb ≈ -rho^j va; -1 if none.
int infer_rotation(Vec2 va, Vec2 vb, int k, const Tolerance& tol);

/// Connected components of the polygon adjacency graph.
std::vector<int> polygon_components(const FlatSurface& surface, int* count);

/// Copy of the surface with every polygon multiplied by a unit vector
/// (a global rotation; gluing rotations are unchanged).
FlatSurface rotated(const FlatSurface& surface, Vec2 unit);

}  // namespace kflat
