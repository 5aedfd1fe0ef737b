#pragma once

#include <vector>

#include "kflat/geodesics.hpp"
#include "tri_mesh.hpp"

namespace kflat::detail {

// Placement of a triangle in an unfolded development: x -> R x + T.
struct Frame {
  Vec2 R{1, 0};
  Vec2 T{0, 0};
  Vec2 operator()(Vec2 p) const { return cmul(R, p) + T; }
};

FlatSurface triangulated_input(const FlatSurface& s);

// Frame of the neighbour across (t,e) so that it sits next to t placed by f.
Frame neighbour_frame(const Mesh& m, const Frame& f, int t, int e);

// Extra length allowed past a cutoff so that lengths equal to L within
// rounding are counted.
double cutoff_slack(double L);

// Index of the reversed record of each saddle connection, -1 if missing.
std::vector<int> reverse_ids(const FlatSurface& tri, const std::vector<SaddleConnection>& records);

LengthSpectrum make_spectrum(SpectrumKind kind, double L, bool oriented, std::vector<std::pair<double, int>> e);

// Spectrum over the records; unoriented keeps one of each reversed pair.
LengthSpectrum saddle_spectrum(const FlatSurface& tri, const std::vector<SaddleConnection>& records, double L,
                               bool oriented);

}  // namespace kflat::detail
