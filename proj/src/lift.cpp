#include <algorithm>
#include <map>
#include <string>

#include "geodesics_detail.hpp"

namespace kflat {

namespace {

std::vector<int> sc_key(const SaddleConnection& s, const std::vector<int>* perm) {
  auto tri = [&](int t) { return perm ? (*perm)[t] : t; };
  std::vector<int> key{tri(s.tri), s.corner};
  for (const auto& h : s.itinerary) {
    key.push_back(tri(h.polygon));
    key.push_back(h.edge);
  }
  return key;
}

// Orbit index of every record under image(), checking each orbit has size k.
template <class Image>
std::vector<int> orbits(int n, int k, Image image, std::vector<int>& sizes, std::vector<std::string>& violations,
                        const char* what) {
  std::vector<int> orbit(n, -1);
  for (int i = 0; i < n; ++i) {
    if (orbit[i] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    int size = 0, j = i;
    while (j >= 0 && orbit[j] < 0) {
      orbit[j] = id;
      ++size;
      j = image(j);
    }
    if (j < 0)
      violations.push_back(std::string("lift count violation: image of a ") + what + " is missing");
    else if (j != i)
      violations.push_back(std::string("lift count violation: ") + what + " orbit is not a cycle");
    if (size != k)
      violations.push_back(std::string("lift count violation: ") + what + " orbit of size " + std::to_string(size));
    sizes.push_back(size);
  }
  return orbit;
}

LengthSpectrum projected(SpectrumKind kind, double L, bool oriented, const std::vector<int>& orbit,
                         const LengthSpectrum& cover) {
  std::vector<bool> taken(orbit.size(), false);
  std::vector<std::pair<double, int>> entries;
  for (const auto& [len, id] : cover.entries) {
    if (taken[orbit[id]]) continue;
    taken[orbit[id]] = true;
    entries.emplace_back(len, orbit[id]);
  }
  return detail::make_spectrum(kind, L, oriented, std::move(entries));
}

}  // namespace

LiftResult lift_spectrum(const CoverResult& cr, const FlatSurface& base, double L, const EnumerationOptions& opt) {
  if (!(L > 0)) throw Error("invalid cutoff");
  for (int p = 0; p < cr.cover.polygon_count(); ++p)
    if (cr.cover.polygon(p).size() != 3) throw Error("lift needs the cover of a triangulated base");
  if (cr.cover.polygon_count() != base.polygon_count() * cr.degree) throw Error("cover does not match base");
  LiftResult res;
  res.cover_cylinders = enumerate_cylinders(cr.cover, L, opt);
  res.cover_saddles = res.cover_cylinders.saddles;
  LiftReport& rep = res.report;
  rep.k = cr.deck.order;
  const auto& sc = res.cover_saddles.records;
  const auto& cyl = res.cover_cylinders.records;
  rep.cover_sc = static_cast<int>(res.cover_saddles.spectrum.entries.size());
  rep.cover_cyl = static_cast<int>(cyl.size());

  std::map<std::vector<int>, int> sc_index;
  for (int i = 0; i < static_cast<int>(sc.size()); ++i) sc_index[sc_key(sc[i], nullptr)] = i;
  res.sc_orbit = orbits(
      static_cast<int>(sc.size()), rep.k,
      [&](int i) {
        const auto it = sc_index.find(sc_key(sc[i], &cr.deck.perm));
        return it == sc_index.end() ? -1 : it->second;
      },
      rep.sc_orbit_sizes, rep.violations, "saddle connection");

  std::map<std::vector<HalfEdgeRef>, int> cyl_index;
  for (int i = 0; i < static_cast<int>(cyl.size()); ++i) cyl_index[cyl[i].core_itinerary] = i;
  res.cyl_orbit = orbits(
      static_cast<int>(cyl.size()), rep.k,
      [&](int i) {
        std::vector<HalfEdgeRef> moved;
        for (const auto& h : cyl[i].core_itinerary) moved.push_back({cr.deck.perm[h.polygon], h.edge});
        const auto it = cyl_index.find(canonical_cycle(cr.cover, moved));
        return it == cyl_index.end() ? -1 : it->second;
      },
      rep.cyl_orbit_sizes, rep.violations, "cylinder");
  rep.sc_orbits = static_cast<int>(rep.sc_orbit_sizes.size());
  rep.cyl_orbits = static_cast<int>(rep.cyl_orbit_sizes.size());

  res.projected_cyl = projected(SpectrumKind::cyl, L, false, res.cyl_orbit, res.cover_cylinders.spectrum);
  if (opt.oriented) {
    res.projected_sc = projected(SpectrumKind::sc, L, true, res.sc_orbit, res.cover_saddles.spectrum);
  } else {
    const std::vector<int> rev = detail::reverse_ids(res.cover_saddles.triangulated, sc);
    // an orbit never contains its own reversal since tau acts freely
    std::vector<std::pair<double, int>> entries;
    std::vector<bool> taken(rep.sc_orbits, false);
    for (int i = 0; i < static_cast<int>(sc.size()); ++i) {
      const int a = res.sc_orbit[i];
      if (rev[i] < 0) throw Error("saddle connection without reverse");
      if (taken[a] || res.sc_orbit[rev[i]] < a) continue;
      taken[a] = true;
      entries.emplace_back(sc[i].length, a);
    }
    res.projected_sc = detail::make_spectrum(SpectrumKind::sc, L, false, std::move(entries));
  }
  rep.projected_sc = static_cast<double>(rep.cover_sc) / rep.k;
  rep.projected_cyl = static_cast<double>(rep.cover_cyl) / rep.k;
  return res;
}

LiftResult lift_spectrum(const FlatSurface& base, double L, const EnumerationOptions& opt) {
  const FlatSurface t = detail::triangulated_input(base);
  return lift_spectrum(holonomy_cover(t), t, L, opt);
}

}  // namespace kflat
