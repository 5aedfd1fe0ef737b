#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kflat/counting.hpp"
#include "kflat/deform.hpp"
#include "kflat/generators.hpp"
#include "kflat/homology.hpp"
#include "kflat/surface_io.hpp"
#include "kflat/triangulation.hpp"

namespace py = pybind11;
using namespace kflat;

namespace {

std::vector<std::pair<double, double>> polygon_vertices(const Polygon& p) {
  std::vector<std::pair<double, double>> v;
  for (const Vec2& q : p.vertices) v.emplace_back(q.x, q.y);
  return v;
}

std::vector<double> lengths(const LengthSpectrum& s) {
  std::vector<double> out;
  for (const auto& e : s.entries) out.push_back(e.first);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flat surfaces with k-differentials";
  py::register_exception<Error>(m, "KFlatError", PyExc_ValueError);

  py::class_<StratumSignature>(m, "StratumSignature")
      .def_readonly("k", &StratumSignature::k)
      .def_readonly("g", &StratumSignature::g)
      .def_readonly("mu", &StratumSignature::mu)
      .def("__str__", &StratumSignature::to_string)
      .def("__repr__", [](const StratumSignature& s) { return "<StratumSignature " + s.to_string() + ">"; })
      .def(py::self == py::self);
  m.def("make_signature", &make_signature, py::arg("k"), py::arg("g"), py::arg("mu"));
  m.def("parse_signature", &parse_signature);

  py::class_<FlatSurface>(m, "FlatSurface")
      .def_property_readonly("k", &FlatSurface::k)
      .def_property_readonly("polygon_count", &FlatSurface::polygon_count)
      .def_property_readonly("names", &FlatSurface::names)
      .def("vertices", [](const FlatSurface& s, int i) { return polygon_vertices(s.polygon(i)); })
      .def("__str__", &surface_to_string);

  m.def("load_surface", [](const std::string& path) { return load_surface(path); });
  m.def("parse_surface", [](const std::string& text) { return parse_surface_string(text); });
  m.def("surface_to_string", &surface_to_string);
  m.def("save_surface", &save_surface);
  m.def("builtin_surface", &builtin_surface);
  m.def("validate", [](const FlatSurface& s) { return validate(s).issues; },
        "List of problems; empty when the surface is valid.");
  m.def("area", &area);
  m.def("genus", &genus);
  m.def("stratum_signature", &stratum_signature);
  m.def("triangulate", &triangulate);
  m.def("delaunay_triangulation", &delaunay_triangulation);
  m.def("are_translation_equivalent", &are_translation_equivalent);

  py::class_<CoverResult>(m, "CoverResult")
      .def_readonly("cover", &CoverResult::cover)
      .def_readonly("degree", &CoverResult::degree)
      .def_readonly("component_count", &CoverResult::component_count)
      .def_readonly("primitive", &CoverResult::primitive);
  m.def("holonomy_cover", &holonomy_cover);
  m.def("intermediate_cover", &intermediate_cover);
  m.def("predict_cover_signature",
        [](const StratumSignature& s, int d) {
          return (d == 0 || d == s.k ? predict_cover_signature(s) : predict_intermediate_signature(s, d))
              .as_signature(d == 0 ? 1 : s.k / d);
        },
        py::arg("signature"), py::arg("degree") = 0);
  m.def("eigenspace_multiplicities", [](const CoverResult& cr) {
    return eigenspace_multiplicities(deck_action(cr, h1_basis(cr.cover)), cr.deck.k);
  });
  m.def("expected_primitive_eigenspace_dimension", &expected_primitive_eigenspace_dimension);

  py::class_<Cylinder>(m, "Cylinder")
      .def_readonly("circumference", &Cylinder::circumference)
      .def_readonly("height", &Cylinder::height)
      .def_readonly("angle", &Cylinder::angle)
      .def_readonly("bottom", &Cylinder::bottom)
      .def_readonly("top", &Cylinder::top)
      .def_property_readonly("direction", [](const Cylinder& c) { return std::pair{c.direction.x, c.direction.y}; });
  m.def(
      "saddle_connection_lengths",
      [](const FlatSurface& s, double L, bool oriented) {
        return lengths(enumerate_saddle_connections(s, L, {oriented, 1}).spectrum);
      },
      py::arg("surface"), py::arg("max_length"), py::arg("oriented") = true);
  m.def(
      "cylinders", [](const FlatSurface& s, double L) { return enumerate_cylinders(s, L).records; },
      py::arg("surface"), py::arg("max_length"));
  m.def(
      "cesaro_average",
      [](std::vector<double> ls, double L) {
        LengthSpectrum s;
        std::sort(ls.begin(), ls.end());
        for (std::size_t i = 0; i < ls.size(); ++i) s.entries.emplace_back(ls[i], static_cast<int>(i));
        s.cutoff = std::exp(L);
        return cesaro_average(s, L);
      },
      py::arg("lengths"), py::arg("L"), "Lengths must be complete up to exp(L).");

  m.def("c_simple", &c_simple);
  m.def("c_envelope", &c_envelope);
  m.def("c_hat_cyl", &c_hat_cyl);
  m.def(
      "predict_hyperelliptic",
      [](const StratumSignature& s, const std::string& which, const std::vector<int>& params) {
        const SVPrediction p = predict_hyperelliptic(s, parse_case(which), PredictionForm::theorem, params);
        return py::dict(py::arg("c_hat") = p.c_hat, py::arg("theorem") = p.theorem, py::arg("display") = p.display,
                        py::arg("n1") = p.n1, py::arg("n2") = p.n2, py::arg("target") = p.target);
      },
      py::arg("signature"), py::arg("case") = "a", py::arg("params") = std::vector<int>{});

  py::class_<DeformResult>(m, "DeformResult")
      .def_readonly("surface", &DeformResult::surface)
      .def_readonly("cylinder", &DeformResult::cylinder);
  m.def("cylinder_shear", &cylinder_shear);
  m.def("cylinder_stretch", &cylinder_stretch);
  m.def("perturb_in_stratum", &perturb_in_stratum, py::arg("surface"), py::arg("eps"), py::arg("seed"));
  m.def("systole", &systole);
}
