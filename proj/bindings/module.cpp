#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "igac2/study.hpp"

namespace py = pybind11;
using namespace igac2;

namespace {

/// Python-facing wrapper holding a space together with its domain.
struct PySpace {
    BasisSpace space;
};

Polynomial2D solution_from_id(const std::string& id) { return builtin_solution(id); }

}  // namespace

PYBIND11_MODULE(igac2, m) {
    m.doc() = "C2-smooth isogeometric spline spaces over bilinear multi-patch "
              "domains and a Galerkin solver for the sixth-order problem "
              "laplacian^3 u = -f with clamped second-order boundary conditions.";

    py::register_exception<Error>(m, "IgaError");

    py::class_<MultiPatchDomain>(m, "Domain")
        .def_property_readonly("num_patches", &MultiPatchDomain::num_patches)
        .def_property_readonly("num_interfaces",
                               [](const MultiPatchDomain& d) { return d.interfaces.size(); })
        .def_property_readonly("num_boundary_edges",
                               [](const MultiPatchDomain& d) { return d.boundary_edges.size(); })
        .def_property_readonly("num_vertex_fans",
                               [](const MultiPatchDomain& d) { return d.vertices.size(); });

    m.def("load_domain", &load_domain, py::arg("path"),
          "Load a multi-patch domain from a JSON file.");
    m.def("parse_domain", &parse_domain, py::arg("text"),
          "Parse a multi-patch domain from a JSON string.");

    py::class_<PySpace>(m, "Space")
        .def_property_readonly("dim", [](const PySpace& s) { return s.space.dim(); })
        .def_property_readonly("num_patch_functions",
                               [](const PySpace& s) { return s.space.n_patch; })
        .def_property_readonly("num_edge_functions",
                               [](const PySpace& s) { return s.space.n_edge; })
        .def_property_readonly("num_vertex_functions",
                               [](const PySpace& s) { return s.space.n_vertex; })
        .def_property_readonly("vertex_dims",
                               [](const PySpace& s) { return s.space.vertex_dims; })
        .def("export_json", [](const PySpace& s) { return export_basis_json(s.space); },
             "All basis functions as JSON coefficient blocks.")
        .def(
            "max_interface_residual",
            [](const PySpace& s, int samples) {
                double worst = 0.0;
                for (const auto& f : s.space.functions) {
                    const double scale = std::max(1.0, f.max_abs_coeff());
                    for (const auto& itf : s.space.dom.interfaces)
                        worst = std::max(
                            worst, function_smoothness(s.space, f, itf, samples).max() / scale);
                }
                return worst;
            },
            py::arg("samples") = 20,
            "Largest relative value/gradient/Hessian jump of any basis function "
            "across any interface.")
        .def(
            "max_boundary_residual",
            [](const PySpace& s, int samples) {
                double worst = 0.0;
                for (const auto& f : s.space.functions) {
                    const double scale = std::max(1.0, f.max_abs_coeff());
                    for (const auto& be : s.space.dom.boundary_edges)
                        worst = std::max(
                            worst, boundary_jet_residual(s.space, f, be, samples) / scale);
                }
                return worst;
            },
            py::arg("samples") = 20,
            "Largest relative second-order jet of any basis function on the "
            "domain boundary.");

    m.def(
        "assemble_space",
        [](const MultiPatchDomain& dom, int p, int r, int k) {
            return PySpace{assemble_space(dom, p, r, k)};
        },
        py::arg("domain"), py::arg("p"), py::arg("r"), py::arg("k"),
        "Build the C2-smooth space with vanishing second-order boundary jet.");

    m.def("builtin_solution_ids", [] { return std::vector<std::string>{"a", "b", "c", "d"}; });

    m.def(
        "run_study",
        [](const MultiPatchDomain& dom, int p, int r, const std::vector<int>& klist,
           const std::string& solution, bool with_condition) {
            StudyConfig cfg;
            cfg.p = p;
            cfg.r = r;
            cfg.klist = klist;
            cfg.solution = solution_from_id(solution);
            cfg.with_condition = with_condition;
            return study_json(run_study(dom, cfg));
        },
        py::arg("domain"), py::arg("p"), py::arg("r"), py::arg("klist"),
        py::arg("solution") = "a", py::arg("with_condition") = false,
        py::call_guard<py::gil_scoped_release>(),
        "Refinement study of the sixth-order solve; returns a JSON report.");
}
