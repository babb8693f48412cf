#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gkm/errors.hpp"
#include "gkm/families.hpp"
#include "gkm/fibration.hpp"
#include "gkm/graph_io.hpp"
#include "gkm/invariants.hpp"

namespace py = pybind11;
using namespace gkm;

namespace {

CaseLabel parse_case(const std::string& text) {
    auto c = CaseLabel::parse(text);
    if (!c) throw InvalidParams("unknown family '" + text + "'");
    return *c;
}

FiberLabels labels_of(const std::array<std::int64_t, 4>& l) { return {l[0], l[1], l[2], l[3]}; }

py::tuple labels_tuple(const FiberLabels& l) { return py::make_tuple(l.a, l.b, l.c, l.d); }

}  // namespace

PYBIND11_MODULE(gkm, m) {
    m.doc() = "GKM fibrations over the biangle: classification and bundle invariants";

    py::register_exception<Error>(m, "GkmError");

    py::class_<GkmGraph>(m, "Graph")
        .def_property_readonly("rank", &GkmGraph::lattice_rank)
        .def_property_readonly("vertices", &GkmGraph::names)
        .def_property_readonly("dart_count", &GkmGraph::dart_count)
        .def("edges",
             [](const GkmGraph& g) {
                 py::list out;
                 for (DartId e : g.edge_representatives()) {
                     const auto& d = g.dart(e);
                     out.append(py::make_tuple(g.name(d.from), g.name(d.to), std::vector<std::int64_t>(g.label(e).rep().entries().begin(), g.label(e).rep().entries().end())));
                 }
                 return out;
             })
        .def("__eq__", [](const GkmGraph& a, const GkmGraph& b) { return a == b; });

    m.def("families", [] {
        std::vector<std::string> out;
        for (const auto& c : all_cases()) out.push_back(c.str());
        return out;
    });
    m.def("realizable", [](const std::string& family) { return parse_case(family).realizable(); });
    m.def("valid_params", [](const std::string& family, const std::array<std::int64_t, 4>& l) {
        return valid_params(parse_case(family), labels_of(l)).violations;
    });
    m.def("build_graph", [](const std::string& family, const std::array<std::int64_t, 4>& l) {
        return build_case_graph(parse_case(family), labels_of(l));
    });
    m.def("validate", [](const GkmGraph& g) {
        std::vector<std::string> out;
        for (const auto& v : validate(g).violations) out.push_back(v.message);
        return out;
    });
    m.def("orientable_any", &orientable_any);
    m.def("classify", [](const GkmGraph& g, const std::vector<VertexId>& vertex_map) {
        py::list out;
        for (const auto& x : classify_all(g, standard_base(), vertex_map))
            out.append(py::make_tuple(x.label.str(), labels_tuple(x.labels)));
        return out;
    }, py::arg("graph"), py::arg("vertex_map") = family_vertex_map());
    m.def("clutching_number", [](const std::string& family, const std::array<std::int64_t, 4>& l) {
        return clutching_number_formula(BundleSpec::make(parse_case(family), labels_of(l)));
    });
    m.def("clutching_number_derived", [](const GkmGraph& g, const std::vector<VertexId>& vertex_map) {
        return clutching_number_derived(g, vertex_map);
    }, py::arg("graph"), py::arg("vertex_map") = family_vertex_map());
    m.def("homotopy_equivalent", &homotopy_equivalent);
    m.def("homeomorphic", &homeomorphic);
    m.def("ring_type", [](ClutchingNumber n) { return to_string(ring_type(n)); });
    m.def("max_extension", [](const std::string& family, const std::array<std::int64_t, 4>& l) {
        const auto r = max_extension(parse_case(family), labels_of(l));
        return py::make_tuple(r.max_rank, py::make_tuple(r.witness.k, r.witness.l, r.witness.m, r.witness.n));
    });
    m.def("gkm_k_degree", &gkm_k_degree);
    m.def("enumerate", [](std::int64_t box, std::size_t workers) {
        EnumerationOptions o;
        o.box = box;
        o.workers = workers;
        py::list out;
        for (const auto& r : enumerate_specs(o))
            out.append(py::make_tuple(r.spec.family.str(), labels_tuple(r.spec.labels), r.clutching));
        return out;
    }, py::arg("box"), py::arg("workers") = 1);
    m.def("petrie_pairs", [](std::int64_t box) {
        EnumerationOptions o;
        o.box = box;
        py::list out;
        for (const auto& p : find_petrie_pairs(o)) out.append(py::make_tuple(p.low, p.high));
        return out;
    });
    m.def("loads", [](const std::string& text) { return parse_graph(text).graph; });
    m.def("dumps", [](const GkmGraph& g) { return dump_graph(GraphFile{g, std::nullopt, std::nullopt}); });
}
