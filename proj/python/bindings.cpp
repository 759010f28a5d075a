#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "obstructia/cli.hpp"
#include "obstructia/error.hpp"
#include "obstructia/homotopy.hpp"
#include "obstructia/opengraph.hpp"
#include "obstructia/setcat.hpp"
#include "obstructia/states.hpp"

namespace py = pybind11;
using namespace obstructia;

namespace {

struct Category {
    CategoryPtr ptr;

    Index object(const std::string& name) const { return ptr->object_index(name); }
    Index morphism(const std::string& name) const { return ptr->morphism_index(name); }
};

std::vector<std::string> objects_of(const Category& c) {
    std::vector<std::string> out;
    for (Index x = 0; x < c.ptr->object_count(); ++x) out.push_back(c.ptr->object_name(x));
    return out;
}

std::vector<std::string> morphisms_of(const Category& c) {
    std::vector<std::string> out;
    for (Index f = 0; f < c.ptr->morphism_count(); ++f) out.push_back(c.ptr->morphism_name(f));
    return out;
}

py::object elements_of(const ObstructionReport& r) {
    if (!r.invariant) return py::none();
    return py::cast(r.invariant->poset.elements());
}

py::object leq_of(const ObstructionReport& r) {
    if (!r.invariant) return py::none();
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [a, b] : r.invariant->poset.leq_pairs()) {
        out.emplace_back(r.invariant->poset.name(a), r.invariant->poset.name(b));
    }
    return py::cast(out);
}

py::object covers_of(const ObstructionReport& r) {
    if (!r.invariant) return py::none();
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [a, b] : hasse(r.invariant->poset)) {
        out.emplace_back(r.invariant->poset.name(a), r.invariant->poset.name(b));
    }
    return py::cast(out);
}

std::vector<std::pair<std::string, std::string>> relation_pairs(const Relation& r) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [a, b] : r.pairs) out.emplace_back(r.dom[a], r.cod[b]);
    return out;
}

StateObject state_object(const py::object& spec) {
    if (py::isinstance<py::int_>(spec)) return StateObject::gf2(spec.cast<std::size_t>());
    return StateObject::cartesian(spec.cast<std::vector<std::string>>());
}

}  // namespace

PYBIND11_MODULE(_obstructia, m) {
    m.doc() = "Homotopy posets of finite categories and obstructions to compositionality.";

    // Kept alive for the interpreter's lifetime, like the module itself.
    static py::handle error_type = py::exception<Error>(m, "ObstructiaError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = error_type(e.what());
            exc.attr("kind") = e.kind();
            exc.attr("witnesses") = std::vector<std::string>(e.witnesses().begin(), e.witnesses().end());
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    py::class_<ObstructionReport>(m, "Report")
        .def_readonly("context", &ObstructionReport::context)
        .def_readonly("basepoint", &ObstructionReport::basepoint)
        .def_readonly("minimal", &ObstructionReport::minimal)
        .def_readonly("trivial", &ObstructionReport::trivial)
        .def_readonly("element_count", &ObstructionReport::element_count)
        .def_property_readonly("elements", &elements_of)
        .def_property_readonly("leq", &leq_of)
        .def_property_readonly("covers", &covers_of)
        .def("to_json", &format_report_json)
        .def("to_text", &format_report_text)
        .def("to_dot", &format_report_dot)
        .def("__repr__", [](const ObstructionReport& r) {
            return "<Report " + r.context + (r.trivial ? " trivial>" : " with " + std::to_string(r.minimal.size()) +
                                                                       " minimal obstructions>");
        });

    py::class_<Category>(m, "Category")
        .def_static("parse", [](const std::string& text) { return Category{share(parse_category(text))}; })
        .def_property_readonly("objects", &objects_of)
        .def_property_readonly("morphisms", &morphisms_of)
        .def("hom", [](const Category& c, const std::string& a, const std::string& b) {
            std::vector<std::string> out;
            for (Index f : c.ptr->hom(c.object(a), c.object(b))) out.push_back(c.ptr->morphism_name(f));
            return out;
        })
        .def("compose", [](const Category& c, const std::string& f, const std::string& g) {
            return c.ptr->morphism_name(c.ptr->compose(c.morphism(f), c.morphism(g)));
        })
        .def("opposite", [](const Category& c) { return Category{share(opposite(*c.ptr))}; })
        .def("is_groupoid", [](const Category& c) { return is_groupoid(*c.ptr); })
        .def("to_text", [](const Category& c) { return format_category(*c.ptr); })
        .def("pi0", [](const Category& c, const std::string& x) { return pi0(*c.ptr, c.object(x)); }, py::arg("object"))
        .def("pi1", [](const Category& c, const std::string& x) { return pi1(c.ptr, c.object(x)); }, py::arg("object"))
        .def("is_weak_terminal", [](const Category& c, const std::string& x) { return is_weak_terminal(*c.ptr, c.object(x)); })
        .def("is_subterminal", [](const Category& c, const std::string& x) { return is_subterminal(*c.ptr, c.object(x)); })
        .def("is_terminal", [](const Category& c, const std::string& x) { return is_terminal(*c.ptr, c.object(x)); })
        .def("analyze", [](const Category& c, const std::string& f) {
            MorphismAnalysis a = analyze_morphism(c.ptr, c.morphism(f));
            py::dict d;
            d["pi0"] = a.pi0;
            d["pi1"] = a.pi1;
            d["split_epi"] = a.split_epi;
            d["mono"] = a.mono;
            d["iso"] = a.iso;
            return d;
        }, py::arg("morphism"));

    py::class_<FiniteFunction>(m, "Function")
        .def(py::init([](std::vector<std::string> dom, std::vector<std::string> cod,
                         const std::map<std::string, std::string>& mapping, std::string name) {
                 return FiniteFunction::make(std::move(name), std::move(dom), std::move(cod), mapping);
             }),
             py::arg("domain"), py::arg("codomain"), py::arg("mapping"), py::arg("name") = "f")
        .def_static("parse", &parse_function)
        .def_readonly("domain", &FiniteFunction::domain)
        .def_readonly("codomain", &FiniteFunction::codomain)
        .def("injective", &FiniteFunction::injective)
        .def("surjective", &FiniteFunction::surjective)
        .def("kernel_pair", [](const FiniteFunction& f) {
            std::vector<std::pair<std::string, std::string>> out;
            for (auto [a, b] : kernel_pair(f).pairs) out.emplace_back(f.domain[a], f.domain[b]);
            return out;
        })
        .def("pi0", [](const FiniteFunction& f) { return pi0_function(f); })
        .def("pi1", [](const FiniteFunction& f) { return pi1_function(f); })
        .def("to_text", &format_function);

    py::class_<OpenGraph>(m, "OpenGraph")
        .def_static("parse", &parse_open_graph)
        .def_readonly("inputs", &OpenGraph::inputs)
        .def_readonly("outputs", &OpenGraph::outputs)
        .def_readonly("vertices", &OpenGraph::vertices)
        .def("reach", [](const OpenGraph& g) { return relation_pairs(reach(g)); })
        .def("then", [](const OpenGraph& g, const OpenGraph& h) { return compose(g, h); })
        .def("isomorphic", [](const OpenGraph& a, const OpenGraph& b) { return isomorphic(a, b); })
        .def("to_text", &format_open_graph)
        .def("to_dot", [](const OpenGraph& g) { return open_graph_dot(g); });

    m.def("laxator", [](const OpenGraph& g, const OpenGraph& h) {
        Laxator l = laxator(g, h);
        return std::make_pair(relation_pairs(l.parts), relation_pairs(l.composite));
    });
    m.def("laxator_obstructions", [](const OpenGraph& g, const OpenGraph& h) { return laxator_obstructions(g, h); });
    m.def("pi1_laxator", &pi1_laxator);
    m.def("act", [](const OpenGraph& source, const OpenGraph& target, const std::map<std::string, std::string>& vmap,
                    const OpenGraph& h) {
        ActResult a = act(make_graph_hom(source, target, vmap), h);
        py::dict d;
        d["before"] = a.before;
        d["after"] = a.after;
        d["flow"] = a.flow.by_name();
        return d;
    }, py::arg("source"), py::arg("target"), py::arg("vertex_map"), py::arg("h"));

    m.def("state_obstructions", [](const py::object& a, const py::object& b) {
        StateObstructions o = obstructions(state_object(a), state_object(b));
        return std::make_pair(o.pi0, o.pi1);
    }, py::arg("a"), py::arg("b"), "Objects are GF(2) dimensions (int) or element lists (cartesian).");
    m.def("gf2_separable", &gf2_separable, py::arg("vector"), py::arg("m"), py::arg("n"));
    m.def("gf2_tensor", &gf2_tensor);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
