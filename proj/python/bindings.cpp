#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mimb/ci.hpp"
#include "mimb/dataset.hpp"
#include "mimb/hiton.hpp"
#include "mimb/mimb.hpp"
#include "mimb/network.hpp"
#include "mimb/report.hpp"
#include "mimb/theorem.hpp"

namespace py = pybind11;
using namespace mimb;

namespace {

using Names = std::vector<std::string>;
using NamedEdges = std::vector<std::pair<std::string, std::string>>;

InterventionFamily family_of(const Dag& dag, const std::vector<Names>& interventions) {
    InterventionFamily fam;
    for (const auto& s : interventions) fam.sets.push_back(dag.to_set(s));
    fam.validate(dag);
    return fam;
}

// Results cross the boundary as JSON text; the Python side parses it.
std::string run(CiBackend& backend, VarId t, const Names& names, const std::string& algo, double alpha,
                std::size_t max_cond, bool symmetry) {
    nlohmann::json report;
    if (algo == "mimb") {
        report = to_json(mimb::mimb(backend, t, MimbOptions{alpha, max_cond, symmetry, false}), names);
    } else if (algo == "baseline") {
        report = to_json(baseline(backend, t, HitonOptions{alpha, max_cond, symmetry}), names);
    } else {
        throw InputError("unknown algorithm '" + algo + "' (mimb, baseline)");
    }
    report["algorithm"] = algo;
    report["target"] = names.at(static_cast<std::size_t>(t));
    return report.dump();
}

}  // namespace

PYBIND11_MODULE(_mimb, m) {
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ConstraintError>(m, "ConstraintError", PyExc_RuntimeError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_AssertionError);

    py::class_<Dag>(m, "Dag")
        .def(py::init([](const Names& names, const NamedEdges& edges) { return Dag::from_names(names, edges); }),
             py::arg("names"), py::arg("edges"))
        .def_property_readonly("names", &Dag::names)
        .def_property_readonly("edges",
                               [](const Dag& d) {
                                   NamedEdges out;
                                   for (const auto& [a, b] : d.edges()) out.emplace_back(d.name(a), d.name(b));
                                   return out;
                               })
        .def("parents", [](const Dag& d, const std::string& v) { return d.to_names(d.parents(d.index_of(v))); })
        .def("children", [](const Dag& d, const std::string& v) { return d.to_names(d.children(d.index_of(v))); })
        .def("spouses", [](const Dag& d, const std::string& v) { return d.to_names(d.spouses(d.index_of(v))); })
        .def("markov_blanket",
             [](const Dag& d, const std::string& v) { return d.to_names(d.markov_blanket(d.index_of(v))); })
        .def("intervene", [](const Dag& d, const Names& targets) { return d.intervene(d.to_set(targets)); })
        .def(
            "d_separated",
            [](const Dag& d, const std::string& x, const std::string& y, const Names& z) {
                return is_d_separated(d, d.index_of(x), d.index_of(y), d.to_set(z));
            },
            py::arg("x"), py::arg("y"), py::arg("z") = Names{})
        .def("__len__", &Dag::size);

    m.def(
        "load_network", [](const std::string& path) { return load_network(path).dag(); }, py::arg("path"),
        "Graph of a network file.");

    m.def(
        "trace_fixture",
        []() {
            const auto [dag, fam] = reconstruct_trace_dag();
            std::vector<Names> iv;
            for (const auto& s : fam.sets) iv.push_back(dag.to_names(s));
            return std::make_pair(dag, iv);
        },
        "The worked-example graph and its three experiments.");

    m.def(
        "_discover_oracle",
        [](const Dag& dag, const std::vector<Names>& interventions, const std::string& target,
           const std::string& algo, std::size_t max_cond, bool symmetry) {
            OracleBackend backend(dag, family_of(dag, interventions));
            return run(backend, dag.index_of(target), dag.names(), algo, 0.01, max_cond, symmetry);
        },
        py::arg("dag"), py::arg("interventions"), py::arg("target"), py::arg("algo"), py::arg("max_cond"),
        py::arg("symmetry"));

    m.def(
        "_discover_manifest",
        [](const std::string& path, const std::string& target, const std::string& algo, double alpha,
           std::size_t max_cond, bool symmetry) {
            const auto man = load_manifest(path);
            const std::string name = !target.empty() ? target : man.target.value_or("");
            if (name.empty()) throw InputError("no target given and none in the manifest");
            const auto bundle = load_bundle(man);
            DataBackend backend(bundle);
            return run(backend, man.schema.index_of(name), man.schema.names, algo, alpha, max_cond, symmetry);
        },
        py::arg("path"), py::arg("target"), py::arg("algo"), py::arg("alpha"), py::arg("max_cond"),
        py::arg("symmetry"));

    m.def(
        "_verify_theorems",
        [](std::size_t trials, std::size_t lo, std::size_t hi, double edge_prob, std::uint64_t seed) {
            return to_json(fuzz_theorems(trials, lo, hi, edge_prob, seed)).dump();
        },
        py::arg("trials"), py::arg("min_nodes"), py::arg("max_nodes"), py::arg("edge_prob"), py::arg("seed"));

    m.def("chi_square_upper_tail", &chi_square_upper_tail, py::arg("statistic"), py::arg("dof"));
}
