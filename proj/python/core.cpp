#include <wg/parse.hpp>

#include "suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace wg;

namespace {

auto graph_tuple(const FinGraph& g) -> py::tuple
{
    return py::make_tuple(g.vertex_list(), std::vector<Edge>(g.e.begin(), g.e.end()));
}

auto answer_dict(const Answer& a, nat n) -> py::dict
{
    py::dict d;
    if (a.value)
        d["value"] = *a.value;
    if (a.stream)
        d["stream"] = a.stream->take(n);
    if (a.solution) {
        auto pre = read_solution(*a.solution, n);
        d["solution"] = graph_tuple(pre.copy);
        d["map"] = pre.map;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "graph problems on certified streams";
    // the module keeps the type alive; the translator only borrows it
    static PyObject* wg_error = nullptr;
    wg_error = py::exception<Error>(m, "WgError").ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const Error& e) {
            auto type = py::reinterpret_borrow<py::object>(wg_error);
            py::object inst = type(e.what());
            inst.attr("code") = errc_name(e.code());
            PyErr_SetObject(wg_error, inst.ptr());
        }
    });

    m.def("pair", &wg::pair);
    m.def("unpair", &unpair);
    m.def("str_code", &str_code);
    m.def("str_decode", &str_decode);
    m.def("tuple_code", &tuple_code);
    m.def("tuple_decode", &tuple_decode);

    py::class_<CertifiedStream>(m, "Stream")
        .def_static("parse", [](const std::string& s) { return CertifiedStream::parse(s); })
        .def("__call__", &CertifiedStream::eval)
        .def("take", &CertifiedStream::take)
        .def_property_readonly("spec", &CertifiedStream::spec)
        .def_property_readonly("certified", &CertifiedStream::certified)
        .def("__repr__", [](const CertifiedStream& s) { return "Stream(" + s.spec() + ")"; });
    m.def("exists_one", &exists_one);
    m.def("infinitely_often", &infinitely_often);
    m.def("eventually_always", &eventually_always);
    m.def("limit", &limit);

    m.def("truncate", [](const std::string& host, nat fuel) { return graph_tuple(truncate(parse_host(host), fuel)); },
        py::arg("host"), py::arg("fuel"));
    m.def("graph", [](const std::string& spec, nat n) { return graph_tuple(parse_graph(spec).truncate(n)); },
        py::arg("spec"), py::arg("n"));
    m.def("to_json", [](const std::string& spec) { return to_json(parse_pattern(spec)); });
    m.def("fin_subgraph",
        [](const std::string& g, const std::string& h, bool induced) {
            return fin_subgraph(parse_pattern(g), parse_pattern(h), induced);
        },
        py::arg("pattern"), py::arg("host"), py::arg("induced") = false);
    m.def("decide",
        [](const std::string& g, const std::string& h, bool induced, nat fuel) {
            auto v = semidecide_s(parse_pattern(g), parse_host(h), induced, fuel);
            py::dict d;
            d["verdict"] = verdict_name(v.kind);
            d["witness"] = v.witness;
            d["reason"] = v.reason;
            d["fuel_spent"] = v.fuel_spent;
            return d;
        },
        py::arg("pattern"), py::arg("host"), py::arg("induced") = false, py::arg("fuel") = 1000);

    m.def("problem_names", &problem_names);
    m.def("oracle",
        [](const std::string& name, std::optional<std::string> stream, std::optional<std::string> tree,
            std::optional<std::string> tower, std::optional<std::string> cn, std::optional<nat> fuel, nat n) {
            Instance in;
            if (stream)
                in.stream = CertifiedStream::parse(*stream);
            if (tree)
                in.tree = parse_tree(*tree);
            if (tower)
                in.tower = parse_tower(*tower);
            if (cn)
                in.cn = CnInstance{CertifiedStream::parse(*cn), {}};
            return answer_dict(oracle_call(problem(name), in, fuel), n);
        },
        py::arg("name"), py::kw_only(), py::arg("stream") = py::none(), py::arg("tree") = py::none(),
        py::arg("tower") = py::none(), py::arg("cn") = py::none(), py::arg("fuel") = py::none(),
        py::arg("n") = 10);

    m.def("suite_ids", &acceptance::suite_ids);
    m.def("run_suite",
        [](const std::string& id, nat seed) {
            auto r = acceptance::run_suite(id, seed);
            py::dict d;
            d["id"] = r.id;
            d["pass"] = r.pass;
            d["checks"] = r.checks;
            d["detail"] = r.detail;
            d["digest"] = r.digest;
            return d;
        },
        py::arg("id"), py::arg("seed") = 0);
}
