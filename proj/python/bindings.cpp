// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hybrid/contmach.hpp"
#include "hybrid/miniml.hpp"
#include "hybrid/query.hpp"
#include "hybrid/suites.hpp"

namespace py = pybind11;
using namespace hybrid;

namespace {

Expr closed(const std::string& text) { return encode(miniml_signature(), {}, parse_term(miniml_signature(), text)); }

std::optional<std::string> show(const Expr& e) { return show_term(e); }

py::dict query(const std::string& goal, const std::string& ol, const std::string& sl, std::uint32_t bound,
               std::size_t max_solutions, const std::string& strategy, bool json, bool show_height) {
    QueryOptions o;
    o.ol = parse_ol(ol);
    o.sl = parse_sl(sl);
    o.cfg.bound = bound;
    o.cfg.max_solutions = max_solutions;
    if (strategy == "iddfs")
        o.cfg.strategy = Strategy::iddfs;
    else if (strategy != "dfs")
        throw usage_error("unknown strategy '" + strategy + "'");
    o.json = json;
    o.show_height = show_height;
    std::ostringstream out, err;
    int rc = run_query(o, goal, out, err);
    py::dict d;
    d["status"] = rc;
    d["output"] = out.str();
    d["errors"] = err.str();
    return d;
}

}  // namespace

PYBIND11_MODULE(_hybrid, m) {
    m.doc() = "Two-level logical framework engine";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<unbound_name>(m, "UnboundName", PyExc_ValueError);
    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
    py::register_exception<invalid_abstraction>(m, "InvalidAbstraction", PyExc_ValueError);
    py::register_exception<non_proper_argument>(m, "NonProperArgument", PyExc_ValueError);

    py::class_<Expr>(m, "Expr")
        .def_static("var", &Expr::var)
        .def_static("bnd", &Expr::bnd)
        .def_static("app", &Expr::app)
        .def_static("abs", &Expr::abs)
        .def("__eq__", [](const Expr& a, const Expr& b) { return a == b; })
        .def("__hash__", &Expr::hash)
        .def("__repr__", [](const Expr& e) { return to_string(e); })
        .def_property_readonly("size", [](const Expr& e) { return size(e); })
        .def_property_readonly("proper", [](const Expr& e) { return proper(e); });

    m.def("level", &level, py::arg("i"), py::arg("e"));
    // Abstractions are passed as their bodies.
    m.def("abstr", [](const Expr& body) { return abstr(Abstraction{body}); });
    m.def("lbind", [](std::uint32_t i, const Expr& body) { return lbind(i, Abstraction{body}); });
    m.def("lambda_", [](const Expr& body) { return lambda(Abstraction{body}); });
    m.def("instantiate", [](const Expr& body, const Expr& arg) { return instantiate(Abstraction{body}, arg); });
    m.def("match_abstraction", [](const Expr& e) -> std::optional<Expr> {
        auto a = match_abstraction(e);
        if (!a) return std::nullopt;
        return a->body;
    });

    m.def("term", &closed, py::arg("text"), "Encode a closed Mini-ML term");
    m.def("encode", [](const std::string& text, const VarContext& ctx) {
        return encode(miniml_signature(), ctx, parse_term(miniml_signature(), text));
    }, py::arg("text"), py::arg("ctx") = VarContext{});
    m.def("decode", [](const Expr& e, const VarContext& ctx) -> std::optional<std::string> {
        auto n = decode(miniml_signature(), ctx, e);
        if (!n) return std::nullopt;
        return print_term(miniml_signature(), *n);
    }, py::arg("e"), py::arg("ctx") = VarContext{});
    m.def("show", &show, py::arg("e"));

    m.def("evaluate", [](const std::string& text, std::uint64_t fuel) -> std::optional<std::string> {
        NamedTerm n = parse_term(miniml_signature(), text);
        NameHints h;
        collect_name_hints(miniml_signature(), {}, n, h);
        auto v = meta_eval(encode(miniml_signature(), {}, n), fuel);
        if (!v) return std::nullopt;
        return show_term(*v, &h);
    }, py::arg("text"), py::arg("fuel") = kDefaultFuel);
    m.def("machine", [](const std::string& text, std::uint64_t fuel) -> std::optional<std::string> {
        NamedTerm n = parse_term(miniml_signature(), text);
        NameHints h;
        collect_name_hints(miniml_signature(), {}, n, h);
        auto v = machine_run(encode(miniml_signature(), {}, n), fuel);
        if (!v) return std::nullopt;
        return show_term(*v, &h);
    }, py::arg("text"), py::arg("fuel") = 2000);
    m.def("principal_type", [](const std::string& text) -> std::optional<std::string> {
        auto t = ground_principal_type(closed(text));
        if (!t) return std::nullopt;
        return print_type(*t);
    }, py::arg("text"));

    m.def("query", &query, py::arg("goal"), py::arg("ol") = "miniml", py::arg("sl") = "hh", py::arg("bound") = 10,
          py::arg("max_solutions") = 1, py::arg("strategy") = "dfs", py::arg("json") = false,
          py::arg("show_height") = false);

    m.def("suite_names", &suite_names);
    m.def("run_suite", [](const std::string& name, std::uint64_t seed, std::size_t samples) {
        SuiteOptions o;
        o.seed = seed;
        o.samples = samples;
        SuiteReport r;
        {
            py::gil_scoped_release nogil;
            r = run_named_suite(name, o);
        }
        py::dict d;
        d["suite"] = r.suite;
        d["run"] = r.run;
        d["passed"] = r.passed;
        d["failed"] = r.failed;
        d["inconclusive"] = r.inconclusive;
        d["skipped"] = r.skipped;
        d["diagnostics"] = r.diagnostics;
        d["ok"] = r.ok();
        return d;
    }, py::arg("name"), py::arg("seed") = 42, py::arg("samples") = 0);
}
