#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "proxima/checkers.hpp"
#include "proxima/corpus.hpp"
#include "proxima/error.hpp"
#include "proxima/oracle.hpp"
#include "proxima/problem_file.hpp"
#include "proxima/proximity.hpp"
#include "proxima/report.hpp"
#include "proxima/solver.hpp"

namespace py = pybind11;
using namespace proxima;

namespace {

std::vector<std::vector<double>> rows(const std::vector<Point>& pts) {
    std::vector<std::vector<double>> out;
    for (const auto& p : pts) out.emplace_back(p.coords().begin(), p.coords().end());
    return out;
}

Point to_point(const std::vector<double>& v) { return Point(v); }

SolverOptions solver_options(double conv_tol, std::size_t max_iters, unsigned threads) {
    SolverOptions o;
    o.conv_tol = conv_tol;
    o.max_iters = max_iters;
    o.scan.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of the proxima package";

    auto base = py::register_exception<Error>(m, "ProximaError", PyExc_ValueError);
    py::register_exception<FileError>(m, "FileError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
    py::register_exception<EvalError>(m, "EvalError", base.ptr());

    m.def("parse_expression", [](const std::string& s) { return expr::Expression::parse(s).to_string(); },
          "Parse and return the fully parenthesised form");
    m.def("evaluate", [](const std::string& s, const std::map<std::string, double>& bindings) {
        return expr::evaluate(expr::Expression::parse(s), bindings);
    });

    py::class_<ProblemInstance>(m, "Instance")
        .def_readonly("name", &ProblemInstance::name)
        .def_readonly("eps_eq", &ProblemInstance::eps_eq)
        .def_property_readonly("eps_range", [](const ProblemInstance& i) { return i.eps_range; })
        .def_property_readonly("dimension", &ProblemInstance::dimension)
        .def_property_readonly("re", [](const ProblemInstance& i) { return rows(i.re.points()); })
        .def_property_readonly("omega", [](const ProblemInstance& i) { return rows(i.omega.points()); })
        .def_property_readonly("phi", [](const ProblemInstance& i) { return i.phi.expression().source(); })
        .def_property_readonly("has_mapping", [](const ProblemInstance& i) { return i.mapping.has_value(); })
        .def("__repr__", [](const ProblemInstance& i) {
            return "<Instance " + i.name + " |re|=" + std::to_string(i.re.size()) +
                   " |omega|=" + std::to_string(i.omega.size()) + ">";
        });

    m.def("builtin_names", &builtin_names);
    m.def("load_builtin", [](const std::string& n) { return load_builtin(n).instance; });
    m.def("load_problem_file", [](const std::filesystem::path& p) { return load_problem_file(p); });
    m.def("load_problem_text", [](const std::string& t) { return load_problem_text(t); });
    m.def("validate_text", [](const std::string& t) {
        std::vector<std::pair<int, std::string>> out;
        for (const auto& d : validate_text(t).diagnostics) out.emplace_back(d.line, d.message);
        return out;
    });
    m.def("export_problem", &export_problem);
    m.def("equivalent", &equivalent);
    m.def("random_instance", &random_instance, py::arg("seed"), py::arg("points") = 20);

    m.def("d_phi", [](const ProblemInstance& i, unsigned threads) { return d_phi(i, ScanOptions{threads}); },
          py::arg("instance"), py::arg("threads") = 1);
    m.def("proximal_subsets", [](const ProblemInstance& i) {
        const auto s = proximal_subsets(i);
        return py::make_tuple(rows(s.re_points(i)), rows(s.omega_points(i)));
    });
    m.def("apply_F", [](const ProblemInstance& i, const std::vector<double>& x) {
        const auto p = apply_F(i, to_point(x));
        return std::vector<double>(p.coords().begin(), p.coords().end());
    });
    m.def("residual", [](const ProblemInstance& i, const std::vector<double>& x) { return residual(i, to_point(x)); });
    m.def("definitions", [] {
        std::vector<std::string> out;
        for (auto d : all_definitions()) out.emplace_back(definition_name(d));
        return out;
    });

    m.def(
        "check_json",
        [](const ProblemInstance& i, const std::string& def, unsigned threads) {
            return report::to_json(run_check(parse_definition(def), i, ScanOptions{threads})).dump();
        },
        py::arg("instance"), py::arg("definition"), py::arg("threads") = 1);
    m.def(
        "solve_json",
        [](const ProblemInstance& i, std::optional<std::vector<double>> start, double conv_tol,
           std::size_t max_iters, unsigned threads) {
            std::optional<Point> s;
            if (start) s = to_point(*start);
            const auto trace = iterate(i, s, solver_options(conv_tol, max_iters, threads));
            auto j = report::to_json(trace);
            report::json pts = report::json::array();
            for (const auto& p : trace.points) pts.push_back(report::point_json(p));
            j["points"] = pts;
            j["step_gaps"] = trace.step_gaps;
            return j.dump();
        },
        py::arg("instance"), py::arg("start") = py::none(), py::arg("conv_tol") = 1e-9,
        py::arg("max_iters") = 10000, py::arg("threads") = 1);
    m.def(
        "oracle_json",
        [](const ProblemInstance& i, unsigned threads) {
            return report::to_json(oracle_vs_solver(i, solver_options(1e-9, 10000, threads))).dump();
        },
        py::arg("instance"), py::arg("threads") = 1);
    m.def(
        "corpus_json",
        [](unsigned threads) {
            const auto entries = builtin_corpus();
            return report::to_json(run_regressions(entries, ScanOptions{threads})).dump();
        },
        py::arg("threads") = 1);
}
