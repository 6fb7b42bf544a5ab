#include "diracspace/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/operators.h>

namespace py = pybind11;
using namespace diracspace;

namespace {

py::object fraction(const Rat& r) {
    return py::module_::import("fractions").attr("Fraction")(r.str());
}

py::dict record_dict(const CheckRecord& r) {
    py::dict out;
    out["check"] = r.check;
    out["status"] = r.pass ? "pass" : "fail";
    if (r.informational) out["informational"] = true;
    for (const auto& [k, v] : r.fields) std::visit([&, &k = k](const auto& x) { out[py::str(k)] = x; }, v);
    out["witnesses"] = r.witnesses;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact forms, Courant brackets, higher Dirac structures and their L-infinity algebras";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Poly>(m, "Poly")
        .def_static("parse", &parse_poly, py::arg("text"), py::arg("dim"))
        .def_property_readonly("dim", &Poly::dim)
        .def("is_zero", &Poly::is_zero)
        .def("__str__", &Poly::str)
        .def("__repr__", [](const Poly& f) { return "Poly('" + f.str() + "')"; })
        .def(py::self == py::self)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self);

    py::class_<Form>(m, "Form")
        .def_static("parse", &parse_form, py::arg("text"), py::arg("dim"), py::arg("degree"))
        .def_property_readonly("dim", &Form::dim)
        .def_property_readonly("degree", &Form::degree)
        .def("is_zero", &Form::is_zero)
        .def("d", [](const Form& a) { return d(a); })
        .def("wedge", [](const Form& a, const Form& b) { return wedge(a, b); })
        .def("interior", [](const Form& a, const VField& X) { return interior(X, a); })
        .def("evaluate", [](const Form& a, const std::vector<VField>& args) { return evaluate(a, args); })
        .def("__str__", &Form::str)
        .def("__repr__", [](const Form& a) { return "Form('" + a.str() + "')"; })
        .def(py::self == py::self)
        .def(py::self + py::self)
        .def(py::self - py::self);

    py::class_<VField>(m, "VField")
        .def_static("parse", &parse_vfield, py::arg("text"), py::arg("dim"))
        .def_property_readonly("dim", &VField::dim)
        .def("is_zero", &VField::is_zero)
        .def("bracket", [](const VField& X, const VField& Y) { return lie_bracket(X, Y); })
        .def("apply", &VField::apply)
        .def("__str__", &VField::str)
        .def("__repr__", [](const VField& X) { return "VField('" + X.str() + "')"; })
        .def(py::self == py::self);

    py::class_<SectionEp>(m, "Section")
        .def_static("parse", &parse_section, py::arg("text"), py::arg("dim"), py::arg("p"))
        .def_readonly("X", &SectionEp::X)
        .def_readonly("alpha", &SectionEp::alpha)
        .def_readonly("p", &SectionEp::p)
        .def("pairing", [](const SectionEp& a, const SectionEp& b) { return pairing(a, b); })
        .def("dorfman", [](const SectionEp& a, const SectionEp& b) { return dorfman(a, b); })
        .def("courant", [](const SectionEp& a, const SectionEp& b) { return courant(a, b); })
        .def("__str__", &SectionEp::str)
        .def("__repr__", [](const SectionEp& e) { return "Section('" + e.str() + "')"; })
        .def(py::self == py::self);

    py::class_<Presentation>(m, "Presentation")
        .def_static("parse", &parse_presentation, py::arg("text"))
        .def_property_readonly("kind", &Presentation::kind)
        .def_property_readonly("dim", &Presentation::dim)
        .def_property_readonly("p", &Presentation::p)
        .def_property_readonly("generators", &Presentation::generators)
        .def("is_isotropic", [](const Presentation& P) { return verify_isotropic(P).pass; })
        .def("is_involutive", [](const Presentation& P) { return verify_involutive(P).pass; });

    m.def(
        "parse",
        [](const std::string& text, int dim, std::optional<int> p) {
            Parsed a = parse_expression(text, {dim, p});
            py::dict out;
            out["kind"] = expr_kind(a.value);
            out["value"] = print_expression(a.value);
            out["warnings"] = a.warnings;
            return out;
        },
        py::arg("text"), py::arg("dim") = 3, py::arg("p") = py::none());

    m.def("getzler_coefficient", [](int n) { return fraction(getzler_coefficient(n)); }, py::arg("n"));
    m.def("getzler_twist_coefficient", [](int n) { return fraction(getzler_twist_coefficient(n)); }, py::arg("n"));

    m.def(
        "run",
        [](const std::string& command, int dim, std::optional<int> p, int r, const std::string& family,
           const std::string& H, std::optional<std::string> sigma, std::optional<std::string> B,
           std::optional<std::string> lambda, std::optional<std::string> presentation, std::optional<std::string> expr,
           int arity_max, int trials, std::uint64_t seed, bool allow_nonclosed, bool prequantize) {
            CheckSpec s;
            s.command = command;
            s.dim = dim;
            s.p = p;
            s.r = r;
            s.family = family;
            s.H = H;
            s.sigma = sigma;
            s.B = B;
            s.lambda = lambda;
            s.presentation = presentation;
            s.expr = expr;
            s.arity_max = arity_max;
            s.trials = trials;
            s.seed = seed;
            s.allow_nonclosed = allow_nonclosed;
            s.prequantize = prequantize;
            py::list out;
            for (const auto& rec : run_suite(s)) out.append(record_dict(rec));
            return out;
        },
        py::arg("command"), py::arg("dim") = 3, py::arg("p") = py::none(), py::arg("r") = 2,
        py::arg("family") = "getzler", py::arg("H") = "0", py::arg("sigma") = py::none(), py::arg("B") = py::none(),
        py::arg("lambda_") = py::none(), py::arg("presentation") = py::none(), py::arg("expr") = py::none(),
        py::arg("arity_max") = 0, py::arg("trials") = 20, py::arg("seed") = 0, py::arg("allow_nonclosed") = false,
        py::arg("prequantize") = false);
}
