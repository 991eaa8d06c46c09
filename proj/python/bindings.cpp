#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wclass/asymptotics.hpp"
#include "wclass/multipliers.hpp"
#include "wclass/oracle.hpp"
#include "wclass/series_engine.hpp"
#include "wclass/special_functions.hpp"

namespace py = pybind11;
using namespace wclass;

PYBIND11_MODULE(_wclass, m) {
    py::register_exception<divergence_error>(m, "DivergenceError", PyExc_ArithmeticError);
    py::register_exception<slow_decay_error>(m, "SlowDecayError", PyExc_ValueError);
    py::register_exception<unsupported_family>(m, "UnsupportedFamily", PyExc_ValueError);

    m.def("gamma_fn", &gamma_fn);
    m.def("digamma", &digamma);
    m.def("hurwitz_zeta", &hurwitz_zeta);
    m.def("hurwitz_zeta_alternating", &hurwitz_zeta_alternating);
    m.def("cesaro_number", &cesaro_number);

    py::class_<Exp>(m, "Exp").def(py::init<>());
    py::class_<InversePower>(m, "InversePower")
        .def(py::init<double>(), py::arg("mu"))
        .def_readwrite("mu", &InversePower::mu);
    py::class_<RieszCutoff>(m, "RieszCutoff")
        .def(py::init<double>(), py::arg("mu"))
        .def_readwrite("mu", &RieszCutoff::mu);
    py::class_<QPolynomial>(m, "QPolynomial")
        .def(py::init([](std::vector<std::pair<double, double>> terms, double u) {
                 return QPolynomial{std::move(terms), u};
             }),
             py::arg("terms"), py::arg("u") = 1.0)
        .def_readwrite("terms", &QPolynomial::terms)
        .def_readwrite("u", &QPolynomial::u);

    m.def("eval_h", &eval_h);
    m.def("m_of_h", &m_of_h);
    m.def("gamma_m", &gamma_m, py::arg("family"), py::arg("m"), py::arg("rho"));

    py::enum_<Norm>(m, "Norm").value("one", Norm::one).value("infinity", Norm::infinity);
    py::class_<ClassParams>(m, "ClassParams")
        .def(py::init([](double r, int beta, int n, Norm p) { return ClassParams{r, beta, n, p}; }),
             py::arg("r") = 1.0, py::arg("beta") = 1, py::arg("n") = 1, py::arg("p") = Norm::one)
        .def_readwrite("r", &ClassParams::r)
        .def_readwrite("beta", &ClassParams::beta)
        .def_readwrite("n", &ClassParams::n)
        .def_readwrite("p", &ClassParams::p);
    py::class_<OperatorParams>(m, "OperatorParams")
        .def(py::init([](double alpha, double delta, double gamma, double rho) {
                 return OperatorParams{alpha, delta, gamma, rho};
             }),
             py::arg("alpha") = 1.0, py::arg("delta") = 1.0, py::arg("gamma") = 0.0, py::arg("rho") = 1.0)
        .def_readwrite("alpha", &OperatorParams::alpha)
        .def_readwrite("delta", &OperatorParams::delta)
        .def_readwrite("gamma", &OperatorParams::gamma)
        .def_readwrite("rho", &OperatorParams::rho);
    py::class_<ApproximationResult>(m, "ApproximationResult")
        .def_readonly("value", &ApproximationResult::value)
        .def_readonly("tail_bound", &ApproximationResult::tail_bound)
        .def_readonly("terms_used", &ApproximationResult::terms_used)
        .def_readonly("justification", &ApproximationResult::justification)
        .def_readonly("warnings", &ApproximationResult::warnings);

    m.def("approx_value", &approx_value, py::arg("cls"), py::arg("op"), py::arg("family"),
          py::arg("tol") = 1e-10);
    m.def("approx_value_plain", &approx_value_plain, py::arg("cls"), py::arg("op"), py::arg("family"),
          py::arg("tol") = 1e-10);
    m.def("check_applicability", &check_applicability);
    m.def("cesaro_value", &cesaro_value, py::arg("cls"), py::arg("m"), py::arg("alpha"),
          py::arg("tol") = 1e-10);
    m.def("fejer_constant", &fejer_constant);

    py::class_<ExpansionTerm>(m, "ExpansionTerm")
        .def_readonly("exponent", &ExpansionTerm::exponent)
        .def_readonly("has_log", &ExpansionTerm::has_log)
        .def_readonly("coefficient", &ExpansionTerm::coefficient)
        .def_readonly("log_coefficient", &ExpansionTerm::log_coefficient);
    py::class_<Expansion>(m, "Expansion")
        .def_readonly("prefactor", &Expansion::prefactor)
        .def_readonly("terms", &Expansion::terms)
        .def_readonly("truncation_order", &Expansion::truncation_order)
        .def_readonly("equality_region", &Expansion::equality_region)
        .def("__call__", &evaluate_expansion, py::arg("delta"));
    m.def("abel_expansion", &abel_expansion, py::arg("r"), py::arg("alpha"), py::arg("order"));
    m.def("abel_alternating_expansion", &abel_alternating_expansion, py::arg("r"), py::arg("alpha"),
          py::arg("order"));
    m.def("inverse_power_expansion", &inverse_power_expansion, py::arg("r"), py::arg("alpha"),
          py::arg("mu"), py::arg("alternating"), py::arg("order"));

    py::class_<PeriodicSamples>(m, "PeriodicSamples")
        .def_readonly("grid_size", &PeriodicSamples::grid_size)
        .def_readonly("values", &PeriodicSamples::values)
        .def("t", &PeriodicSamples::t);
    m.def(
        "operator_kernel_samples",
        [](const ClassParams& c, const OperatorParams& op, const MultiplierFamily& f, int N, double scale) {
            return synthesize_kernel(operator_kernel(c, op, f, scale), N);
        },
        py::arg("cls"), py::arg("op"), py::arg("family"), py::arg("N"), py::arg("scale") = 1.0);

    py::class_<L1Result>(m, "L1Result")
        .def_readonly("value", &L1Result::value)
        .def_readonly("poly_coeffs", &L1Result::poly_coeffs)
        .def_readonly("iterations", &L1Result::iterations);
    m.def("l1_best_approx", &l1_best_approx, py::arg("samples"), py::arg("n"));

    py::enum_<SignMode>(m, "SignMode").value("sine", SignMode::sine).value("cosine", SignMode::cosine);
    py::class_<SignReport>(m, "SignReport")
        .def_readonly("min_value", &SignReport::min_value)
        .def_readonly("tolerance", &SignReport::tolerance)
        .def_readonly("passed", &SignReport::pass);
    m.def("sign_condition_check", &sign_condition_check);
    m.def("cosine_t_star", &cosine_t_star);
    m.def("extremal_value", &extremal_value);
}
