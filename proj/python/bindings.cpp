#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gtrans/errors.hpp"
#include "gtrans/quadrature.hpp"
#include "gtrans/spectral.hpp"
#include "gtrans/verify.hpp"

namespace py = pybind11;
using namespace gtrans;

namespace {

// Accepts a Function, a number (constant) or any Python callable.
FunctionHandle as_handle(const py::object& f)
{
    if (py::isinstance<FunctionHandle>(f))
        return f.cast<FunctionHandle>();
    if (py::isinstance<py::float_>(f) || py::isinstance<py::int_>(f))
        return FunctionHandle::constant(f.cast<double>());
    if (!PyCallable_Check(f.ptr()))
        throw py::type_error("expected a gtrans.Function, a number or a callable");
    return FunctionHandle([f](double x) { return f(x).cast<double>(); }, "python");
}

Exponent as_exponent(const py::object& p)
{
    if (py::isinstance<py::str>(p))
        return Exponent::parse(p.cast<std::string>());
    const double v = p.cast<double>();
    return std::isinf(v) ? Exponent::infinity() : Exponent::finite(v);
}

SpaceParams space(const py::object& p, double alpha, double mu)
{
    return {as_exponent(p), alpha, mu};
}

py::dict report_dict(const VerificationReport& r)
{
    py::dict d;
    d["name"] = r.name;
    d["kind"] = r.kind;
    d["control"] = r.control;
    d["grid"] = r.grid;
    d["max_deviation"] = r.max_deviation;
    d["tolerance"] = r.tolerance;
    d["ratio_min"] = r.ratio_min;
    d["ratio_max"] = r.ratio_max;
    d["passed"] = r.passed;
    d["as_expected"] = r.as_expected();
    d["detail"] = r.detail;
    return d;
}

py::list reports_list(const std::vector<VerificationReport>& rs)
{
    py::list out;
    for (const auto& r : rs)
        out.append(report_dict(r));
    return out;
}

py::dict experiment_dict(const ExperimentOutput& e)
{
    py::list tables;
    for (const auto& t : e.tables) {
        py::dict d;
        d["name"] = t.name;
        d["columns"] = t.columns;
        d["rows"] = t.rows;
        tables.append(d);
    }
    py::dict out;
    out["tables"] = tables;
    out["reports"] = reports_list(e.reports);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Generalized translation operators on [-1, 1] and weighted approximation";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<FunctionHandle>(m, "Function")
        .def("__call__", &FunctionHandle::operator(), py::arg("x"))
        .def_property_readonly("label", &FunctionHandle::label)
        .def_property_readonly("breakpoints", &FunctionHandle::breakpoints)
        .def_property_readonly("coeffs",
                               [](const FunctionHandle& f) -> py::object {
                                   if (!f.polynomial())
                                       return py::none();
                                   return py::cast(f.polynomial()->coeffs());
                               })
        .def("__repr__", [](const FunctionHandle& f) { return "<gtrans.Function " + f.label() + ">"; });

    m.def("function", [](const py::object& f, std::vector<double> breakpoints, std::string label) {
        return as_handle(f).with_breakpoints(std::move(breakpoints)).with_label(std::move(label));
    }, py::arg("f"), py::arg("breakpoints") = std::vector<double>{}, py::arg("label") = "python",
       "Wrap a Python callable (or a number) as a Function; breakpoints mark kinks.");

    m.def("polynomial", [](std::vector<double> coeffs, double mu) {
        return FunctionHandle::polynomial(PolynomialCoeffs({mu, mu}, std::move(coeffs)));
    }, py::arg("coeffs"), py::arg("mu"), "sum_k c_k R_k^{(mu,mu)}");

    m.def("corpus", [](const std::string& name, double gamma, double s, int terms, double mu,
                       std::vector<double> coeffs, std::string csv) {
        CorpusParams p;
        p.gamma = gamma;
        p.s = s;
        p.terms = terms;
        p.mu = mu;
        p.coeffs = std::move(coeffs);
        p.csv_path = csv;
        return corpus(name, p).handle;
    }, py::arg("name"), py::arg("gamma") = 1.0, py::arg("s") = 1.0, py::arg("terms") = 16, py::arg("mu") = 1.0,
       py::arg("coeffs") = std::vector<double>{}, py::arg("csv") = "");

    m.def("corpus_catalog", &corpus_catalog);

    m.def("jacobi", [](int n, double a, double b, double x) { return jacobi_eval(n, {a, b}, x); },
          py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"), "R_n^{(a,b)}(x) = P_n(x) / P_n(1)");

    m.def("gauss_jacobi", [](int m_, double a, double b) {
        const QuadratureRule& r = gauss_jacobi_rule(m_, {a, b});
        return py::make_tuple(r.nodes, r.weights);
    }, py::arg("m"), py::arg("a"), py::arg("b"));

    m.def("sl_eigenvalue", [](int k, double nu, double mu) { return sl_eigenvalue(k, {nu, mu}); },
          py::arg("k"), py::arg("nu"), py::arg("mu"));

    m.def("translate", [](const py::object& f, double t, double mu, double x) {
        return asym_translate(as_handle(f), t, mu, x);
    }, py::arg("f"), py::arg("t"), py::arg("mu"), py::arg("x"), "the asymmetric translation tau_t(f, x)");

    m.def("sym_translate", [](const py::object& f, double y, double mu, double x) {
        return sym_translate(as_handle(f), y, mu, x);
    }, py::arg("f"), py::arg("y"), py::arg("mu"), py::arg("x"), "the symmetric translation T_y(f, x)");

    m.def("weighted_norm", [](const py::object& f, const py::object& p, double alpha) {
        return weighted_norm(as_handle(f), as_exponent(p), alpha);
    }, py::arg("f"), py::arg("p"), py::arg("alpha"));

    m.def("modulus", [](const py::object& f, double delta, const py::object& p, double alpha, double mu) {
        return modulus(as_handle(f), delta, space(p, alpha, mu)).value;
    }, py::arg("f"), py::arg("delta"), py::arg("p"), py::arg("alpha"), py::arg("mu"));

    m.def("k_functional", [](const py::object& f, double delta, const py::object& p, double alpha, double mu) {
        return k_functional(as_handle(f), delta, space(p, alpha, mu)).value;
    }, py::arg("f"), py::arg("delta"), py::arg("p"), py::arg("alpha"), py::arg("mu"));

    m.def("best_approx", [](const py::object& f, int n, const py::object& p, double alpha, double mu) {
        const BestApproxResult r = best_approx(as_handle(f), n, space(p, alpha, mu));
        py::dict d;
        d["value"] = r.value;
        d["error_estimate"] = r.error_estimate;
        d["method"] = r.method;
        d["coeffs"] = r.coeffs.coeffs();
        d["alternation"] = r.alternation;
        d["warnings"] = r.warnings;
        return d;
    }, py::arg("f"), py::arg("n"), py::arg("p"), py::arg("alpha"), py::arg("mu"),
       "E_n(f)_{p,alpha}: distance to polynomials of degree <= n-1");

    m.def("jackson_operator", [](const py::object& f, int n, double mu) {
        const JacksonResult r = jackson_operator(as_handle(f), make_jackson_spec(n, mu));
        return py::make_tuple(FunctionHandle::polynomial(r.coeffs), r.above_degree_mass);
    }, py::arg("f"), py::arg("n"), py::arg("mu"), "(Q_n f, above-degree mass)");

    m.def("markov_bernstein", [](std::vector<double> coeffs, double mu, const py::object& p, double alpha, double rho) {
        const MarkovBernsteinRatios r =
            markov_bernstein_check(PolynomialCoeffs({mu, mu}, std::move(coeffs)), as_exponent(p), alpha, rho);
        return py::make_tuple(r.r1, r.r2);
    }, py::arg("coeffs"), py::arg("mu"), py::arg("p"), py::arg("alpha"), py::arg("rho"));

    m.def("verify_translation_identities",
          [](std::vector<double> mus, int n_max, int x_points, int t_points, bool include_controls) {
              IdentitySuiteConfig cfg;
              cfg.mus = std::move(mus);
              cfg.n_max = n_max;
              cfg.x_points = x_points;
              cfg.t_points = t_points;
              cfg.include_controls = include_controls;
              return reports_list(verify_translation_identities(cfg));
          },
          py::arg("mus") = std::vector<double>{1.0, 2.0, 3.0}, py::arg("n_max") = 20, py::arg("x_points") = 41,
          py::arg("t_points") = 41, py::arg("include_controls") = true);

    m.def("jackson_experiment", [](const std::string& name, const py::object& p, double alpha, double mu,
                                   std::vector<int> ns, double s, double gamma) {
        CorpusParams cp;
        cp.mu = mu;
        cp.s = s;
        cp.gamma = gamma;
        JacksonExperimentConfig cfg;
        cfg.ns = std::move(ns);
        return experiment_dict(run_jackson_experiment(corpus(name, cp), space(p, alpha, mu), cfg));
    }, py::arg("name"), py::arg("p"), py::arg("alpha"), py::arg("mu"), py::arg("ns"), py::arg("s") = 1.0,
       py::arg("gamma") = 1.0);

    m.def("exit_code", [](const py::list& reports) {
        for (const auto& r : reports)
            if (!r.cast<py::dict>()["as_expected"].cast<bool>())
                return 1;
        return 0;
    }, py::arg("reports"));

    m.def("kernel_self_test", []() { kernel_self_test(); });
}
