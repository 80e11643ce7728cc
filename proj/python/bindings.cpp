#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypoineq/config.hpp"
#include "hypoineq/errors.hpp"
#include "hypoineq/inequalities.hpp"
#include "hypoineq/kernels.hpp"
#include "hypoineq/report.hpp"
#include "hypoineq/trudinger_moser.hpp"

namespace py = pybind11;
using namespace hypoineq;

namespace {

py::dict ratio_dict(const RatioReport& r) {
    py::dict d;
    d["lhs"] = r.lhs.value;
    d["rhs"] = r.rhs.value;
    d["ratio"] = r.ratio;
    d["abs_error"] = r.ratio_error;
    d["method"] = method_name(r.lhs.method);
    d["spec"] = r.spec;
    py::dict extras;
    for (const auto& [k, v] : r.extras) extras[py::str(k)] = v;
    d["extras"] = extras;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hypoineq, m) {
    m.doc() = "Numerical checks of functional inequalities on homogeneous groups";
    m.attr("__version__") = kVersion;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
    py::register_exception<PreconditionViolation>(m, "PreconditionViolation", error.ptr());
    py::register_exception<DegenerateInput>(m, "DegenerateInput", error.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", error.ptr());

    m.def("list_suites", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& s : list_suites()) out.emplace_back(s.name, s.description);
        return out;
    });

    m.def(
        "run_json",
        [](const std::string& text, std::optional<std::uint64_t> seed, std::optional<int> jobs, bool with_timing) {
            auto cfg = parse_suite_config(text);
            if (seed) cfg.seed = *seed;
            if (jobs) cfg.jobs = *jobs;
            Report rep;
            {
                py::gil_scoped_release release;
                rep = run_suites(cfg);
            }
            return report_json(rep, with_timing);
        },
        py::arg("config"), py::arg("seed") = py::none(), py::arg("jobs") = py::none(), py::arg("with_timing") = true);

    m.def("job_seed", &job_seed, py::arg("base"), py::arg("job_name"));

    m.def(
        "ratio",
        [](const std::string& theorem, const std::string& norm, const std::map<std::string, double>& params,
           const std::string& family, const std::vector<double>& theta, int spectral_M) {
            InequalitySpec s;
            s.theorem = parse_theorem(theorem);
            s.norm = parse_norm_id(norm);
            s.params = params;
            s.spectral_M = spectral_M;
            const auto fam = make_family(family, s.norm.group(), s.norm);
            return ratio_dict(ratio(s, fam(theta.empty() ? fam.center() : theta)));
        },
        py::arg("theorem"), py::arg("norm"), py::arg("params"), py::arg("family") = "gaussian",
        py::arg("theta") = std::vector<double>{}, py::arg("spectral_M") = 128);

    m.def(
        "alpha_q",
        [](const std::string& norm) {
            const auto r = alpha_Q(parse_norm_id(norm));
            return py::dict(py::arg("Q") = r.Q, py::arg("c_Q") = r.c_Q, py::arg("alpha_Q") = r.alpha_Q);
        },
        py::arg("norm"));
    m.def("alpha_q_htype", &alpha_Q_htype, py::arg("k"), py::arg("l"));
    m.def("alpha_q_yang", &alpha_Q_yang, py::arg("n"));
    m.def("phi_truncated", &phi_truncated, py::arg("p"), py::arg("alpha"), py::arg("t"));

    m.def(
        "riesz_kernel",
        [](int n, double a, double r) { return riesz_kernel(HeatOperator(HomogeneousGroup::euclidean(n)), a, r); },
        py::arg("n"), py::arg("a"), py::arg("r"));
    m.def(
        "bessel_kernel",
        [](int n, double a, double r) { return bessel_kernel(HeatOperator(HomogeneousGroup::euclidean(n)), a, r); },
        py::arg("n"), py::arg("a"), py::arg("r"));

    m.def(
        "gamma_table",
        [](double p, const std::vector<double>& qs) {
            std::vector<std::pair<double, double>> out;
            for (const auto& row : gamma_asymptotic_check(p, qs).rows) out.emplace_back(row.q, row.ratio);
            return out;
        },
        py::arg("p"), py::arg("q_list"));
}
