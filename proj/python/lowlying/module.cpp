#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lowlying/characters.hpp"
#include "lowlying/constants.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/experiments.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/mollifier.hpp"
#include "lowlying/report.hpp"
#include "lowlying/version.hpp"

namespace py = pybind11;
using namespace lowlying;
using cd = std::complex<double>;

namespace {

py::dict table_to_dict(const report::Table& t) {
    py::dict out;
    out["name"] = t.name;
    py::dict meta;
    for (auto& [k, v] : t.meta)
        std::visit([&](auto&& x) { meta[py::str(k)] = x; }, v);
    out["meta"] = meta;
    out["columns"] = t.columns;
    py::list rows;
    for (auto& row : t.rows) {
        py::list r;
        for (auto& v : row) std::visit([&](auto&& x) { r.append(x); }, v);
        rows.append(r);
    }
    out["rows"] = rows;
    return out;
}

} // namespace

PYBIND11_MODULE(_lowlying, m) {
    m.doc() = "Dirichlet L-function argument statistics and the explicit constants "
              "pipeline";
    m.attr("__version__") = lowlying::version;
    m.attr("C0") = constants::c0;

    py::register_exception<constraint_error>(m, "ConstraintError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_RuntimeError);

    // characters
    py::class_<characters::CharacterFamily>(m, "CharacterFamily")
        .def(py::init<std::uint32_t>(), py::arg("q"))
        .def_property_readonly("modulus", &characters::CharacterFamily::modulus)
        .def_property_readonly("generator", &characters::CharacterFamily::generator)
        .def_property_readonly("count", &characters::CharacterFamily::count)
        .def("value", &characters::CharacterFamily::value, py::arg("chi"), py::arg("n"))
        .def("parity", &characters::CharacterFamily::parity, py::arg("chi"))
        .def("conjugate_index", &characters::CharacterFamily::conjugate_index,
             py::arg("chi"));

    m.def(
        "gauss_sum",
        [](const characters::CharacterFamily& f, std::uint32_t chi) {
            auto g = characters::gauss_sum(f, chi);
            return py::make_tuple(g.tau, g.epsilon);
        },
        py::arg("family"), py::arg("chi"), "Gauss sum and root number (tau, epsilon)");

    // constants pipeline
    m.def("eta_constants", [](double eta) {
        auto e = constants::eta_constants(eta);
        return py::make_tuple(e.a, e.b1, e.b2);
    });
    m.def("mollifier_mean_constant", &constants::mollifier_mean_constant);
    m.def("big_c", [](double eta, double delta, double r, double v) {
        return constants::big_c(eta, delta, r, v);
    });
    m.def("h_of_k", [](int k) {
        auto h = constants::h_of_k(k);
        return py::make_tuple(h.value, h.delta_star);
    });
    m.def("big_d", [](double eta, double delta, double kappa, int k, double eps) {
        return constants::big_d(eta, delta, kappa, k, eps);
    });
    m.def("c0_pipeline", [](double kappa, double q) {
        return constants::c0_pipeline(kappa, q);
    });
    m.def("zero_density_coefficients", [](double kappa, double tau) {
        auto z = constants::zero_density_coefficients(kappa, tau);
        return py::make_tuple(z.full, z.simplified, z.a, z.b);
    });
    m.def("mean_square_bound", &constants::mean_square_bound);
    m.def("proportion_lower_bound", &constants::proportion_lower_bound);

    // L-function numerics
    m.def(
        "l_value",
        [](const characters::CharacterFamily& f, std::uint32_t chi, cd s) {
            return lfunc::l_value(f, chi, s);
        },
        py::arg("family"), py::arg("chi"), py::arg("s"));
    m.def(
        "s_of_t",
        [](const characters::CharacterFamily& f, std::uint32_t chi, double t) {
            return lfunc::s_of_t(f, chi, t).value;
        },
        py::arg("family"), py::arg("chi"), py::arg("t"));
    m.def(
        "critical_zeros",
        [](const characters::CharacterFamily& f, std::uint32_t chi, double height) {
            auto z = lfunc::critical_zeros(f, chi, height);
            return py::make_tuple(z.ordinates, z.validated);
        },
        py::arg("family"), py::arg("chi"), py::arg("height"),
        "(ordinates, validated) from the sign-change scan + argument principle");
    m.def("littlewood_identity_check",
          [](double a, double sigma_prime, double t1, double t2) {
              auto r = lfunc::littlewood_identity_check(a, sigma_prime, t1, t2);
              return py::make_tuple(r.lhs, r.rhs, r.zeros_in_window);
          });

    // mollifier machinery
    m.def("mollifier_coefficients", [](double xi) {
        arith::SievedTables sv(
            std::max<std::uint64_t>(4, static_cast<std::uint64_t>(xi * xi) + 1));
        return mollifier::build_mollifier(xi, sv).lambda;
    });
    m.def("gcd_double_sums", [](double xi) {
        arith::SievedTables sv(
            std::max<std::uint64_t>(4, static_cast<std::uint64_t>(xi * xi) + 1));
        auto s = mollifier::gcd_double_sums(mollifier::build_mollifier(xi, sv), sv);
        return py::make_tuple(s.s_gcd, s.s_log_n, s.s_log_gcd);
    });
    m.def("smoothed_lambda", [](std::uint64_t n, double x) {
        arith::SievedTables sv(std::max<std::uint64_t>(4, n + 1));
        return mollifier::smoothed_lambda(n, x, sv);
    });

    // experiments (dict-shaped reports)
    m.def(
        "average_s_experiment",
        [](std::uint32_t q, const std::vector<double>& t_grid) {
            characters::CharacterFamily f(q);
            return table_to_dict(experiments::average_s_experiment(f, t_grid));
        },
        py::arg("q"), py::arg("t_grid"));
    m.def(
        "mean_square_experiment",
        [](std::uint32_t q, double beta) {
            characters::CharacterFamily f(q);
            return table_to_dict(experiments::mean_square_experiment(f, beta));
        },
        py::arg("q"), py::arg("beta"));
    m.def(
        "first_zero_survey",
        [](std::uint32_t q) {
            characters::CharacterFamily f(q);
            return table_to_dict(experiments::first_zero_survey(f));
        },
        py::arg("q"));
}
