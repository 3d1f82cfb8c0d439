#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "doublewell/caustics.hpp"
#include "doublewell/density.hpp"
#include "doublewell/elliptic.hpp"
#include "doublewell/spectral.hpp"
#include "doublewell/trajectories.hpp"
#include "doublewell/validate.hpp"

namespace py = pybind11;
using Cx = std::complex<double>;

namespace {

std::string kind_name(dw::traj::Kind k, int order) {
    switch (k) {
        case dw::traj::Kind::GlobalMin: return "global_min";
        case dw::traj::Kind::LocalMin: return "local_min";
        case dw::traj::Kind::ComplexPair: return "complex_pair";
        default: return "saddle_" + std::to_string(order);
    }
}

py::dict effpot_dict(const dw::density::EffectivePotential& pot) {
    py::dict d;
    if (const auto* p3 = std::get_if<dw::density::ThreeExtrema>(&pot)) {
        d["variant"] = "three_extrema";
        d["xi"] = p3->xi;
        d["mu"] = p3->mu;
    } else {
        const auto& p1 = std::get<dw::density::ComplexPair>(pot);
        d["variant"] = "complex_pair";
        d["chi"] = p1.chi;
        d["phi"] = p1.phi;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_doublewell, m) {
    m.doc() = "semiclassical thermal density of the quartic double well";

    // specfun
    m.def("carlson_rf", &dw::specfun::carlson_rf, py::arg("x"), py::arg("y"), py::arg("z"));
    m.def("carlson_rd", &dw::specfun::carlson_rd, py::arg("x"), py::arg("y"), py::arg("z"));
    m.def("legendre_K", [](Cx k) { return dw::specfun::legendre_K(k); }, py::arg("k"));
    m.def("legendre_E", [](Cx k) { return dw::specfun::legendre_E(k); }, py::arg("k"));
    m.def("legendre_F", [](Cx phi, Cx k) { return dw::specfun::legendre_F(phi, k); },
          py::arg("phi"), py::arg("k"));
    m.def("legendre_E_inc", [](Cx phi, Cx k) { return dw::specfun::legendre_E_inc(phi, k); },
          py::arg("phi"), py::arg("k"));
    m.def("jacobi_sn", [](Cx u, Cx k) { return dw::specfun::jacobi_sn(u, k); });
    m.def("jacobi_cn", [](Cx u, Cx k) { return dw::specfun::jacobi_cn(u, k); });
    m.def("jacobi_dn", [](Cx u, Cx k) { return dw::specfun::jacobi_dn(u, k); });
    m.def("jacobi_cd", [](Cx u, Cx k) { return dw::specfun::jacobi_cd(u, k); });

    // trajectories
    py::class_<dw::traj::TrajectorySolution>(m, "TrajectorySolution")
        .def_readonly("q_t", &dw::traj::TrajectorySolution::q_t)
        .def_readonly("q0", &dw::traj::TrajectorySolution::q0)
        .def_readonly("action_I", &dw::traj::TrajectorySolution::action_I)
        .def_readonly("det_delta", &dw::traj::TrajectorySolution::det_delta)
        .def_readonly("branch_index", &dw::traj::TrajectorySolution::branch_index)
        .def_property_readonly("kind",
                               [](const dw::traj::TrajectorySolution& s) {
                                   return kind_name(s.kind, s.saddle_order);
                               })
        .def("__repr__", [](const dw::traj::TrajectorySolution& s) {
            return "<TrajectorySolution q_t=(" + std::to_string(s.q_t.real()) + "," +
                   std::to_string(s.q_t.imag()) + ") " + kind_name(s.kind, s.saddle_order) + ">";
        });

    m.def("q0_of_qt", [](Cx qt, double th) { return dw::traj::q0_of_qt(qt, th); },
          py::arg("q_t"), py::arg("theta"));
    m.def("dq0_dqt", [](Cx qt, double th) { return dw::traj::dq0_dqt(qt, th); },
          py::arg("q_t"), py::arg("theta"));
    m.def("find_real_turning_points", &dw::traj::find_real_turning_points, py::arg("q0"),
          py::arg("theta"));
    m.def("find_complex_pair", &dw::traj::find_complex_pair, py::arg("q0"), py::arg("theta"));
    m.def("solution_set", &dw::traj::solution_set, py::arg("q0"), py::arg("theta"));
    m.def("action", &dw::traj::action, py::arg("q_t"), py::arg("q0"), py::arg("theta"));
    m.def("fluct_det", &dw::traj::fluct_det, py::arg("q_t"), py::arg("q0"), py::arg("theta"),
          py::arg("g"));
    m.def("periodic_saddle", &dw::traj::periodic_saddle, py::arg("q0"), py::arg("theta"));

    // caustics
    m.def("caustic_lower", &dw::caustics::caustic_lower, py::arg("theta"));
    m.def("amplitude_A", &dw::caustics::amplitude_A, py::arg("theta"), py::arg("m") = 1);
    m.def("classify_region", [](double q0, double th) {
        auto r = dw::caustics::classify_region(q0, th);
        const char* side = r.side == dw::caustics::Side::OneSolution    ? "one_solution"
                           : r.side == dw::caustics::Side::ThreeSolution ? "three_solution"
                           : r.side == dw::caustics::Side::PeriodicRegion ? "periodic_region"
                           : r.side == dw::caustics::Side::OnFirst        ? "on_first"
                                                                          : "on_second";
        return py::make_tuple(r.n_solutions, side);
    });

    // density
    py::class_<dw::density::DensityPoint>(m, "DensityPoint")
        .def_readonly("q0", &dw::density::DensityPoint::q0)
        .def_readonly("theta", &dw::density::DensityPoint::theta)
        .def_readonly("g", &dw::density::DensityPoint::g)
        .def_readonly("rho_usual", &dw::density::DensityPoint::rho_usual)
        .def_readonly("usual_on_caustic", &dw::density::DensityPoint::usual_on_caustic)
        .def_readonly("rho_improved", &dw::density::DensityPoint::rho_improved)
        .def_readonly("f_factor", &dw::density::DensityPoint::f_factor)
        .def_readonly("n_solutions", &dw::density::DensityPoint::n_solutions)
        .def_property_readonly("effpot", [](const dw::density::DensityPoint& p) {
            return effpot_dict(p.effpot);
        });

    m.def("rho_usual", &dw::density::rho_usual, py::arg("q0"), py::arg("theta"), py::arg("g"));
    m.def("rho_improved", &dw::density::rho_improved, py::arg("q0"), py::arg("theta"),
          py::arg("g"));
    m.def("solve_xi", &dw::density::solve_xi, py::arg("ratio"));
    m.def("fluctuation_factor_three", [](double xi, double mu) {
        return dw::density::fluctuation_factor(dw::density::ThreeExtrema{xi, mu});
    });
    m.def("fluctuation_factor_complex", [](double chi, double phi) {
        return dw::density::fluctuation_factor(dw::density::ComplexPair{chi, phi});
    });

    // oracle
    m.def(
        "exact_rho_diag",
        [](double g, double theta, double q_min, double q_max, int n_points) {
            dw::oracle::GridSpec grid;
            grid.q_min = q_min;
            grid.q_max = q_max;
            grid.n_points = n_points;
            auto sol = dw::oracle::exact_rho_diag({g, theta}, grid);
            return py::make_tuple(sol.grid, sol.rho, sol.energies);
        },
        py::arg("g"), py::arg("theta"), py::arg("q_min") = -4.0, py::arg("q_max") = 4.0,
        py::arg("n_points") = 2048);

    // acceptance
    m.def("run_acceptance", [](std::vector<std::string> only) {
        dw::validate::Options opts;
        opts.only = std::move(only);
        py::list out;
        for (const auto& r : dw::validate::run_acceptance(opts)) {
            py::dict d;
            d["id"] = r.id;
            d["passed"] = r.passed;
            d["measured"] = r.measured;
            d["threshold"] = r.threshold;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    }, py::arg("only") = std::vector<std::string>{});
}
