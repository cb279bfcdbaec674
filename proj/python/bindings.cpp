#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orlicz_lab/degiorgi.hpp"
#include "orlicz_lab/elliptic.hpp"
#include "orlicz_lab/measure.hpp"
#include "orlicz_lab/orlicz.hpp"
#include "orlicz_lab/scenarios.hpp"
#include "orlicz_lab/young.hpp"

namespace py = pybind11;
using namespace orlicz_lab;

namespace {

WeightFn weight_from(const std::string& kind, double alpha) {
  if (kind == "one") return weight_one();
  if (kind == "powerlaw") return weight_powerlaw(alpha);
  throw std::invalid_argument("weight kind must be 'one' or 'powerlaw'");
}

NodePlacement placement_from(const std::string& s) {
  if (s == "cell") return NodePlacement::CellCentered;
  if (s == "vertex") return NodePlacement::Vertex;
  throw std::invalid_argument("placement must be 'cell' or 'vertex'");
}

}  // namespace

PYBIND11_MODULE(orlicz_lab, m) {
  m.doc() = "Orlicz-space norms, degenerate elliptic solves and De Giorgi "
            "iteration on discrete weighted domains";

  py::class_<YoungParams>(m, "YoungParams")
      .def(py::init<double, double>(), py::arg("p"), py::arg("q"))
      .def_readwrite("p", &YoungParams::p)
      .def_readwrite("q", &YoungParams::q)
      .def("__repr__", [](const YoungParams& a) {
        return "YoungParams(p=" + std::to_string(a.p) +
               ", q=" + std::to_string(a.q) + ")";
      });

  m.def("young_eval", &young_eval, py::arg("params"), py::arg("t"));
  m.def("young_inverse", &young_inverse, py::arg("params"), py::arg("y"));
  m.def("conjugate_eval", &conjugate_eval, py::arg("params"), py::arg("t"));
  m.def("conjugate_inverse", &conjugate_inverse, py::arg("params"),
        py::arg("y"));
  m.def("conjugate_inverse_closed", &conjugate_inverse_closed,
        py::arg("params"), py::arg("y"));
  m.def("conjugate_exponent", &conjugate_exponent, py::arg("p"));
  m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("count"));
  m.def(
      "preceq_check",
      [](const YoungParams& a, const YoungParams& b,
         const std::vector<double>& grid) {
        const PreceqReport r = preceq_check(a, b, grid);
        return py::make_tuple(r.holds, r.c, r.t0);
      },
      py::arg("a"), py::arg("b"), py::arg("t_grid"),
      "returns (holds, c, t0)");

  py::class_<WeightedDomain>(m, "WeightedDomain")
      .def_readonly("nodes", &WeightedDomain::nodes)
      .def_readonly("cell_volumes", &WeightedDomain::cell_volumes)
      .def_readonly("weight", &WeightedDomain::weight)
      .def_readonly("total_mass", &WeightedDomain::total_mass)
      .def_readonly("geometric_volume", &WeightedDomain::geometric_volume)
      .def("__len__", &WeightedDomain::size);

  m.def(
      "interval",
      [](double a, double b, int cells, const std::string& placement,
         const std::string& wkind, double walpha) {
        return WeightedDomain::interval(a, b, cells,
                                        placement_from(placement),
                                        weight_from(wkind, walpha));
      },
      py::arg("a"), py::arg("b"), py::arg("cells"),
      py::arg("placement") = "cell", py::arg("weight") = "one",
      py::arg("alpha") = 0.0);
  m.def(
      "radial_ball",
      [](int n, double R, int cells, const std::string& placement,
         const std::string& wkind, double walpha) {
        return WeightedDomain::radial_ball(n, R, cells,
                                           placement_from(placement),
                                           weight_from(wkind, walpha));
      },
      py::arg("n"), py::arg("R"), py::arg("cells"),
      py::arg("placement") = "cell", py::arg("weight") = "one",
      py::arg("alpha") = 0.0);
  m.def(
      "radial_ball_graded",
      [](int n, double R, double r_min, int cpo, const std::string& placement,
         const std::string& wkind, double walpha) {
        return WeightedDomain::radial_ball_graded(
            n, R, r_min, cpo, placement_from(placement),
            weight_from(wkind, walpha));
      },
      py::arg("n"), py::arg("R"), py::arg("r_min"),
      py::arg("cells_per_octave"), py::arg("placement") = "cell",
      py::arg("weight") = "one", py::arg("alpha") = 0.0);

  m.def("integrate", &integrate, py::arg("dom"), py::arg("g"));
  m.def("lp_norm", &lp_norm, py::arg("dom"), py::arg("g"), py::arg("p"));
  m.def("linf_norm", &linf_norm, py::arg("dom"), py::arg("g"));
  m.def("level_set_measure", &level_set_measure, py::arg("dom"), py::arg("u"),
        py::arg("r"));
  m.def("a2_constant_estimate", &a2_constant_estimate, py::arg("dom"),
        py::arg("ball_family"));

  py::class_<NormReport>(m, "NormReport")
      .def_readonly("value", &NormReport::value)
      .def_readonly("modular_at_value", &NormReport::modular_at_value)
      .def_readonly("iterations", &NormReport::iterations);
  m.def(
      "luxemburg_norm",
      [](const WeightedDomain& dom, const ScalarField& f,
         const YoungParams& a) { return luxemburg_norm(dom, f, a); },
      py::arg("dom"), py::arg("f"), py::arg("params"));
  m.def("luxemburg_conjugate_norm", &luxemburg_conjugate_norm, py::arg("dom"),
        py::arg("f"), py::arg("params"));
  m.def("indicator_norm", &indicator_norm, py::arg("params"), py::arg("mass"));
  m.def(
      "holder_pairing",
      [](const WeightedDomain& dom, const ScalarField& f, const ScalarField& g,
         const YoungParams& a) {
        const HolderReport r = holder_pairing(dom, f, g, a);
        return py::make_tuple(r.lhs, r.rhs, r.holds);
      },
      py::arg("dom"), py::arg("f"), py::arg("g"), py::arg("params"),
      "returns (lhs, rhs, holds)");

  m.def(
      "solve_dirichlet",
      [](const WeightedDomain& dom, const ScalarField& f,
         const std::string& qkind, double qalpha, double rtol) {
        EllipticOperatorSpec spec =
            qkind == "uniform"
                ? EllipticOperatorSpec::uniform(dom)
                : EllipticOperatorSpec::a2_degenerate(dom, qalpha);
        return solve(assemble(spec, f), rtol);
      },
      py::arg("dom"), py::arg("f"), py::arg("Q") = "uniform",
      py::arg("alpha") = 0.0, py::arg("rtol") = 1e-10,
      "solve -div(Q grad u) = f v with homogeneous Dirichlet data");
  m.def(
      "estimate_C0",
      [](const WeightedDomain& dom, double sigma, const std::string& qkind,
         double qalpha) {
        EllipticOperatorSpec spec =
            qkind == "uniform"
                ? EllipticOperatorSpec::uniform(dom)
                : EllipticOperatorSpec::a2_degenerate(dom, qalpha);
        const SobolevReport r = estimate_C0(spec, sigma);
        return py::make_tuple(r.C0_lower, r.argmax_id);
      },
      py::arg("dom"), py::arg("sigma"), py::arg("Q") = "uniform",
      py::arg("alpha") = 0.0, "returns (C0_lower, argmax_id)");
  m.def("exp_transform", &exp_transform, py::arg("u"), py::arg("alpha"));
  m.def("exp_budget", &exp_budget, py::arg("gamma"), py::arg("C0"),
        py::arg("sigma"), py::arg("v_omega"));

  m.def("levels", &levels, py::arg("r0"), py::arg("epsilon"), py::arg("K"));
  m.def("tau0_threshold", &tau0_threshold, py::arg("C"), py::arg("epsilon"));
  m.def(
      "induction_verify",
      [](double m0, long K, double sigma, double q, double tau0, double C) {
        const double sp = conjugate_exponent(sigma);
        const InductionReport r =
            induction_verify(m0, K, sigma, q, q / sp - 1.0, tau0, C);
        return py::make_tuple(r.holds, r.first_failure);
      },
      py::arg("m0"), py::arg("K"), py::arg("sigma"), py::arg("q"),
      py::arg("tau0"), py::arg("C"), "returns (holds, first_failure)");
  m.def(
      "exponent_triple",
      [](double sigma, double theta) {
        const ExponentTriple t = exponent_triple(sigma, theta);
        return py::make_tuple(t.beta, t.b, t.b_bar, t.p, t.gamma_check);
      },
      py::arg("sigma"), py::arg("theta") = 0.5,
      "returns (beta, b, b_bar, p, gamma_check)");
  m.def(
      "build_ledger",
      [](const WeightedDomain& dom, const ScalarField& u, double r0,
         double epsilon, int K) {
        const DeGiorgiLedger l = build_ledger(dom, u, r0, epsilon, K);
        py::list rows;
        for (const LedgerRow& r : l.rows)
          rows.append(py::make_tuple(r.k, r.C_k, r.mu_k, r.m_k));
        return rows;
      },
      py::arg("dom"), py::arg("u"), py::arg("r0"), py::arg("epsilon"),
      py::arg("K"), "rows of (k, C_k, mu_k, m_k)");

  m.def(
      "run_scenario",
      [](const std::string& config_path, const std::string& out_dir) {
        ScenarioConfig cfg = ScenarioConfig::parse_file(config_path);
        const ScenarioResult res = run_scenario(cfg, out_dir);
        return py::make_tuple(res.pass, res.out_dir);
      },
      py::arg("config_path"), py::arg("out_dir") = "",
      "returns (pass, out_dir)");
}
