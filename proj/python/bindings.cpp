#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "natmono/error.hpp"
#include "natmono/monodromy.hpp"
#include "natmono/okubo.hpp"
#include "natmono/propagator.hpp"
#include "natmono/sweep.hpp"
#include "natmono/verify.hpp"

namespace py = pybind11;
using namespace natmono;

namespace {

PropagationConfig make_config(double t_max_factor, double rel_tol, double abs_tol) {
  PropagationConfig cfg;
  cfg.t_max_factor = t_max_factor;
  cfg.integrator.rel_tol = rel_tol;
  cfg.integrator.abs_tol = abs_tol;
  return cfg;
}

py::dict result_dict(const PropagationResult& r) {
  py::dict d;
  d["probability"] = r.probability;
  d["populations"] = r.populations;
  d["final_state"] = ComplexVector(r.final_state.amplitudes);
  d["norm_drift"] = r.norm_drift;
  d["t_max"] = r.t_max_used;
  d["preparation_error"] = r.preparation_error;
  d["steps"] = r.stats.accepted;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transition probabilities of the sech/tanh two-level model";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<TwoLevelParams>(m, "TwoLevelParams")
      .def(py::init([](double E0, double E1, double V0, double T) { return TwoLevelParams{E0, E1, V0, T}; }),
           py::arg("E0"), py::arg("E1"), py::arg("V0"), py::arg("T") = 1.0)
      .def_readwrite("E0", &TwoLevelParams::E0)
      .def_readwrite("E1", &TwoLevelParams::E1)
      .def_readwrite("V0", &TwoLevelParams::V0)
      .def_readwrite("T", &TwoLevelParams::T)
      .def("validate", &TwoLevelParams::validate)
      .def("__repr__", [](const TwoLevelParams& p) {
        return "TwoLevelParams(E0=" + format_number(p.E0) + ", E1=" + format_number(p.E1) +
               ", V0=" + format_number(p.V0) + ", T=" + format_number(p.T) + ")";
      });

  m.def("from_scaled", [](double eps0, double eps1, double v, double T) { return from_scaled({eps0, eps1, v}, T); },
        py::arg("eps0"), py::arg("eps1"), py::arg("v"), py::arg("T") = 1.0);
  m.def("to_scaled", [](const TwoLevelParams& p) {
    const ScaledParams s = to_scaled(p);
    return py::make_tuple(s.eps0, s.eps1, s.v);
  });

  m.def("probability", [](double eps0, double eps1, double v) { return transition_probability(ScaledParams{eps0, eps1, v}); },
        py::arg("eps0"), py::arg("eps1"), py::arg("v"));
  m.def("transition_probability", py::overload_cast<const TwoLevelParams&>(&transition_probability));
  m.def("transition_probability_assembled", &transition_probability_assembled);
  m.def("excited_amplitude", &excited_amplitude);
  m.def("extremal_probabilities", [](const TwoLevelParams& p) {
    const auto e = extremal_probabilities(p);
    return py::make_tuple(e.p_min, e.p_max);
  });

  m.def("monodromy", [](const TwoLevelParams& p) {
    const HypParams h = hyp_params(p);
    const MonodromyData md = global_monodromy(h);
    py::dict d;
    d["alpha"] = h.alpha;
    d["beta"] = h.beta;
    d["gamma"] = h.gamma;
    d["S"] = md.S;
    d["Gamma"] = md.Gamma;
    d["Rtilde"] = md.Rtilde;
    d["a"] = md.a;
    d["a_prime"] = md.a_prime;
    return d;
  });
  m.def("numeric_monodromy", [](const TwoLevelParams& p, bool clockwise) {
    NumericMonodromyOptions opts;
    if (clockwise) opts.orientation = LoopOrientation::Clockwise;
    return numeric_monodromy(hyp_params(p), {1e-12, 1e-14}, opts);
  }, py::arg("params"), py::arg("clockwise") = false);

  m.def("propagate", [](const TwoLevelParams& p, double t_max_factor, double rel_tol, double abs_tol) {
    return result_dict(propagate(Model{p}, make_config(t_max_factor, rel_tol, abs_tol)));
  }, py::arg("params"), py::arg("t_max_factor") = 40.0, py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12);

  m.def("propagate_multilevel", [](double E1, double T, const std::vector<double>& couplings) {
    return result_dict(propagate(Model{MultiLevelParams{E1, T, couplings}}));
  }, py::arg("E1"), py::arg("T"), py::arg("couplings"));

  m.def("class_invariance", [](double E0T, double E1T, double V0T, const std::vector<std::string>& profiles,
                               bool class2) {
    std::vector<ProfileKind> kinds;
    for (const auto& name : profiles) kinds.push_back(profile_from_string(name));
    const auto rep = class_invariance_check({E0T, E1T, V0T}, kinds, {},
                                            class2 ? ModelClass::Class2 : ModelClass::Class1);
    py::dict d;
    d["probabilities"] = rep.probabilities;
    d["max_pairwise_diff"] = rep.max_pairwise_diff;
    d["tolerance"] = rep.tolerance;
    d["passed"] = rep.passed;
    return d;
  }, py::arg("E0T"), py::arg("E1T"), py::arg("V0T"),
     py::arg("profiles") = std::vector<std::string>{"sinh", "linear", "linear_cubic"}, py::arg("class2") = false);

  m.def("okubo_probability", [](double E1, double T, const std::vector<double>& couplings,
                                const std::vector<double>& lambda) {
    return okubo_transition_probability({E1, T, couplings}, lambda, {1e-12, 1e-14});
  }, py::arg("E1"), py::arg("T"), py::arg("couplings"), py::arg("lambda"));

  m.def("okubo_lambda_independence", [](double E1, double T, const std::vector<double>& couplings,
                                        const std::vector<double>& la, const std::vector<double>& lb) {
    const auto rep = lambda_independence_check({E1, T, couplings}, la, lb, {1e-12, 1e-14});
    return py::make_tuple(rep.max_diff, rep.max_diff_direct);
  });

  m.def("limit", [](const TwoLevelParams& p, const std::string& kind) {
    LimitKind k;
    if (kind == "rosen_zener") k = LimitKind::RosenZener;
    else if (kind == "demkov_kunike") k = LimitKind::DemkovKunike;
    else if (kind == "landau_zener") k = LimitKind::LandauZener;
    else throw Error(ErrorCode::InvalidArgument, "unknown limit '" + kind + "'");
    return limit_formula(p, k).value;
  });

  m.def("suite_names", &suite_names);
  m.def("run_suite_json", [](const std::string& name, std::uint64_t seed) {
    return to_json(run_suite(name, seed)).dump();
  }, py::arg("name"), py::arg("seed") = 1);
}
