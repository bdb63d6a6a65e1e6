#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rfcw/closed_forms.hpp"
#include "rfcw/gibbs_exact.hpp"
#include "rfcw/jobs.hpp"
#include "rfcw/phase_diagram.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  using namespace rfcw;
  m.doc() =
      "Rate functions, phase diagrams and exact finite-n verification for "
      "Curie-Weiss models with random external fields";

  py::class_<FieldModel>(m, "FieldModel")
      .def_static("constant", &FieldModel::constant, py::arg("h"))
      .def_static("dichotomous", &FieldModel::dichotomous, py::arg("h"),
                  py::arg("alpha") = 0.5)
      .def_static("uniform", &FieldModel::uniform, py::arg("h"))
      .def_static("finite_table", &FieldModel::finite_table,
                  py::arg("values"), py::arg("probs"))
      .def_static("markov_chain", &FieldModel::markov_chain,
                  py::arg("states"), py::arg("transition"),
                  py::arg("stationary"))
      .def_static("rotation", &FieldModel::rotation, py::arg("alpha"),
                  py::arg("h"))
      .def_static(
          "from_json",
          [](const std::string& text) {
            return FieldModel::from_json(nlohmann::json::parse(text));
          },
          py::arg("text"))
      .def("to_json",
           [](const FieldModel& self) { return self.to_json().dump(); })
      .def_property_readonly("variant",
                             [](const FieldModel& self) {
                               return to_string(self.law());
                             })
      .def_property_readonly("mean_field", &FieldModel::mean_field)
      .def_property_readonly("symmetric", &FieldModel::symmetric)
      .def("__eq__", [](const FieldModel& a, const FieldModel& b) {
        return a == b;
      }, py::is_operator())
      .def("__repr__", [](const FieldModel& self) {
        return "FieldModel(" + self.to_json().dump() + ")";
      });

  py::class_<FieldRealization>(m, "FieldRealization")
      .def_readonly("values", &FieldRealization::values)
      .def_readonly("seed", &FieldRealization::seed)
      .def_readonly("model", &FieldRealization::model);

  m.def("sample_fields", &sample_fields, py::arg("model"), py::arg("n"),
        py::arg("seed"));
  m.def("empirical_free_energy", &empirical_free_energy,
        py::arg("realization"), py::arg("x"), py::arg("beta"));

  py::class_<FreeEnergy>(m, "FreeEnergy")
      .def(py::init<FieldModel, double>(), py::arg("model"), py::arg("beta"))
      .def_property_readonly("beta", &FreeEnergy::beta)
      .def_property_readonly("mean_field", &FreeEnergy::mean_field)
      .def("value", &FreeEnergy::value, py::arg("x"))
      .def("derivative", &FreeEnergy::derivative, py::arg("k"), py::arg("x"));

  py::class_<Conjugate>(m, "Conjugate")
      .def(py::init<FreeEnergy, double>(), py::arg("free_energy"),
           py::arg("root_tol") = 1e-12)
      .def("value", &Conjugate::value, py::arg("x"))
      .def("maximizer", &Conjugate::maximizer, py::arg("x"))
      .def("log_mgf", &Conjugate::log_mgf, py::arg("x"))
      .def("q_rate", &Conjugate::q_rate, py::arg("x"))
      .def("biconjugate", &Conjugate::biconjugate, py::arg("x"));

  py::class_<RateFunction>(m, "RateFunction")
      .def(py::init<FieldModel, double, double>(), py::arg("model"),
           py::arg("beta"), py::arg("root_tol") = 1e-12)
      .def_property_readonly("beta", &RateFunction::beta)
      .def_property_readonly("inf_J", &RateFunction::inf_J)
      .def("rate", &RateFunction::rate, py::arg("x"))
      .def("J", &RateFunction::J, py::arg("x"))
      .def("G", &RateFunction::G, py::arg("x"))
      .def("G_deriv", &RateFunction::G_deriv, py::arg("k"), py::arg("x"));

  py::class_<MinimumReport>(m, "MinimumReport")
      .def_readonly("m", &MinimumReport::m)
      .def_readonly("k", &MinimumReport::k)
      .def_readonly("lam", &MinimumReport::lambda)
      .def_readonly("value", &MinimumReport::value)
      .def("__repr__", [](const MinimumReport& r) {
        return "MinimumReport(m=" + to_g17(r.m) + ", k=" + std::to_string(r.k) +
               ", lambda=" + to_g17(r.lambda) + ")";
      });

  m.def("find_global_minima", &find_global_minima, py::arg("rate_function"),
        py::arg("tol") = 1e-12, py::arg("grid_points") = 2001);
  m.def(
      "classify_phase",
      [](const RateFunction& rf) { return to_string(classify_phase(rf)); },
      py::arg("rate_function"));
  m.def(
      "critical_beta",
      [](const FieldModel& model, double beta_lo, double beta_hi,
         double tol) {
        return critical_beta(model, Interval{beta_lo, beta_hi}, tol);
      },
      py::arg("model"), py::arg("beta_lo"), py::arg("beta_hi"),
      py::arg("tol") = 1e-8);
  m.def(
      "tricritical_point",
      [](const std::function<FieldModel(double)>& family, double beta0,
         double h0) {
        const auto tp = tricritical_point(family, beta0, h0);
        return py::make_tuple(tp.beta, tp.h);
      },
      py::arg("family"), py::arg("beta0"), py::arg("h0"));

  m.def("cramer_entropy", &cramer_entropy, py::arg("x"));
  m.def("classical_rate", &classical_rate, py::arg("x"), py::arg("beta"),
        py::arg("h"));
  m.def("dichotomous_rate", &dichotomous_rate, py::arg("x"), py::arg("beta"),
        py::arg("h"));
  m.def("dilog", &dilog, py::arg("z"));
  m.def("uniform_G", &uniform_G, py::arg("x"), py::arg("beta"), py::arg("h"));

  py::class_<MagnetizationPMF>(m, "MagnetizationPMF")
      .def_readonly("n", &MagnetizationPMF::n)
      .def_readonly("log_probs", &MagnetizationPMF::log_probs)
      .def("probs", &MagnetizationPMF::probs)
      .def("support", [](const MagnetizationPMF& pmf) {
        std::vector<double> s(pmf.log_probs.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = pmf.support(i);
        return s;
      });

  m.def("product_pmf", &product_pmf, py::arg("realization"), py::arg("beta"));
  m.def("gibbs_pmf", &gibbs_pmf, py::arg("realization"), py::arg("beta"));
  m.def(
      "empirical_rate",
      [](const MagnetizationPMF& pmf, double lo, double hi) {
        return empirical_rate(pmf, Interval{lo, hi});
      },
      py::arg("pmf"), py::arg("lo"), py::arg("hi"));
  m.def("glauber_sample", &glauber_sample, py::arg("realization"),
        py::arg("beta"), py::arg("sweeps"), py::arg("seed"));

  m.def(
      "run_job",
      [](const std::string& config_json, const std::string& command) {
        const auto config =
            rfcw::parse_job_config(nlohmann::json::parse(config_json),
                                   command);
        const auto result = run_job(config);
        return py::make_tuple(result.output, result.summary, result.ok);
      },
      py::arg("config_json"), py::arg("command") = "");
}
