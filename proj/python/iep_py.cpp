#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iep/cli.hpp"
#include "iep/error.hpp"
#include "iep/height.hpp"
#include "iep/poly.hpp"
#include "iep/search.hpp"
#include "iep/theorems.hpp"
#include "iep/version.hpp"

namespace py = pybind11;

namespace {

// Structured values cross the boundary as JSON text and are decoded by the
// Python wrapper.
std::string lemma_json(const std::string& id, std::int64_t p, std::int64_t q, std::int64_t r,
                       std::optional<std::int64_t> s, std::optional<std::uint64_t> samples, std::uint64_t seed) {
  const iep::Sampling sampling = samples ? iep::Sampling::random(*samples, seed) : iep::Sampling::exhaustive();
  return iep::to_json(iep::verify_lemma(id, {p, q, r}, iep::LemmaAux{s}, sampling)).dump();
}

std::string verify_json(const std::string& check, const std::vector<std::int64_t>& a) {
  auto need = [&](std::size_t n) {
    if (a.size() != n) throw iep::InvalidParameters(check + " takes " + std::to_string(n) + " integers");
  };
  iep::VerificationReport rep;
  if (check == "main") {
    need(4);
    rep = iep::verify_main_theorem(a[0], a[1], a[2], a[3]);
  } else if (check == "corollary") {
    need(4);
    rep = iep::verify_corollary(a[0], a[1], a[2], a[3]);
  } else if (check == "eq1.5") {
    need(4);
    rep = iep::verify_eq_1_5(a[0], a[1], a[2], a[3]);
  } else if (check == "eq1.6") {
    need(4);
    rep = iep::verify_eq_1_6(a[0], a[1], a[2], a[3]);
  } else if (check == "iterated") {
    need(3);
    rep = iep::verify_iterated_bound(a[0], a[1], static_cast<int>(a[2]));
  } else if (check == "eq1.11") {
    need(3);
    rep = iep::verify_height_bound({a[0], a[1], a[2]});
  } else {
    throw iep::InvalidParameters("unknown check " + check);
  }
  return iep::to_json(rep).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ternary inclusion-exclusion polynomials";
  m.attr("__version__") = std::string(iep::kVersion);

  py::register_exception<iep::Error>(m, "Error", PyExc_ValueError);

  m.def("degree", [](std::int64_t p, std::int64_t q, std::int64_t r) { return iep::degree({p, q, r}); });
  m.def(
      "coeffs",
      [](std::int64_t p, std::int64_t q, std::int64_t r, const std::string& engine) {
        const iep::Triple t{p, q, r};
        return iep::parse_engine(engine) == iep::EngineId::chi ? iep::coeffs_chi(t).coeffs : iep::coeffs_series(t).coeffs;
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("engine") = "series");
  m.def("height_json", [](std::int64_t p, std::int64_t q, std::int64_t r) { return iep::to_json_line(iep::height({p, q, r})); });
  m.def("coefficient_set",
        [](std::int64_t p, std::int64_t q, std::int64_t r) { return iep::coefficient_set({p, q, r}); });
  m.def("verify_json", &verify_json);
  m.def("lemma_json", &lemma_json, py::arg("id"), py::arg("p"), py::arg("q"), py::arg("r"), py::arg("s") = py::none(),
        py::arg("samples") = py::none(), py::arg("seed") = 0);
  m.def(
      "eq13_json",
      [](std::int64_t s, std::int64_t p_max, std::int64_t q_max) {
        return iep::to_json(iep::find_eq13_solutions(s, p_max, q_max)).dump();
      },
      py::arg("s"), py::arg("p_max"), py::arg("q_max"));
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        iep::cli::CommandOutcome out;
        {
          py::gil_scoped_release release;
          out = iep::cli::run(args);
        }
        return py::make_tuple(out.exit_code, py::bytes(out.rendered), out.diagnostics);
      },
      py::arg("args"));
}
