#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "switchcap/capacity.hpp"
#include "switchcap/channel.hpp"
#include "switchcap/errors.hpp"
#include "switchcap/linalg.hpp"
#include "switchcap/state.hpp"
#include "switchcap/switch_oracle.hpp"

namespace py = pybind11;
using namespace switchcap;

namespace {

using ComplexArray = py::array_t<complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const ComplexArray& a) {
  if (a.ndim() != 2) throw DimensionMismatch("expected a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0));
  const auto c = static_cast<std::size_t>(a.shape(1));
  return ComplexMatrix(r, c, std::vector<complex>(a.data(), a.data() + r * c));
}

ComplexArray to_array(const ComplexMatrix& m) {
  ComplexArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

DensityMatrix to_state(const ComplexArray& a) { return DensityMatrix(to_matrix(a)); }

ControlAmplitudes amplitudes_or_uniform(const std::optional<std::vector<double>>& c, std::size_t m) {
  return c ? ControlAmplitudes(*c) : ControlAmplitudes::uniform(m);
}

std::vector<std::vector<std::size_t>> as_lists(const OrderSet& s) { return s.orders(); }

OrderSet make_orders(const std::vector<std::vector<std::size_t>>& orders) {
  if (orders.empty()) throw InvalidOrderSet("empty order set");
  return OrderSet(orders.front().size(), orders);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Holevo quantity of completely depolarizing channels in a quantum switch";

  auto base = py::register_exception<Error>(m, "SwitchcapError", PyExc_ValueError);
  py::register_exception<SizeGuard>(m, "SizeGuardError", base.ptr());

  py::class_<CapacityReport>(m, "CapacityReport")
      .def_readonly("m_orders", &CapacityReport::m_orders)
      .def_readonly("dim", &CapacityReport::dim)
      .def_readonly("s_min", &CapacityReport::s_min)
      .def_readonly("s_control", &CapacityReport::s_control)
      .def_readonly("chi", &CapacityReport::chi)
      .def("__repr__", [](const CapacityReport& r) {
        return "CapacityReport(m_orders=" + std::to_string(r.m_orders) + ", dim=" + std::to_string(r.dim) +
               ", chi=" + py::repr(py::float_(r.chi)).cast<std::string>() + ")";
      });

  m.def("holevo", &holevo, py::arg("m"), py::arg("d"));
  m.def("s_min", &s_min, py::arg("m"), py::arg("d"));
  m.def("control_entropy", &control_entropy, py::arg("m"), py::arg("d"));
  m.def("asymptotic_limit", &asymptotic_limit, py::arg("d"));
  m.def(
      "output_spectrum",
      [](std::size_t mo, std::size_t d, std::vector<double> rho_spectrum) {
        return output_spectrum(mo, d, make_spectrum(std::move(rho_spectrum))).values;
      },
      py::arg("m"), py::arg("d"), py::arg("rho_spectrum"));

  m.def(
      "von_neumann_entropy",
      [](const ComplexArray& rho) { return von_neumann_entropy(hermitian_spectrum(to_matrix(rho))); },
      py::arg("rho"), "Entropy in bits of a Hermitian unit-trace matrix.");

  m.def(
      "depolarize",
      [](const ComplexArray& rho) {
        const auto state = to_state(rho);
        return to_array(depolarize(weyl_basis(state.dim()), state).matrix());
      },
      py::arg("rho"));

  m.def("cyclic_orders", [](std::size_t n) { return as_lists(cyclic_orders(n)); }, py::arg("n"));
  m.def("all_orders", [](std::size_t n) { return as_lists(all_orders(n)); }, py::arg("n"));

  m.def(
      "apply_switch",
      [](const std::vector<std::vector<std::size_t>>& orders, const ComplexArray& rho,
         const std::optional<std::vector<double>>& amplitudes, std::size_t jobs) {
        const auto set = make_orders(orders);
        const auto state = to_state(rho);
        const auto c = amplitudes_or_uniform(amplitudes, set.size());
        ComplexMatrix out(0, 0);
        {
          py::gil_scoped_release release;
          out = apply_switch(set, weyl_basis(state.dim()), c, state, jobs).state.matrix();
        }
        return to_array(out);
      },
      py::arg("orders"), py::arg("rho"), py::arg("amplitudes") = py::none(), py::arg("jobs") = 1,
      "Brute-force switch output, control (x) target, Weyl depolarizing channels.");

  m.def(
      "analytic_output_state",
      [](const ComplexArray& rho, std::size_t m_orders, const std::optional<std::vector<double>>& amplitudes) {
        return to_array(analytic_output_state(amplitudes_or_uniform(amplitudes, m_orders), to_state(rho)));
      },
      py::arg("rho"), py::arg("m"), py::arg("amplitudes") = py::none());

  m.def(
      "holevo_oracle",
      [](const std::vector<std::vector<std::size_t>>& orders, std::size_t d, std::size_t samples,
         std::uint64_t seed) {
        const auto set = make_orders(orders);
        py::gil_scoped_release release;
        return holevo_oracle(set, weyl_basis(d), samples, seed);
      },
      py::arg("orders"), py::arg("d"), py::arg("samples") = 64, py::arg("seed") = 42);

  m.def(
      "kraus_completeness",
      [](const std::vector<std::vector<std::size_t>>& orders, std::size_t d) {
        return check_completeness(build_switch_kraus(make_orders(orders), weyl_basis(d)));
      },
      py::arg("orders"), py::arg("d"), "max |sum K^dag K - I| for the switch Kraus set.");

  m.def(
      "det_factorization_residual",
      [](std::size_t m_orders, const ComplexArray& rho) {
        const auto state = to_state(rho);
        return det_factorization_residual(m_orders, state.dim(), state, ControlAmplitudes::uniform(m_orders));
      },
      py::arg("m"), py::arg("rho"));
}
