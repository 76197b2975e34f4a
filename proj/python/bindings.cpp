#include "flagspec/asymptotics.hpp"
#include "flagspec/block_spectra.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/flag_laplacian.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace flagspec;

namespace {

py::object to_py_int(const BigInt& z) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(to_string(z).c_str(), nullptr, 10));
}

py::list spectrum_list(const SpectrumReport& rep) {
  py::list out;
  for (const auto& e : rep.eigenvalues) {
    py::dict d;
    d["value"] = e.value;
    d["lo"] = to_string(e.lo);
    d["hi"] = to_string(e.hi);
    d["multiplicity"] = to_py_int(e.multiplicity);
    d["block_k"] = e.block_k;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_flagspec, m) {
  m.doc() = "Spectra of weighted Laplacians on flag complexes over finite fields";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  m.def("q_binomial", [](long a, long b, std::uint64_t q) { return to_py_int(q_binomial(a, b, q)); },
        py::arg("a"), py::arg("b"), py::arg("q"));

  m.def("block_char_poly", [](int n, std::uint32_t q, int k) {
    const auto p = char_poly_exact(build_block(n, q, k));
    std::vector<std::string> coeffs;
    for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(to_string(p.coefficient(i)));
    return coeffs;
  }, py::arg("n"), py::arg("q"), py::arg("k"), "Ascending coefficients of det(tI - L_k) as 'p/q' strings.");

  m.def("block_multiplicity", [](int n, std::uint32_t q, int k) { return to_py_int(block_multiplicity(n, q, k)); },
        py::arg("n"), py::arg("q"), py::arg("k"));

  m.def("block_spectrum", [](int n, std::uint32_t q, double precision) {
    return spectrum_list(spectrum_via_blocks(n, q, precision));
  }, py::arg("n"), py::arg("q"), py::arg("precision") = 1e-12);

  m.def("numeric_spectrum", [](int n, std::uint32_t q, int k, double cluster_tol, std::size_t cap) {
    return spectrum_list(numeric_spectrum(assemble_laplacian(n, q, k), cluster_tol, cap));
  }, py::arg("n"), py::arg("q"), py::arg("k") = 0, py::arg("cluster_tol") = 1e-7,
     py::arg("cap") = kDefaultMaxNumeric);

  m.def("reconcile", [](int n, std::uint32_t q, double tol) {
    const auto r = reconcile(n, q, tol);
    py::dict d;
    d["pass"] = r.pass;
    d["max_distance"] = r.max_distance;
    d["total"] = to_py_int(r.expected_total);
    d["diff"] = r.diff;
    return d;
  }, py::arg("n"), py::arg("q"), py::arg("tol") = 1e-8);

  m.def("distinct_count", [](int n, std::uint32_t q) {
    const auto d = distinct_count(n, q);
    return py::make_tuple(d.count, d.bound);
  }, py::arg("n"), py::arg("q"), "(count, floor(n^2/4) + 2)");

  m.def("fibo_roots", [](int m) {
    std::vector<double> out;
    for (const auto& r : fibo_roots_closed_form(m)) out.push_back(static_cast<double>(r.value));
    return out;
  }, py::arg("m"));

  m.def("perm_counts", [](int m, int l) {
    const auto r = perm_counts(m, l);
    return py::make_tuple(r.min_excess, to_py_int(r.extremal_count));
  }, py::arg("m"), py::arg("l"));

  m.def("containment", [](int n, const std::vector<std::uint32_t>& primes, std::optional<double> C) {
    const double c = C ? *C : calibrate_C(n, primes);
    const auto rep = verify_containment(n, primes, c);
    py::dict d;
    d["C"] = c;
    d["q0"] = rep.q0 ? py::object(py::int_(*rep.q0)) : py::object(py::none());
    py::dict per_q;
    for (const auto& at : rep.per_q) per_q[py::int_(at.q)] = at.pass;
    d["pass"] = per_q;
    return d;
  }, py::arg("n"), py::arg("primes"), py::arg("C") = std::nullopt);
}
