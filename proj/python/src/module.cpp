#include "qclust/bases.hpp"
#include "qclust/cli.hpp"
#include "qclust/expression.hpp"
#include "qclust/multiplication.hpp"
#include "qclust/serialize.hpp"
#include "qclust/triangular.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace qclust;

namespace {

ChebyshevKind chebyshev_kind(const std::string& k) {
  if (k == "F") return ChebyshevKind::F;
  if (k == "S") return ChebyshevKind::S;
  throw std::invalid_argument("kind must be 'F' or 'S'");
}

// Heavy verifiers release the GIL; results cross as JSON text.
template <class F>
std::string report_json(F&& f) {
  Report r;
  {
    py::gil_scoped_release nogil;
    r = f();
  }
  return to_json(r).dump();
}

}  // namespace

PYBIND11_MODULE(_qclust, m) {
  m.doc() = "Exact arithmetic in the quantum cluster algebra A_q(1,4)";

  py::register_exception<StructuralViolation>(m, "StructuralViolation", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<TorusElement>(m, "Torus")
      .def(py::init<>())
      .def(py::init([](const std::string& text) { return parse_torus(text); }), py::arg("text"))
      .def_static("monomial", [](int a, int b) { return TorusElement::monomial(a, b); })
      .def("__str__", [](const TorusElement& x) { return to_string(x); })
      .def("__repr__", [](const TorusElement& x) { return "Torus('" + to_string(x) + "')"; })
      .def("__len__", &TorusElement::size)
      .def("__bool__", [](const TorusElement& x) { return !x.is_zero(); })
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def("scaled", [](const TorusElement& x, int half_exp) { return x.scaled(QLaurent::monomial(half_exp)); },
           py::arg("half_exp"), "Multiply by q^{half_exp/2}.")
      .def("bar", [](const TorusElement& x) { return bar(x); })
      .def("is_positive", [](const TorusElement& x) { return is_positive(x); })
      .def("min_terms",
           [](const TorusElement& x) {
             std::vector<std::pair<int, int>> out;
             for (ExponentPair e : min_terms(x)) out.emplace_back(e.a, e.b);
             return out;
           })
      .def("to_json", [](const TorusElement& x) { return to_json(x).dump(); })
      .def_static("from_json", [](const std::string& s) { return torus_from_json(Json::parse(s)); });

  m.def("cluster_var", [](int i, int frame) { return cluster_var(i, Frame{frame}); }, py::arg("m"),
        py::arg("frame") = 1);
  m.def("x_delta", [](int frame) { return x_delta(Frame{frame}); }, py::arg("frame") = 1);
  m.def("chebyshev", [](const std::string& kind, int n, int frame) { return chebyshev(chebyshev_kind(kind), n, Frame{frame}); },
        py::arg("kind"), py::arg("n"), py::arg("frame") = 1);
  m.def("evaluate", [](const std::string& expr, int frame) { return evaluate_expression(expr, Frame{frame}); },
        py::arg("expr"), py::arg("frame") = 1, "Evaluate an element expression such as 'q^(1/2)*X[1]*F[2]'.");

  m.def(
      "expand_in_basis",
      [](const TorusElement& x, const std::string& family, int frame, int m_lo, int m_hi, int max_degree, int max_n) {
        return to_json(expand_in_basis(x, parse_family(family), Frame{frame}, BasisWindow{m_lo, m_hi, max_degree, max_n}))
            .dump();
      },
      py::arg("x"), py::arg("family") = "B", py::arg("frame") = 1, py::arg("m_lo") = -10, py::arg("m_hi") = 12,
      py::arg("max_degree") = 8, py::arg("max_n") = 10);

  m.def(
      "triangular",
      [](int a, int b, int frame) {
        const TriangularElement& c = TriangularTable::global(Frame{frame}).c({a, b});
        return py::make_tuple(c.value, to_json(c.expansion).dump());
      },
      py::arg("a"), py::arg("b"), py::arg("frame") = 1);

  m.def(
      "verify_theorem2",
      [](int m_lo, int m_hi, int n_lo, int n_hi, std::vector<int> frames) {
        return report_json([&] {
          VerifyOptions opts;
          opts.frames = frames;
          return verify_theorem2(m_lo, m_hi, n_lo, n_hi, opts);
        });
      },
      py::arg("m_lo") = -6, py::arg("m_hi") = 8, py::arg("n_lo") = 1, py::arg("n_hi") = 8,
      py::arg("frames") = std::vector<int>{1, 2});
  m.def(
      "verify_cluster_relations",
      [](int lo, int hi, std::vector<int> frames) { return report_json([&] { return verify_cluster_relations(lo, hi, frames); }); },
      py::arg("lo") = -8, py::arg("hi") = 10, py::arg("frames") = std::vector<int>{1, 2});
  m.def(
      "verify_coefficient_identities",
      [](int n_lo, int n_hi) { return report_json([&] { return verify_coefficient_identities(n_lo, n_hi); }); },
      py::arg("n_lo") = 2, py::arg("n_hi") = 8);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release nogil;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line frontend; returns (exit code, stdout, stderr).");
}
