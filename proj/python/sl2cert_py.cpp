#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sl2cert/cli.hpp"
#include "sl2cert/constructors.hpp"
#include "sl2cert/errors.hpp"
#include "sl2cert/json_io.hpp"
#include "sl2cert/tracering.hpp"
#include "sl2cert/verifiers.hpp"

namespace py = pybind11;
using namespace sl2cert;

namespace {

std::string rep_doc(const MarkedRep& rep, const std::vector<Report>& reports = {}) {
  json_io::Json j = json_io::to_json(rep);
  json_io::Json jr = json_io::Json::array();
  for (const Report& r : reports) jr.push_back(json_io::to_json(r));
  j["reports"] = jr;
  return json_io::dump(j);
}

std::string report_doc(const Report& r) { return json_io::dump(json_io::to_json(r)); }

MarkedRep rep_from(const std::string& text) { return json_io::rep_from_json(json_io::parse(text)); }

}  // namespace

PYBIND11_MODULE(_sl2cert, m) {
  m.doc() = "Exact SL(2) constructions and bounded certificates (JSON-in, JSON-out)";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<Word>(m, "Word")
      .def(py::init<>())
      .def_static("parse", [](const std::string& s) { return Word::parse(s); })
      .def("inverse", &Word::inverse)
      .def("pow", &Word::pow)
      .def("__mul__", [](const Word& a, const Word& b) { return a * b; })
      .def("__eq__", [](const Word& a, const Word& b) { return a == b; })
      .def("__len__", &Word::length)
      .def("__str__", &Word::to_string)
      .def("__repr__", [](const Word& w) { return "Word('" + w.to_string() + "')"; });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one sl2cert command in-process; returns (exit_code, stdout, stderr).");

  m.def("trace_poly", [](const std::string& w) { return trace_of_word(Word::parse(w)).to_string(trace_variable_names()); },
        py::arg("word"), "Trace of a word in A, B as a polynomial in p, q, r.");

  m.def("figure8_family", [] { return rep_doc(figure8_family().rep); });
  m.def(
      "figure8_discrete", [](bool minus) { return rep_doc(figure8_discrete(minus ? Branch::Minus : Branch::Plus).rep); },
      py::arg("minus") = false);
  m.def("torus_bundle", [](long long i, long long j, long long k, long long l) {
    TorusBundle t = torus_bundle_rep(i, j, k, l);
    return rep_doc(t.rep, {check_relations(t.rep)});
  });
  m.def("bs1m", [](long long mm) { return rep_doc(bs1m_rep(mm)); }, py::arg("m"));
  m.def("generic_free", [] { return rep_doc(generic_free_rep()); });
  m.def(
      "minsky",
      [](int bound) {
        JoinResult j = minsky_quotient_rep(bound);
        return rep_doc(j.rep, j.reports);
      },
      py::arg("bound") = kDefaultWordBound);

  m.def("check_relations", [](const std::string& rep) { return report_doc(check_relations(rep_from(rep))); });
  m.def("trace_pm2_scan", [](const std::string& rep, int L) { return report_doc(trace_pm2_scan(rep_from(rep), L)); });
  m.def("gluing_obstruction", [](long long lo, long long hi) { return report_doc(gluing_obstruction(lo, hi)); });
  m.def("triple_hnn_obstruction", [] { return report_doc(triple_hnn_obstruction()); });
  m.def("commutator_equation_search",
        [](long long mm, long long n, int L) { return report_doc(commutator_equation_search(mm, n, L)); });
  m.def("lyndon_equation_scan", [](int L) { return report_doc(lyndon_equation_scan(L)); });
  m.def("reverify", [](const std::string& report) { return reverify(json_io::report_from_json(json_io::parse(report))); },
        "Recheck every witness of a serialized report.");
}
