#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fls/error.hpp"
#include "fls/evaluate.hpp"
#include "fls/fixtures.hpp"
#include "fls/funspace.hpp"
#include "fls/interp.hpp"
#include "fls/laws.hpp"
#include "fls/limits.hpp"
#include "fls/sysfile.hpp"

namespace py = pybind11;
using namespace fls;

namespace {

py::dict as_dict(const CheckResult& r) {
  py::dict d;
  d["name"] = r.name;
  d["verdict"] = r.ok ? "pass" : "fail";
  d["witness"] = r.witness;
  d["millis"] = r.millis;
  return d;
}

py::list as_list(const std::vector<CheckResult>& results) {
  py::list out;
  for (const auto& r : results) out.append(as_dict(r));
  return out;
}

FactorSystem parse_system(const std::string& text) {
  std::istringstream in(text);
  return read_system(in, "<text>");
}

std::vector<std::string> limit_of(const FactorSystem& fs) {
  std::vector<std::string> out;
  for (const auto& e : elem(fs.sys)) out.push_back(render(fs.sys, e));
  return out;
}

TypeInterpretation interpretation(const std::map<std::string, FactorSystem>& bind) {
  TypeInterpretation ti = TypeInterpretation::standard(fixtures::NatVariant::Direct, 3);
  for (const auto& [name, fs] : bind) ti.bind(name, fs);
  return ti;
}

}  // namespace

PYBIND11_MODULE(_fls, m) {
  m.doc() = "Finite factor systems, their limits and the stage/limit interpreter";

  static py::exception<Error> error(m, "FlsError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<FactorSystem>(m, "System")
      .def_readonly("name", &FactorSystem::name)
      .def_property_readonly("indices", [](const FactorSystem& fs) { return fs.poset().ids(); })
      .def("carrier",
           [](const FactorSystem& fs, const std::string& index) { return fs.sys.carrier(fs.poset().find(index)); })
      .def("pred",
           [](const FactorSystem& fs, const std::string& later, const std::string& earlier) {
             auto state = [&](const std::string& t) {
               const auto at = t.rfind('@');
               if (at == std::string::npos) throw Error(ErrorKind::UnknownState, t);
               return fs.sys.find_state(t.substr(at + 1), t.substr(0, at));
             };
             return fs.sys.pred(state(later), state(earlier));
           })
      .def("validate", [](const FactorSystem& fs, const std::vector<std::string>& laws) { return as_list(run_laws(fs, laws)); },
           py::arg("laws") = std::vector<std::string>{"all"})
      .def("limit", &limit_of)
      .def("to_text", &write_system)
      .def("__eq__", [](const FactorSystem& a, const FactorSystem& b) { return a == b; })
      .def("__repr__", [](const FactorSystem& fs) { return "<System " + fs.name + ">"; });

  m.def("fixture", &fixtures::by_name, py::arg("name"));
  m.def("parse_system", &parse_system, py::arg("text"));
  m.def("read_system", &read_system_file, py::arg("path"));
  m.def(
      "funspace",
      [](const FactorSystem& dom, const FactorSystem& cod, std::size_t cap) {
        return build_funspace(dom, cod, cap ? cap : default_size_cap()).system;
      },
      py::arg("dom"), py::arg("cod"), py::arg("cap") = 0);
  m.def("infer_type", [](const std::string& term, const std::string& context) {
    return infer_type(parse_context(context), parse_term(term)).str();
  }, py::arg("term"), py::arg("context") = "");

  m.def(
      "eval",
      [](const std::string& term, const std::string& context, const std::string& stage, const std::string& at,
         const std::vector<std::string>& values, const std::map<std::string, FactorSystem>& bind,
         const std::string& mode) {
        if (mode != "stage" && mode != "limit" && mode != "both") throw Error(ErrorKind::ParseError, "mode " + mode);
        Interpreter in(interpretation(bind));
        EvalRequest r{term, context, stage, at, values, mode != "limit", mode != "stage"};
        const EvalOutcome o = evaluate(in, r);
        py::dict d;
        d["judgement"] = o.judgement;
        if (r.stage_value) {
          d["state_judgement"] = o.state_judgement;
          d["stage"] = o.stage;
        }
        if (r.limit_value) d["limit"] = o.limit;
        if (o.reflection) d["reflection"] = *o.reflection;
        return d;
      },
      py::arg("term"), py::arg("context") = "", py::arg("stage") = "", py::arg("at") = "",
      py::arg("values") = std::vector<std::string>{}, py::arg("bind") = std::map<std::string, FactorSystem>{},
      py::arg("mode") = "both");

  m.def(
      "reflect",
      [](std::size_t max_term_size, std::size_t max_context, const std::map<std::string, FactorSystem>& bind) {
        Interpreter in(interpretation(bind));
        SweepOptions o;
        o.max_term_size = max_term_size;
        o.max_context = max_context;
        const SweepReport r = sweep(in, o);
        py::dict d;
        d["binding"] = r.binding;
        d["terms"] = r.terms;
        d["derivations"] = r.derivations;
        d["violations"] = r.violations();
        d["records"] = as_list(sweep_results(r));
        return d;
      },
      py::arg("max_term_size") = 3, py::arg("max_context") = 2,
      py::arg("bind") = std::map<std::string, FactorSystem>{});
}
