#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gat/checker.hpp"
#include "gat/corpus.hpp"
#include "gat/rewrite.hpp"
#include "gat/semantics.hpp"
#include "gat/serialize.hpp"
#include "gat/surface.hpp"

namespace py = pybind11;
using namespace gat;

namespace {

// Python-side handle for an expression; equality is structural.
struct PyExpr {
  Expr x;
};

PyExpr wrap(Expr x) { return PyExpr{std::move(x)}; }

std::string kind_name(const Error& e) { return std::string(to_string(e.kind())); }

py::dict judgment_dict(const Judgment& j) {
  py::dict d;
  d["form"] = std::string(to_string(j.form));
  d["text"] = print_judgment(j);
  return d;
}

Goal goal_of(const Signature& sig, const std::string& text, bool raw) { return parse_goal(sig, text, raw); }

}  // namespace

PYBIND11_MODULE(_gat, m) {
  m.doc() = "Kernel, checker and evaluator for generalized algebraic theories in cwf combinator syntax.";

  // GatError.args is (kind, message)
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> gat_error;
  gat_error.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "GatError")); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(gat_error.get_stored().ptr(), py::make_tuple(kind_name(e), e.what()).ptr());
    }
  });

  py::class_<PyExpr>(m, "Expr")
      .def("__str__", [](const PyExpr& e) { return print_expr(e.x); })
      .def("__repr__", [](const PyExpr& e) { return "Expr(" + print_expr(e.x) + ")"; })
      .def("__eq__", [](const PyExpr& a, const PyExpr& b) { return struct_eq(a.x, b.x); })
      .def("__hash__", [](const PyExpr& e) { return e.x->hash; })
      .def("compact", [](const PyExpr& e) { return print_expr(e.x, PrintMode::Compact); })
      .def_property_readonly("cls", [](const PyExpr& e) { return std::string(to_string(e.x->cls)); })
      .def_property_readonly("size", [](const PyExpr& e) { return measure(e.x).size; })
      .def_property_readonly("depth", [](const PyExpr& e) { return measure(e.x).depth; })
      .def("to_json", [](const PyExpr& e) { return dump_expr(e.x); })
      .def_static("from_json", [](const std::string& s) { return wrap(load_expr(s)); });

  py::class_<Signature>(m, "Signature")
      .def(py::init<>())
      .def("__len__", &Signature::size)
      .def_property_readonly("names", [](const Signature& s) {
        std::vector<std::string> out;
        for (const auto& d : s.decls()) out.push_back(d.name);
        return out;
      })
      .def("declarations", [](const Signature& s) {
        py::list out;
        for (const auto& d : s.decls()) {
          py::dict j;
          j["name"] = d.name;
          j["kind"] = std::string(to_string(d.kind));
          j["ctx"] = wrap(d.ctx);
          if (d.ty) j["type"] = wrap(d.ty);
          if (d.lhs) {
            j["lhs"] = wrap(d.lhs);
            j["rhs"] = wrap(d.rhs);
            j["orient"] = std::string(to_string(d.orient));
          }
          out.append(j);
        }
        return out;
      })
      .def("counts", [](const Signature& s) {
        DeclCounts c = count_decls(s);
        return py::make_tuple(c.sorts, c.ops, c.eqs);
      })
      .def("to_json", [](const Signature& s) { return dump_signature(s); });

  m.def("parse_theory", [](const std::string& text) { return elaborate_all(parse_gat(text)); },
        py::arg("text"), "Elaborate and validate a .gat source text.");
  m.def("load_theory", &load_theory, py::arg("path"));
  m.def("corpus_names", &corpus_names);
  m.def("build", [](const std::string& name) { return build(name).sig; }, py::arg("name"),
        "Signature of a registered corpus example.");
  m.def("theory_source", &theory_source, py::arg("name"));
  m.def("monoid_stages", &monoid_stages);

  m.def("parse_expr",
        [](const Signature& sig, const std::string& text) { return wrap(parse_expr(text, sig.resolver())); },
        py::arg("sig"), py::arg("text"), "Parse annotated combinator notation.");
  m.def("parse_goal",
        [](const Signature& sig, const std::string& text, bool raw) {
          Goal g = goal_of(sig, text, raw);
          py::dict d;
          d["ctx"] = wrap(g.ctx.ctx);
          d["names"] = g.ctx.names;
          d["lhs"] = wrap(g.lhs);
          d["rhs"] = g.rhs ? py::cast(wrap(g.rhs)) : py::none();
          d["type"] = g.ty ? py::cast(wrap(g.ty)) : py::none();
          return d;
        },
        py::arg("sig"), py::arg("goal"), py::arg("raw") = false);

  m.def("derive",
        [](const Signature& sig, const std::string& goal, bool raw, std::size_t fuel) {
          Derivation d = check_goal(sig, goal_of(sig, goal, raw), CheckerOptions{fuel});
          py::dict out = judgment_dict(check_derivation(sig, d));
          out["nodes"] = derivation_size(d);
          out["proof"] = write_proof({"", "", d, {}});
          return out;
        },
        py::arg("sig"), py::arg("goal"), py::arg("raw") = false, py::arg("fuel") = kDefaultFuel,
        "Check a goal; returns the checked conclusion and the proof as JSON. Raises GatError.");

  m.def("audit",
        [](const Signature& sig, const std::string& proof) {
          AuditResult r = audit(sig, read_proof(proof));
          py::dict out;
          out["ok"] = r.ok;
          out["nodes"] = r.nodes;
          out["error"] = r.error;
          if (r.ok) out["conclusion"] = print_judgment(r.conclusion);
          return out;
        },
        py::arg("sig"), py::arg("proof"));

  m.def("normalize",
        [](const Signature& sig, const PyExpr& x, std::size_t fuel) {
          Rewriter rw(signature_rule_set(sig));
          NormalizeResult r = rw.normalize(x.x, fuel);
          if (r.exhausted)
            throw Error(ErrorKind::FuelExhausted, "no normal form within " + std::to_string(fuel) + " steps");
          return py::make_tuple(wrap(r.nf), r.trace.steps.size());
        },
        py::arg("sig"), py::arg("expr"), py::arg("fuel") = kDefaultFuel,
        "Leftmost-outermost normal form and the number of steps taken.");

  m.def("infer",
        [](const Signature& sig, const PyExpr& x) {
          Checker ck(sig);
          return judgment_dict(check_derivation(sig, ck.infer(x.x)));
        },
        py::arg("sig"), py::arg("expr"), "Judgment of an expression at its own annotations.");

  py::class_<Model>(m, "Model")
      .def_readonly("name", &Model::name)
      .def("to_json", [](const Model& mdl) { return dump_model(mdl); });
  m.def("load_model", &load_model, py::arg("json_text"));
  m.def("load_model_file", &load_model_file, py::arg("path"));
  m.def("model_source", &model_source, py::arg("name"));

  m.def("check_model",
        [](const Signature& sig, const Model& model) {
          py::list out;
          for (const auto& r : check_model(sig, model).equations) {
            py::dict d;
            d["label"] = r.label;
            d["holds"] = r.holds;
            d["witness"] = r.witness ? py::cast(*r.witness) : py::none();
            if (r.witness) {
              d["lhs"] = r.lhs;
              d["rhs"] = r.rhs;
            }
            out.append(d);
          }
          return out;
        },
        py::arg("sig"), py::arg("model"));

  m.def("evaluate",
        [](const Signature& sig, const Model& model, const std::string& goal, bool raw) {
          Goal g = goal_of(sig, goal, raw);
          return print_value(interpret(sig, model, g.lhs, g.lhs->cls == ExprClass::Ctx ? nullptr : g.ctx.ctx));
        },
        py::arg("sig"), py::arg("model"), py::arg("goal"), py::arg("raw") = false,
        "Interpret an expression in a finite model; returns its table as text.");

  m.attr("DEFAULT_FUEL") = kDefaultFuel;
}
