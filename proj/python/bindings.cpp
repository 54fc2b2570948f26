#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>  // for optional
#include <sstream>   // for ostringstream
#include <string>   // for string
#include <tuple>    // for tuple
#include <vector>   // for vector

#include "smbalg/analyzer.hpp"
#include "smbalg/cli.hpp"
#include "smbalg/congruence.hpp"
#include "smbalg/constructions.hpp"
#include "smbalg/errors.hpp"
#include "smbalg/report.hpp"
#include "smbalg/text.hpp"
#include "smbalg/wnu.hpp"

namespace py = pybind11;
using namespace smbalg;

namespace {

  // Reports cross the boundary as JSON text and are decoded on the Python side.
  py::object loads(std::string const& text) {
    return py::module_::import("json").attr("loads")(text);
  }

  Partition partition_arg(FiniteAlgebra const& alg, std::string const& text) {
    return parse_partition(text, alg.size());
  }

  py::dict operations(FiniteAlgebra const& alg) {
    py::dict out;
    for (auto const& [sym, f] : alg.operations()) {
      out[py::str(sym)] =
          py::make_tuple(f.arity(), std::vector<Elem>(f.entries().begin(), f.entries().end()));
    }
    return out;
  }

  FiniteAlgebra make_algebra(std::string name, std::size_t size, py::dict ops) {
    FiniteAlgebra::Operations table;
    for (auto const& [key, value] : ops) {
      auto const t = value.cast<std::tuple<std::size_t, std::vector<Elem>>>();
      table.emplace(key.cast<std::string>(), OperationTable(std::get<0>(t), size, std::get<1>(t)));
    }
    return FiniteAlgebra(std::move(name), size, std::move(table));
  }

}  // namespace

PYBIND11_MODULE(_smbalg, m) {
  m.doc() = "Finite algebras, SMB checks, congruences and the wnu constructions";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<EvalError>(m, "EvalError", error.ptr());
  py::register_exception<InvalidAlgebra>(m, "InvalidAlgebra", error.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", error.ptr());
  py::register_exception<NotCongruence>(m, "NotCongruence", error.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", error.ptr());
  py::register_exception<TheoremFalsified>(m, "TheoremFalsified", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<FiniteAlgebra>(m, "FiniteAlgebra")
      .def(py::init(&make_algebra), py::arg("name"), py::arg("size"), py::arg("operations"),
           "operations maps a symbol to (arity, entries), last argument fastest")
      .def_property_readonly("name", &FiniteAlgebra::name)
      .def_property_readonly("size", &FiniteAlgebra::size)
      .def_property_readonly("operations", &operations)
      .def("apply",
           [](FiniteAlgebra const& a, std::string const& sym, std::vector<Elem> const& args) {
             auto const& f = a.op(sym);
             if (args.size() != f.arity()) {
               throw EvalError("operation '" + sym + "' has arity " + std::to_string(f.arity()));
             }
             for (auto x : args) {
               if (x >= a.size()) {
                 throw EvalError("element " + std::to_string(x) + " is outside the universe");
               }
             }
             return f(std::span<Elem const>(args));
           })
      .def("is_idempotent", &FiniteAlgebra::is_idempotent)
      .def("renamed", &FiniteAlgebra::renamed)
      .def("__len__", &FiniteAlgebra::size)
      .def("__eq__", [](FiniteAlgebra const& a, FiniteAlgebra const& b) { return a == b; })
      .def("__str__", &print_algebra)
      .def("__repr__", [](FiniteAlgebra const& a) {
        return "<FiniteAlgebra " + a.name() + " of size " + std::to_string(a.size()) + ">";
      });

  m.def("parse_algebra", [](std::string const& text) { return parse_algebra(text); });
  m.def("parse_algebras", [](std::string const& text) { return parse_algebras(text); });
  m.def("print_algebra", &print_algebra);

  m.def("example_e3", &example_e3);
  m.def("example_b2", &example_b2);
  m.def("example_s2", &example_s2);
  m.def("example_n4", &example_n4);
  m.def("trivial_algebra", &trivial_algebra);
  m.def("affine_block", &affine_block);
  m.def("chain_semilattice", &chain_semilattice);

  m.def("detect_smb", [](FiniteAlgebra const& a) { return loads(report_json(detect_smb(a))); });
  m.def("check_smb", [](FiniteAlgebra const& a, std::string const& sim) {
    return loads(report_json(check_smb_over(a, partition_arg(a, sim))));
  });
  m.def(
      "check_regular",
      [](FiniteAlgebra const& a, std::optional<std::string> const& sim) {
        Partition const s = sim ? partition_arg(a, *sim) : wedge_relation(a);
        return loads(report_json(check_regular(a, s), s));
      },
      py::arg("alg"), py::arg("sim") = py::none());
  m.def("check_regular_base", [](FiniteAlgebra const& a) { return loads(report_json(check_regular_base(a))); });

  m.def("principal_congruence", [](FiniteAlgebra const& a, Elem x, Elem y) {
    if (x >= a.size() || y >= a.size()) {
      throw InvalidAlgebra("element outside the universe");
    }
    return to_string(principal_congruence(a, x, y));
  });
  m.def("congruences", [](FiniteAlgebra const& a) {
    std::vector<std::string> out;
    for (auto const& p : congruence_lattice(a).elements) {
      out.push_back(to_string(p));
    }
    return out;
  });
  m.def("commutator", [](FiniteAlgebra const& a, std::string const& alpha, std::string const& beta) {
    return to_string(commutator(a, partition_arg(a, alpha), partition_arg(a, beta)));
  });

  m.def(
      "regularize",
      [](FiniteAlgebra const& a, std::optional<std::string> const& sim) {
        return sim ? regularize(a, partition_arg(a, *sim)) : regularize(a);
      },
      py::arg("alg"), py::arg("sim") = py::none());
  m.def("extend_simple_type5", [](FiniteAlgebra const& a, std::string const& sym) {
    return extend_simple_type5(a, sym);
  });
  m.def("generate_corpus", [](std::uint64_t seed, std::size_t max_size) {
    CorpusSpec spec;
    spec.seed     = seed;
    spec.max_size = max_size;
    return generate_corpus(spec);
  }, py::arg("seed") = 1, py::arg("max_size") = 6);

  m.def("run_cli", [](std::vector<std::string> const& args) {
    std::ostringstream out, err;
    int const          code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs the command line tool in process; returns (exit code, stdout, stderr).");
}
