#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pfrac/cli.hpp"
#include "pfrac/exact_arith.hpp"
#include "pfrac/oracle.hpp"
#include "pfrac/pfd_core.hpp"
#include "pfrac/postprocess.hpp"
#include "pfrac/root_parser.hpp"

namespace py = pybind11;
using namespace pfrac;

namespace {

py::object to_python(const Integer& v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_python(r.numerator()), to_python(r.denominator()));
}

Rational from_python(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return Rational::parse(obj.cast<std::string>());
  py::object num = obj.attr("numerator");
  py::object den = obj.attr("denominator");
  return Rational(Integer(py::str(num).cast<std::string>()),
                  Integer(py::str(den).cast<std::string>()));
}

RationalFunctionSpec make_spec(unsigned l, const std::vector<std::string>& roots,
                               const std::vector<unsigned>& multiplicities) {
  if (roots.size() != multiplicities.size()) {
    throw ContractViolation("roots and multiplicities differ in length");
  }
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    factors.push_back({parse_expr(roots[i]), multiplicities[i]});
  }
  return RationalFunctionSpec(l, std::move(factors));
}

py::dict to_terms(const Decomposition& d) {
  py::list monomials, poles;
  for (const MonomialTerm& t : d.monomials) {
    monomials.append(py::make_tuple(t.degree, to_infix(t.coefficient)));
  }
  for (const PoleTerm& t : d.poles) {
    poles.append(py::make_tuple(to_infix(d.roots[t.pole_index]), t.order,
                                to_infix(t.coefficient)));
  }
  py::dict out;
  out["monomials"] = monomials;
  out["poles"] = poles;
  return out;
}

OutputFormat make_format(const std::string& format, bool expand_coefficients) {
  OutputFormat fmt;
  if (format == "structured") {
    fmt.mode = OutputFormat::Mode::kStructured;
  } else if (format != "infix") {
    throw ContractViolation("format must be 'infix' or 'structured'");
  }
  fmt.expand_coefficients = expand_coefficients;
  return fmt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact partial fraction decomposition over linear factors";

  static py::exception<Error> error(m, "PfracError", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    } catch (const ContractViolation& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def("binomial", [](unsigned long n, long k) { return to_python(binomial(n, k)); },
        py::arg("n"), py::arg("k"));
  m.def(
      "multinomial",
      [](unsigned long total, const std::vector<unsigned>& parts) {
        return to_python(multinomial(total, parts));
      },
      py::arg("total"), py::arg("parts"));
  m.def(
      "compositions",
      [](unsigned total, unsigned parts) {
        py::list out;
        for (const Composition& c : compositions(total, parts)) out.append(py::tuple(py::cast(c)));
        return out;
      },
      py::arg("total"), py::arg("parts"));

  m.def("canonical", [](const std::string& src) { return to_infix(parse_expr(src)); },
        py::arg("expr"), "Parse an expression and return its canonical infix form.");
  m.def("expand", [](const std::string& src) { return to_infix(expand(parse_expr(src))); },
        py::arg("expr"));
  m.def(
      "evaluate",
      [](const std::string& src, const py::dict& bindings) {
        Bindings b;
        for (auto [k, v] : bindings) b[k.cast<std::string>()] = from_python(v);
        return to_fraction(evaluate(parse_expr(src), b));
      },
      py::arg("expr"), py::arg("bindings") = py::dict());

  m.def(
      "decompose",
      [](unsigned l, const std::vector<std::string>& roots,
         const std::vector<unsigned>& multiplicities, const std::string& format,
         bool expand_coefficients) {
        Decomposition d = decompose(make_spec(l, roots, multiplicities));
        return serialize(d, make_format(format, expand_coefficients));
      },
      py::arg("l"), py::arg("roots"), py::arg("multiplicities"), py::arg("format") = "infix",
      py::arg("expand") = false,
      "Decompose x^l / prod (x - root)^mult and return the serialized result.");
  m.def(
      "decompose_terms",
      [](unsigned l, const std::vector<std::string>& roots,
         const std::vector<unsigned>& multiplicities) {
        return to_terms(decompose(make_spec(l, roots, multiplicities)));
      },
      py::arg("l"), py::arg("roots"), py::arg("multiplicities"));
  m.def(
      "oracle_decompose",
      [](unsigned l, const py::list& roots, const std::vector<unsigned>& multiplicities) {
        std::vector<Rational> rs;
        for (const py::handle& r : roots) rs.push_back(from_python(r));
        return to_terms(oracle_decompose(l, rs, multiplicities));
      },
      py::arg("l"), py::arg("roots"), py::arg("multiplicities"));
  m.def(
      "verify",
      [](unsigned l, const std::vector<std::string>& roots,
         const std::vector<unsigned>& multiplicities, std::size_t trials, std::uint64_t seed) {
        RationalFunctionSpec spec = make_spec(l, roots, multiplicities);
        SubstitutionReport r = check_by_substitution(spec, decompose(spec), trials, seed, 5);
        return py::make_tuple(r.passed, r.describe());
      },
      py::arg("l"), py::arg("roots"), py::arg("multiplicities"), py::arg("trials") = 20,
      py::arg("seed") = 1);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (code, stdout, stderr).");
}
