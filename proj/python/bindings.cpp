#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "m0n/divisors.hpp"
#include "m0n/error.hpp"
#include "m0n/selfcheck.hpp"
#include "m0n/volume.hpp"

namespace py = pybind11;

// Rationals cross the boundary as fractions.Fraction. Inputs may also be int
// or a "p/q" string; floats are refused to keep everything exact.
namespace pybind11::detail {
template <>
struct type_caster<m0n::Rational> {
  PYBIND11_TYPE_CASTER(m0n::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || PyFloat_Check(src.ptr())) return false;
    try {
      if (PyUnicode_Check(src.ptr())) {
        value = m0n::parse_rational(src.cast<std::string>());
        return true;
      }
      if (PyLong_Check(src.ptr())) {
        value = m0n::parse_rational(py::str(src).cast<std::string>());
        return true;
      }
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
        const auto num = py::str(src.attr("numerator")).cast<std::string>();
        const auto den = py::str(src.attr("denominator")).cast<std::string>();
        value = m0n::parse_rational(num + "/" + den);
        return true;
      }
    } catch (const m0n::Error&) {
      return false;
    }
    return false;
  }

  static handle cast(const m0n::Rational& q, return_value_policy, handle) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(m0n::to_string(q)).release();
  }
};
}  // namespace pybind11::detail

namespace {

using namespace m0n;

WeightVector weights_of(const std::vector<Rational>& w, bool strict = false) { return make_weight_vector(w, strict); }

py::dict divisor_dict(const QDivisor& d) {
  py::dict out;
  for (const auto& [s, c] : d.coefficients()) out[py::str(to_literal(s))] = py::cast(c);
  return out;
}

std::vector<std::string> wall_literals(const std::vector<MarkedSet>& walls) {
  std::vector<std::string> out;
  for (MarkedSet w : walls) out.push_back(to_literal(w));
  return out;
}

py::int_ product_number_py(int n, const std::vector<std::string>& divisors) {
  std::vector<BoundaryPartition> list;
  for (const auto& d : divisors) list.push_back(parse_partition(n, d));
  Rational value;
  {
    py::gil_scoped_release release;
    value = default_engine().product_number(list, n);
  }
  return py::int_(py::str(to_string(value)));
}

py::dict cross_check_py(const std::vector<Rational>& w, const std::vector<std::string>& formulas) {
  const auto mu = weights_of(w);
  VolumeReport report;
  {
    py::gil_scoped_release release;
    report = cross_check(mu, default_engine(), formulas);
  }
  py::dict out;
  out["n"] = report.n;
  out["weights"] = report.weights;
  out["results"] = report.results;
  out["agree"] = report.agree;
  out["walls"] = wall_literals(report.walls);
  return out;
}

py::dict divisor_py(const std::string& kind, std::optional<std::vector<Rational>> w, std::optional<int> n) {
  if (kind == "canonical") {
    if (!n && !w) throw Error(ErrorCode::WrongArity, "canonical divisor needs n or weights");
    const int size = n ? *n : static_cast<int>(w->size());
    require_supported_n(size);
    return divisor_dict(canonical_divisor(size));
  }
  if (!w) throw Error(ErrorCode::WrongArity, kind + " divisor needs weights");
  const auto mu = n ? make_weight_vector(*n, *w) : make_weight_vector(*w);
  if (kind == "dmu") return divisor_dict(d_mu(mu));
  if (kind == "weighted") return divisor_dict(weighted_divisor(mu));
  if (kind == "chern") return divisor_dict(chern_divisor(mu));
  if (kind == "kawamata") return divisor_dict(kawamata_divisor(mu));
  throw Error(ErrorCode::ParseError, "unknown divisor kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact intersection numbers and volumes on genus-zero moduli spaces";

  static py::exception<Error> error(m, "M0nError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("boundary_partitions", [](int n) {
    std::vector<std::string> out;
    for (const auto& s : enumerate_boundary_partitions(n)) out.push_back(to_literal(s));
    return out;
  }, py::arg("n"), "Canonical literals of all boundary divisors, e.g. '1,2'.");

  m.def("product_number", &product_number_py, py::arg("n"), py::arg("divisors"),
        "Top intersection number of n-3 boundary divisors given as partition literals.");

  m.def("walls", [](const std::vector<Rational>& w) { return wall_literals(weights_of(w).walls()); },
        py::arg("weights"), "Subsets with weight sum exactly 1, once per complementary pair.");

  m.def("volume", [](const std::vector<Rational>& w, const std::string& formula) {
    const auto mu = weights_of(w);
    py::gil_scoped_release release;
    return volume_by_name(formula, mu);
  }, py::arg("weights"), py::arg("formula") = "ke",
        "Volume by one formula: ke, weighted, psi, kawamata, mcmullen, five_point or symmetric.");

  m.def("cross_check", &cross_check_py, py::arg("weights"), py::arg("formulas") = std::vector<std::string>{},
        "Run the volume formulas and report the results and whether they agree.");

  m.def("divisor", &divisor_py, py::arg("kind"), py::arg("weights") = py::none(), py::arg("n") = py::none(),
        "Boundary coefficients of dmu, weighted, chern, kawamata or canonical.");

  m.def("psi_class", [](int index, int n, std::optional<std::pair<int, int>> ref) {
    const auto [j, k] = ref ? *ref : default_psi_reference(index);
    return divisor_dict(psi_class(index, j, k, n));
  }, py::arg("index"), py::arg("n"), py::arg("ref") = py::none());

  m.def("kawamata_lambda_table", [](const std::vector<Rational>& w) { return kawamata_lambda_table(weights_of(w)); },
        py::arg("weights"));

  m.def("five_point_closed_form", [](const std::vector<Rational>& w) { return five_point_closed_form(weights_of(w)); },
        py::arg("weights"));
  m.def("symmetric_closed_form", &symmetric_closed_form, py::arg("beta"));

  m.def("selfcheck", [](bool use_memo) {
    EngineOptions options;
    options.use_memo = use_memo;
    const IntersectionEngine engine(options);
    std::vector<CheckResult> checks;
    {
      py::gil_scoped_release release;
      checks = run_selfcheck(engine);
    }
    py::list out;
    for (const auto& c : checks) {
      py::dict row;
      row["name"] = c.name;
      row["expected"] = c.expected;
      row["actual"] = c.actual;
      row["pass"] = c.pass;
      out.append(row);
    }
    return out;
  }, py::arg("use_memo") = true);
}
