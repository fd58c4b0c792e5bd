#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flatpunct/circulant.hpp"
#include "flatpunct/classify.hpp"
#include "flatpunct/cli.hpp"
#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"
#include "flatpunct/io.hpp"
#include "flatpunct/metric.hpp"
#include "flatpunct/moves.hpp"
#include "flatpunct/planner.hpp"
#include "flatpunct/svg.hpp"

namespace py = pybind11;
using namespace flatpunct;

namespace {

// nlohmann::json <-> Python through the json module keeps the binding
// small and the dictionaries identical to the CLI reports.
py::object to_py(const nlohmann::json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

nlohmann::json from_py(const py::object& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

std::vector<Rational> kappa_units(const py::sequence& seq) {
  std::vector<Rational> out;
  for (const auto& item : seq) {
    if (py::isinstance<py::str>(item)) {
      out.push_back(parse_rational(item.cast<std::string>()));
    } else if (py::isinstance<py::int_>(item)) {
      out.emplace_back(item.cast<long long>());
    } else {
      out.push_back(rational_from_double(item.cast<double>()));
    }
  }
  return out;
}

py::dict canonical_dict(const CanonicalMetric& c) {
  py::dict d;
  d["total_curvature_pi"] = c.total / kPi;
  d["n"] = c.n;
  d["lengths"] = c.lengths;
  if (c.exact_total_pi) d["total_curvature_pi_exact"] = to_string(*c.exact_total_pi);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Modification classes of flat metrics on the once-punctured disk";

  py::register_exception<Error>(m, "FlatpunctError");

  py::class_<FlatDiskMetric>(m, "Metric")
      .def(py::init([](const py::sequence& kappa_pi, std::vector<double> lengths, bool exact) {
             auto metric = FlatDiskMetric::from_pi_units(kappa_units(kappa_pi), std::move(lengths));
             return exact ? metric : metric.without_exact();
           }),
           py::arg("kappa_pi"), py::arg("lengths"), py::arg("exact") = true,
           "Curvatures in multiples of pi (numbers or \"p/q\" strings) and segment lengths.")
      .def_static("cylinder", &FlatDiskMetric::cylinder, py::arg("width"))
      .def_static("from_json", [](const py::object& doc, bool exact) {
             return metric_from_json(from_py(doc), ParseOptions{exact});
           }, py::arg("doc"), py::arg("exact") = true)
      .def("to_json", [](const FlatDiskMetric& metric) { return to_py(metric_to_json(metric)); })
      .def_property_readonly("is_cylinder", &FlatDiskMetric::is_cylinder)
      .def_property_readonly("width", &FlatDiskMetric::width)
      .def_property_readonly("kappas", [](const FlatDiskMetric& metric) {
        return std::vector<double>(metric.kappas().begin(), metric.kappas().end());
      })
      .def_property_readonly("lengths", [](const FlatDiskMetric& metric) {
        return std::vector<double>(metric.lengths().begin(), metric.lengths().end());
      })
      .def_property_readonly("exact_total_pi", [](const FlatDiskMetric& metric) -> py::object {
        if (!metric.exact_total_pi()) return py::none();
        return py::str(to_string(*metric.exact_total_pi()));
      })
      .def("__len__", &FlatDiskMetric::size)
      .def("__repr__", [](const FlatDiskMetric& metric) {
        return "Metric(" + metric_to_json(metric).dump() + ")";
      });

  m.def("validate", [](const FlatDiskMetric& metric) {
    const auto r = validate(metric);
    py::dict d;
    d["valid"] = r.valid;
    d["errors"] = r.errors;
    d["warnings"] = r.warnings;
    return d;
  });
  m.def("total_curvature", [](const FlatDiskMetric& metric) { return total_curvature(metric); });
  m.def("puncture_curvature", [](const FlatDiskMetric& metric) { return puncture_curvature(metric); });
  m.def("canonical_count", [](double total) -> py::object {
    const auto c = canonical_count(total);
    if (c.cylinder) return py::str("cylinder");
    return py::int_(c.n);
  }, py::arg("total"));

  m.def("apply_tri_cut", [](const FlatDiskMetric& metric, std::size_t i, double a_pi, double v_pi) {
    return apply_tri_cut(metric, TriCut{i, a_pi * kPi, v_pi * kPi});
  }, py::arg("metric"), py::arg("i"), py::arg("a_pi"), py::arg("v_pi"),
     "Cut the triangle on segment i; wedge angles in multiples of pi.");

  m.def("apply_plan", [](const FlatDiskMetric& metric, const py::object& plan) {
    return apply_plan(metric, plan_from_json(from_py(plan)));
  });

  m.def("canonicalize", [](const FlatDiskMetric& metric, std::optional<std::uint64_t> seed) {
    ReduceOptions options;
    options.seed = seed;
    const auto r = canonicalize(metric, options);
    py::dict d = canonical_dict(r.canonical);
    d["plan"] = to_py(plan_to_json(r.plan));
    return d;
  }, py::arg("metric"), py::arg("seed") = py::none());

  m.def("invariant", [](const FlatDiskMetric& metric) {
    const auto r = invariant(metric);
    py::dict d;
    d["kind"] = std::string(to_string(r.kind));
    d["n"] = r.n;
    d["canonical_lengths"] = r.canonical_lengths;
    if (r.representative) d["representative"] = *r.representative;
    if (r.alpha_beta) d["alpha_beta"] = *r.alpha_beta;
    if (r.holonomy) d["holonomy_translation"] = *r.holonomy;
    return d;
  });

  m.def("equivalent", [](const FlatDiskMetric& mu, const FlatDiskMetric& eta, bool labeled) {
    ClassifyOptions options;
    options.labeling = labeled ? Labeling::Labeled : Labeling::Unlabeled;
    const auto r = equivalent(mu, eta, options);
    py::dict d;
    d["equivalent"] = r.equivalent;
    d["basis"] = r.basis;
    d["note"] = r.note;
    d["certificate"] = r.certificate ? to_py(certificate_to_json(*r.certificate)) : py::none();
    return d;
  }, py::arg("mu"), py::arg("eta"), py::arg("labeled") = false);

  m.def("classify", [](const FlatDiskMetric& metric) {
    const auto r = classify_regularity(metric);
    py::dict d;
    d["regular"] = r.regular;
    d["puncture_curvature_pi"] = r.puncture_curvature / kPi;
    if (r.puncture_curvature_pi) d["puncture_curvature_pi_exact"] = to_string(*r.puncture_curvature_pi);
    d["reason"] = r.reason;
    return d;
  });

  m.def("cone_completion", [](const FlatDiskMetric& metric) {
    const auto c = cone_completion(metric);
    py::dict d;
    d["n"] = c.n;
    d["cone_angle_pi"] = c.cone_angle / kPi;
    py::list pieces;
    for (const auto& piece : c.pieces) {
      py::dict p;
      p["angles"] = piece.angles;
      p["sides"] = piece.sides;
      pieces.append(p);
    }
    d["pieces"] = pieces;
    d["leg"] = c.leg;
    d["gamma"] = c.gamma;
    d["gamma_prime"] = c.gamma_prime;
    d["residual"] = c.residual;
    d["realizable"] = c.realizable;
    return d;
  });

  m.def("principal_singularity", [](double total_pi, int n) {
    const auto r = singularity(total_pi * kPi, n);
    py::dict d;
    d["singular"] = r.singular;
    d["vanishing"] = r.vanishing;
    d["min_modulus"] = r.min_modulus;
    return d;
  }, py::arg("total_pi"), py::arg("n"));

  m.def("circulant_determinant", [](std::vector<double> c) {
    return determinant(CirculantMatrix{std::move(c), std::nullopt});
  });

  m.def("render_svg", [](const FlatDiskMetric& metric, const py::object& plan) {
    if (plan.is_none()) return render_svg(metric);
    const auto p = plan_from_json(from_py(plan));
    return render_svg(metric, &p);
  }, py::arg("metric"), py::arg("plan") = py::none());

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command line tool in-process; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = kToolVersion;
}
