#include "flatpunct/io.hpp"

#include <fstream>
#include <sstream>

#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"

namespace flatpunct {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorCode::ParseError, message);
}

Rational rational_field(const json& value, const std::string& where) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_number()) return rational_from_double(value.get<double>());
  parse_error(where + ": expected a number or a \"p/q\" string");
}

double number_field(const json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return to_double(parse_rational(value.get<std::string>()));
  parse_error(where + ": expected a number");
}

const json& member(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) parse_error(std::string("missing field '") + key + "'");
  return *it;
}

// Angles are written as multiples of pi.
double angle_in(const json& value, const std::string& where) {
  return number_field(value, where) * kPi;
}

}  // namespace

FlatDiskMetric metric_from_json(const json& doc, const ParseOptions& options) {
  if (!doc.is_object()) parse_error("metric document must be a JSON object");
  if (const auto it = doc.find("schema"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != kSchema) {
      parse_error(std::string("unsupported schema; expected \"") + kSchema + "\"");
    }
  }
  if (const auto it = doc.find("cylinder"); it != doc.end()) {
    if (!it->is_object()) parse_error("cylinder must be an object {\"width\": w}");
    const double width = number_field(member(*it, "width"), "cylinder.width");
    return options.exact ? FlatDiskMetric::cylinder(width)
                         : FlatDiskMetric::cylinder(width).without_exact();
  }
  const json& kappa = member(doc, "kappa_pi");
  const json& lengths = member(doc, "lengths");
  if (!kappa.is_array() || !lengths.is_array()) {
    parse_error("kappa_pi and lengths must be arrays");
  }
  std::vector<Rational> kappa_pi;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    kappa_pi.push_back(rational_field(kappa[i], "kappa_pi[" + std::to_string(i) + "]"));
  }
  std::vector<double> ls;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    ls.push_back(number_field(lengths[i], "lengths[" + std::to_string(i) + "]"));
  }
  const FlatDiskMetric metric = FlatDiskMetric::from_pi_units(kappa_pi, std::move(ls));
  return options.exact ? metric : metric.without_exact();
}

json metric_to_json(const FlatDiskMetric& metric) {
  json doc;
  doc["schema"] = kSchema;
  if (metric.is_cylinder()) {
    doc["cylinder"] = {{"width", metric.width()}};
    return doc;
  }
  json kappa = json::array();
  for (double k : metric.kappas()) kappa.push_back(k / kPi);
  doc["kappa_pi"] = kappa;
  doc["lengths"] = std::vector<double>(metric.lengths().begin(), metric.lengths().end());
  if (metric.exact_total_pi()) doc["total_pi"] = to_string(*metric.exact_total_pi());
  return doc;
}

ModificationPlan plan_from_json(const json& doc) {
  const json* steps = &doc;
  if (doc.is_object()) steps = &member(doc, "steps");
  if (!steps->is_array()) parse_error("plan must be a JSON array of steps");
  ModificationPlan plan;
  for (std::size_t s = 0; s < steps->size(); ++s) {
    const json& step = (*steps)[s];
    const std::string where = "step " + std::to_string(s);
    if (!step.is_object()) parse_error(where + ": expected an object");
    const json& type = member(step, "type");
    if (!type.is_string()) parse_error(where + ": type must be a string");
    auto index = [&](const char* key) {
      const json& v = member(step, key);
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        parse_error(where + ": " + key + " must be a nonnegative integer");
      }
      return v.get<std::size_t>();
    };
    if (type == "tri_cut") {
      plan.append(TriCut{index("i"), angle_in(member(step, "a"), where + ".a"),
                         angle_in(member(step, "v"), where + ".v")});
    } else if (type == "principal") {
      plan.append(PrincipalMove{index("j"), number_field(member(step, "r"), where + ".r")});
    } else {
      parse_error(where + ": unknown step type '" + type.get<std::string>() + "'");
    }
  }
  return plan;
}

json plan_to_json(const ModificationPlan& plan) {
  json steps = json::array();
  for (const auto& step : plan.steps) {
    if (const auto* cut = std::get_if<TriCut>(&step)) {
      steps.push_back({{"type", "tri_cut"}, {"i", cut->i}, {"a", cut->a / kPi}, {"v", cut->v / kPi}});
    } else {
      const auto& move = std::get<PrincipalMove>(step);
      steps.push_back({{"type", "principal"}, {"j", move.j}, {"r", move.r}});
    }
  }
  return steps;
}

json canonical_to_json(const CanonicalMetric& canonical) {
  json doc;
  doc["total_curvature_pi"] = canonical.total / kPi;
  if (canonical.exact_total_pi) doc["total_curvature_pi_exact"] = to_string(*canonical.exact_total_pi);
  doc["n"] = canonical.n;
  doc["vertex_curvature_pi"] = canonical.vertex_curvature() / kPi;
  doc["lengths"] = canonical.lengths;
  return doc;
}

json certificate_to_json(const Certificate& certificate) {
  return {{"plan_left", plan_to_json(certificate.plan_left)},
          {"plan_right", plan_to_json(certificate.plan_right)},
          {"common", canonical_to_json(certificate.common)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::DomainError, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace flatpunct
