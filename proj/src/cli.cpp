#include "flatpunct/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "flatpunct/circulant.hpp"
#include "flatpunct/classify.hpp"
#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"
#include "flatpunct/io.hpp"
#include "flatpunct/planner.hpp"
#include "flatpunct/svg.hpp"

namespace flatpunct {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Settings {
  double tolerance = kDefaultTolerance;
  bool exact = false;
  bool labeled = false;
  std::string plan_out;
  std::string svg_out;
  std::string batch;
  std::optional<std::uint64_t> seed;
};

struct Outcome {
  json report;
  int code = 0;
};

// Integral values print as integers, so 4*pi reads "4" rather than "4.0".
json pi_number(double value) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= 1e-12 && std::abs(nearest) < 1e15) {
    return static_cast<long long>(nearest);
  }
  return value;
}

json header(const Settings& s) {
  return {{"tool", "flatpunct"},
          {"version", kToolVersion},
          {"tolerance", s.tolerance},
          {"mode", s.exact ? "exact" : "float"}};
}

json error_object(const Error& e) {
  json obj = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (e.step()) obj["step"] = *e.step();
  return obj;
}

ClassifyOptions classify_options(const Settings& s) {
  ClassifyOptions o;
  o.tolerance = s.tolerance;
  o.labeling = s.labeled ? Labeling::Labeled : Labeling::Unlabeled;
  o.seed = s.seed;
  return o;
}

FlatDiskMetric load_metric(const std::string& path, const Settings& s, json& warnings) {
  const FlatDiskMetric metric = metric_from_json(read_json_file(path), ParseOptions{s.exact});
  if (!s.exact && !metric.is_cylinder()) {
    const double gap = std::abs(total_curvature(metric) + 2.0 * kPi);
    if (gap < 1e-6) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3g", gap);
      warnings.push_back(fs::path(path).filename().string() +
                         ": K is within 1e-6 of -2pi in float mode (gap " + buf +
                         "); classification there is discontinuous, consider --exact");
    }
  }
  return metric;
}

FlatDiskMetric load_valid(const std::string& path, const Settings& s, json& warnings) {
  FlatDiskMetric metric = load_metric(path, s, warnings);
  require_valid(metric);
  return metric;
}

json canonical_json_from(const CanonicalizeResult& res) {
  return {{"canonical", canonical_to_json(res.canonical)},
          {"plan_steps", res.plan.size()},
          {"plan", plan_to_json(res.plan)}};
}

Outcome cmd_validate(const std::string& file, const Settings& s, json& warnings) {
  const FlatDiskMetric metric = load_metric(file, s, warnings);
  const ValidationReport r = validate(metric);
  if (!r.valid) {
    std::string msg = "invalid metric:";
    for (const auto& e : r.errors) msg += " " + e + ";";
    json rep = {{"valid", false}, {"errors", r.errors}, {"warnings", r.warnings}};
    rep["error"] = {{"code", "InvalidMetric"}, {"message", msg}};
    return {rep, 2};
  }
  json rep = {{"valid", true}, {"errors", json::array()}, {"warnings", r.warnings}};
  if (metric.is_cylinder()) {
    rep["cylinder"] = {{"width", metric.width()}};
  } else {
    rep["vertices"] = metric.size();
    rep["total_curvature_pi"] = pi_number(total_curvature(metric) / kPi);
    if (metric.exact_total_pi()) rep["total_curvature_pi_exact"] = to_string(*metric.exact_total_pi());
  }
  return {rep, 0};
}

Outcome cmd_canonicalize(const std::string& file, const Settings& s, json& warnings) {
  const FlatDiskMetric metric = load_valid(file, s, warnings);
  ReduceOptions ro;
  ro.seed = s.seed;
  const auto res = canonicalize(metric, ro);
  if (!s.plan_out.empty()) write_text_file(s.plan_out, plan_to_json(res.plan).dump(2) + "\n");
  return {canonical_json_from(res), 0};
}

Outcome cmd_invariant(const std::string& file, const Settings& s, json& warnings) {
  const FlatDiskMetric metric = load_valid(file, s, warnings);
  const InvariantReport r = invariant(metric, classify_options(s));
  json rep = {{"kind", std::string(to_string(r.kind))},
              {"total_curvature_pi", pi_number(r.total / kPi)}};
  if (r.exact_total_pi) rep["total_curvature_pi_exact"] = to_string(*r.exact_total_pi);
  if (r.kind != InvariantKind::Cylinder) {
    rep["n"] = r.n;
    rep["canonical_lengths"] = r.canonical_lengths;
  }
  if (!r.orbit.empty()) {
    json orbit = json::array();
    for (const auto& p : r.orbit) orbit.push_back({p.first, p.second});
    rep["orbit"] = orbit;
    rep["representative"] = {r.representative->first, r.representative->second};
    rep["alpha_beta"] = {r.alpha_beta->first, r.alpha_beta->second};
  }
  if (r.holonomy) rep["holonomy_translation"] = *r.holonomy;
  if (!s.plan_out.empty()) write_text_file(s.plan_out, plan_to_json(r.plan).dump(2) + "\n");
  return {rep, 0};
}

Outcome cmd_equiv(const std::string& a, const std::string& b, const Settings& s, json& warnings) {
  const FlatDiskMetric mu = load_valid(a, s, warnings);
  const FlatDiskMetric eta = load_valid(b, s, warnings);
  const EquivalenceResult r = equivalent(mu, eta, classify_options(s));
  json rep = {{"equivalent", r.equivalent},
              {"basis", r.basis},
              {"labeling", s.labeled ? "labeled" : "unlabeled"},
              {"certified", r.certificate.has_value()}};
  if (!r.note.empty()) rep["note"] = r.note;
  if (r.certificate) {
    const json cert = certificate_to_json(*r.certificate);
    rep["certificate"] = cert;
    if (!s.plan_out.empty()) write_text_file(s.plan_out, cert.dump(2) + "\n");
  }
  return {rep, r.equivalent ? 0 : 1};
}

Outcome cmd_classify(const std::string& file, const Settings& s, json& warnings) {
  const FlatDiskMetric metric = load_valid(file, s, warnings);
  const RegularityReport r = classify_regularity(metric, classify_options(s));
  json rep = {{"regular", r.regular},
              {"puncture_curvature_pi", pi_number(r.puncture_curvature / kPi)},
              {"reason", r.reason}};
  if (r.puncture_curvature_pi) rep["puncture_curvature_pi_exact"] = to_string(*r.puncture_curvature_pi);
  if (r.holonomy) rep["holonomy_translation"] = *r.holonomy;
  const auto moduli = moduli_description(normalize(metric).is_cylinder() ? 0.0 : total_curvature(metric),
                                         std::max(s.tolerance, 1e-9));
  rep["moduli"] = {{"kind", moduli.kind}, {"text", moduli.text}};
  return {rep, 0};
}

Outcome cmd_moves(const std::string& file, const std::string& plan_file, const std::string& expect,
                  const Settings& s, json& warnings) {
  const FlatDiskMetric metric = load_valid(file, s, warnings);
  const ModificationPlan plan = plan_from_json(read_json_file(plan_file));
  const FlatDiskMetric result = apply_plan(metric, plan);
  json rep = {{"steps", plan.size()}, {"result", metric_to_json(result)},
              {"total_curvature_pi", pi_number(total_curvature(result) / kPi)}};
  if (!expect.empty()) {
    const FlatDiskMetric target = load_valid(expect, s, warnings);
    const bool ok = verify_plan(metric, plan, target, s.tolerance,
                                s.labeled ? Labeling::Labeled : Labeling::Unlabeled);
    rep["matches_expected"] = ok;
    return {rep, ok ? 0 : 1};
  }
  return {rep, 0};
}

Outcome cmd_circulant(const std::vector<std::string>& coeffs, const std::string& principal_k,
                      int principal_n, const Settings& s) {
  CirculantMatrix c;
  json rep;
  if (!principal_k.empty()) {
    const Rational k_pi = parse_rational(principal_k);
    c = principal_matrix_exact(k_pi, principal_n);
    const auto sing = singularity(to_double(k_pi) * kPi, principal_n);
    rep["principal"] = {{"total_curvature_pi", to_string(k_pi)}, {"n", principal_n}};
    rep["singular"] = sing.singular;
    rep["vanishing_factors"] = sing.vanishing;
    rep["min_factor_modulus"] = sing.min_modulus;
  } else {
    if (coeffs.empty()) throw Error(ErrorCode::DomainError, "give coefficients or --principal-k");
    std::vector<Rational> exact;
    for (const auto& t : coeffs) exact.push_back(parse_rational(t));
    c = CirculantMatrix::from_rational(std::move(exact));
  }
  rep["coefficients"] = c.c;
  const Spectrum spectrum = eigenvalues(c);
  json eig = json::array();
  double largest = 0.0;
  for (const auto& l : spectrum.eigenvalues) {
    eig.push_back({l.real(), l.imag()});
    largest = std::max(largest, std::abs(l));
  }
  rep["eigenvalues"] = eig;
  rep["determinant"] = determinant(c);
  if (c.exact) {
    rep["rank"] = rank_by_gcd(c);
    rep["rank_method"] = "gcd";
    rep["vanishing_factors_exact"] = exact_vanishing_factors(c);
  } else {
    std::size_t rank = 0;
    for (const auto& l : spectrum.eigenvalues) rank += std::abs(l) > 1e-9 * std::max(1.0, largest);
    rep["rank"] = rank;
    rep["rank_method"] = "numeric";
  }
  (void)s;
  return {rep, 0};
}

Outcome cmd_cone(const std::string& file, const Settings& s, json& warnings) {
  const FlatDiskMetric metric = load_valid(file, s, warnings);
  const ConeCompletion cc = cone_completion(metric, classify_options(s));
  json pieces = json::array();
  for (const auto& p : cc.pieces) {
    pieces.push_back({{"angles_pi", {p.angles[0] / kPi, p.angles[1] / kPi, p.angles[2] / kPi}},
                      {"sides", p.sides}});
  }
  json rep = {{"cone_angle_pi", pi_number(cc.cone_angle / kPi)},
              {"n", cc.n},
              {"pieces", pieces},
              {"gluing", cc.gluing},
              {"realizable", cc.realizable}};
  if (cc.n >= 1) rep["leg"] = cc.leg;
  if (cc.n == 2) {
    rep["gamma_pi"] = cc.gamma / kPi;
    rep["gamma_prime_pi"] = cc.gamma_prime / kPi;
    rep["residual"] = cc.residual;
    rep["iterations"] = cc.iterations;
  }
  return {rep, 0};
}

Outcome cmd_gauss_bonnet(const std::string& file, const Settings& s, json& warnings) {
  const FlatDiskMetric metric = load_valid(file, s, warnings);
  const GaussBonnetReport r = gauss_bonnet_check(metric);
  json rep = {{"boundary_total_pi", pi_number(r.boundary_total / kPi)},
              {"puncture_curvature_pi", pi_number(r.puncture_curvature / kPi)},
              {"expected_pi", pi_number(r.expected / kPi)},
              {"residual", r.residual},
              {"holds", r.holds}};
  if (r.exact_residual_pi) rep["exact_residual_pi"] = to_string(*r.exact_residual_pi);
  return {rep, 0};
}

Outcome cmd_render(const std::string& file, const std::string& plan_file, const Settings& s,
                   json& warnings, std::ostream& out, bool& raw_written) {
  const FlatDiskMetric metric = load_valid(file, s, warnings);
  std::optional<ModificationPlan> plan;
  if (!plan_file.empty()) plan = plan_from_json(read_json_file(plan_file));
  const std::string svg = render_svg(metric, plan ? &*plan : nullptr);
  if (s.svg_out.empty()) {
    out << svg;
    raw_written = true;
    return {{}, 0};
  }
  write_text_file(s.svg_out, svg);
  const FlatDiskMetric base = normalize(metric);
  return {{{"svg", s.svg_out},
           {"scale", 100.0},
           {"segments", base.is_cylinder() ? 1 : base.size()},
           {"overlay_steps", plan ? plan->size() : 0}},
          0};
}

using SingleFileCommand = std::function<Outcome(const std::string&, json&)>;

Outcome run_batch(const std::string& dir, const SingleFileCommand& command) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  json results = json::array();
  int code = 0;
  for (const auto& f : files) {
    json warnings = json::array();
    json item = {{"file", f.filename().string()}};
    try {
      Outcome o = command(f.string(), warnings);
      item["report"] = o.report;
      code = std::max(code, o.code);
    } catch (const Error& e) {
      item["error"] = error_object(e);
      code = 2;
    }
    if (!warnings.empty()) item["warnings"] = warnings;
    results.push_back(item);
  }
  return {{{"results", results}}, code};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  if (const char* env = std::getenv("FLATPUNCT_TOLERANCE")) {
    try {
      s.tolerance = std::stod(env);
    } catch (const std::exception&) {
      err << "ignoring unparsable FLATPUNCT_TOLERANCE='" << env << "'\n";
    }
  }

  CLI::App app{"Modification equivalence and puncture classification for flat metrics on the "
               "punctured disk. Degeneracy cutoff for angles is 1e-9 throughout.",
               "flatpunct"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tolerance_flag;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--tolerance", tolerance_flag, "Comparison tolerance (overrides FLATPUNCT_TOLERANCE)");
  app.add_flag("--exact", s.exact, "Keep kappa_pi as exact rationals");
  app.add_flag("--labeled", s.labeled, "Compare without quotienting by vertex rotation");
  app.add_option("--plan-out", s.plan_out, "Write the plan or certificate JSON here");
  app.add_option("--svg-out", s.svg_out, "Write the SVG rendering here");
  app.add_option("--batch", s.batch, "Process every *.json file in this directory");
  app.add_option("--seed", seed_flag, "Randomize canonicalization plans with this seed");

  std::string file, file_b, plan_file, expect_file, principal_k;
  int principal_n = 0;
  std::vector<std::string> coeffs;

  auto single = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Metric JSON document");
    sub->fallthrough();
    return sub;
  };
  CLI::App* validate_cmd = single("validate", "Check a metric document against its invariants");
  CLI::App* canon_cmd = single("canonicalize", "Reduce to the canonical form with a replayable plan");
  CLI::App* invariant_cmd = single("invariant", "Compute the classifying invariant");
  CLI::App* classify_cmd = single("classify", "Classify the puncture as regular or irregular");
  CLI::App* cone_cmd = single("cone-complete", "Glue pieces realizing the puncture as a cone end");
  CLI::App* gb_cmd = single("gauss-bonnet", "Check the Gauss-Bonnet identity");
  CLI::App* render_cmd = single("render", "Render the developed boundary as SVG");
  render_cmd->add_option("--plan", plan_file, "Overlay the cut triangles of this plan");
  CLI::App* moves_cmd = single("moves", "Replay a modification plan");
  moves_cmd->add_option("--plan", plan_file, "Plan JSON")->required();
  moves_cmd->add_option("--expect", expect_file, "Verify the replay lands on this metric");

  CLI::App* equiv_cmd = app.add_subcommand("equiv", "Decide modification equivalence");
  equiv_cmd->add_option("first", file, "Metric JSON document")->required();
  equiv_cmd->add_option("second", file_b, "Metric JSON document")->required();
  equiv_cmd->fallthrough();

  CLI::App* circ_cmd = app.add_subcommand("circulant", "Spectrum, determinant and rank of a circulant");
  circ_cmd->add_option("coefficients", coeffs, "First column, rationals allowed (\"1/2\")");
  circ_cmd->add_option("--principal-k", principal_k, "Use the principal matrix for K/pi = this");
  circ_cmd->add_option("--n", principal_n, "Dimension of the principal matrix");
  circ_cmd->fallthrough();

  std::vector<std::string> argv_store{"flatpunct"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (tolerance_flag) s.tolerance = *tolerance_flag;
  s.seed = seed_flag;

  json warnings = json::array();
  bool raw_written = false;
  Outcome outcome;
  try {
    auto dispatch_single = [&](const SingleFileCommand& command) -> Outcome {
      if (!s.batch.empty()) return run_batch(s.batch, command);
      if (file.empty()) throw Error(ErrorCode::DomainError, "missing metric file argument");
      return command(file, warnings);
    };
    if (*validate_cmd) {
      outcome = dispatch_single([&](const std::string& f, json& w) { return cmd_validate(f, s, w); });
    } else if (*canon_cmd) {
      outcome = dispatch_single([&](const std::string& f, json& w) { return cmd_canonicalize(f, s, w); });
    } else if (*invariant_cmd) {
      outcome = dispatch_single([&](const std::string& f, json& w) { return cmd_invariant(f, s, w); });
    } else if (*classify_cmd) {
      outcome = dispatch_single([&](const std::string& f, json& w) { return cmd_classify(f, s, w); });
    } else if (*cone_cmd) {
      outcome = dispatch_single([&](const std::string& f, json& w) { return cmd_cone(f, s, w); });
    } else if (*gb_cmd) {
      outcome = dispatch_single([&](const std::string& f, json& w) { return cmd_gauss_bonnet(f, s, w); });
    } else if (*moves_cmd) {
      outcome = dispatch_single(
          [&](const std::string& f, json& w) { return cmd_moves(f, plan_file, expect_file, s, w); });
    } else if (*render_cmd) {
      outcome = cmd_render(file, plan_file, s, warnings, out, raw_written);
    } else if (*equiv_cmd) {
      outcome = cmd_equiv(file, file_b, s, warnings);
    } else if (*circ_cmd) {
      outcome = cmd_circulant(coeffs, principal_k, principal_n, s);
    }
  } catch (const Error& e) {
    outcome.report = {{"error", error_object(e)}};
    outcome.code = 2;
  } catch (const std::exception& e) {
    outcome.report = {{"error", {{"code", "InternalError"}, {"message", e.what()}}}};
    outcome.code = 2;
  }

  for (const auto& w : warnings) err << "warning: " << w.get<std::string>() << "\n";
  if (raw_written) return outcome.code;
  json report = {{"header", header(s)}};
  for (auto it = outcome.report.begin(); it != outcome.report.end(); ++it) report[it.key()] = it.value();
  if (!warnings.empty()) report["warnings"] = warnings;
  out << report.dump(2) << "\n";
  return outcome.code;
}

}  // namespace flatpunct
