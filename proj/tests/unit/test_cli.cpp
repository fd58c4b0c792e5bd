#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatpunct/cli.hpp"
#include "flatpunct/errors.hpp"
#include "flatpunct/io.hpp"
#include "flatpunct/svg.hpp"
#include "support.hpp"

using namespace flatpunct;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FLATPUNCT_TEST_DATA;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const char* name) { return (kData / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "flatpunct_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("metric documents round trip") {
  const auto m = metric_from_json(read_json_file(data("quad.json")), ParseOptions{true});
  REQUIRE(m.exact_total_pi());
  CHECK(*m.exact_total_pi() == -2);
  const auto back = metric_from_json(metric_to_json(m));
  CHECK(same_boundary_data(back, m, 1e-15, Labeling::Labeled));
  const auto cyl = metric_from_json(read_json_file(data("cylinder.json")));
  CHECK(cyl.is_cylinder());
  CHECK(cyl.width() == 2.5);
  CHECK_THROWS_AS(metric_from_json(json{{"schema", "other/2"}, {"kappa_pi", {-1}}, {"lengths", {1}}}),
                  Error);
  CHECK_THROWS_AS(metric_from_json(json{{"kappa_pi", {-1}}}), Error);
}

TEST_CASE("plans round trip") {
  const auto plan = plan_from_json(read_json_file(data("merge_plan.json")));
  REQUIRE(plan.size() == 1);
  const auto again = plan_from_json(plan_to_json(plan));
  const auto& cut = std::get<TriCut>(again.steps[0]);
  CHECK(cut.i == 0);
  CHECK(cut.a == doctest::Approx(flatpunct::kPi / 3));
  CHECK_THROWS_AS(plan_from_json(json::parse(R"([{"type": "flip", "i": 0}])")), Error);
}

TEST_CASE("validate") {
  const auto ok = run({"validate", data("c123.json")});
  CHECK(ok.code == 0);
  CHECK(ok.report()["valid"] == true);
  CHECK(ok.report()["header"]["tool"] == "flatpunct");

  const auto bad = run({"validate", data("bad_length.json")});
  CHECK(bad.code == 2);
  CHECK(bad.report()["error"]["code"] == "InvalidMetric");

  const auto missing = run({"validate", data("nope.json")});
  CHECK(missing.code == 2);
  CHECK(missing.report()["error"]["code"] == "ParseError");
}

TEST_CASE("canonicalize writes a replayable plan") {
  const auto plan_path = scratch("canon_plan.json");
  const auto r = run({"canonicalize", data("quad.json"), "--exact", "--plan-out", plan_path.string()});
  CHECK(r.code == 0);
  const auto rep = r.report();
  CHECK(rep["canonical"]["n"] == 3);
  CHECK(rep["canonical"]["total_curvature_pi_exact"] == "-2");
  const auto replay = run({"moves", data("quad.json"), "--plan", plan_path.string()});
  CHECK(replay.code == 0);
}

TEST_CASE("moves reports the failing step") {
  const auto r = run({"moves", data("quad.json"), "--plan", data("bad_plan.json")});
  CHECK(r.code == 2);
  CHECK(r.report()["error"]["code"] == "ReplayFailure");
  CHECK(r.report()["error"]["step"] == 1);
}

TEST_CASE("classify at K = -2*pi") {
  const auto r = run({"classify", data("c123.json"), "--exact"});
  CHECK(r.code == 0);
  CHECK(r.report()["regular"] == false);
  CHECK(r.report()["puncture_curvature_pi"] == 4);
}

TEST_CASE("float mode warns near -2*pi") {
  const auto r = run({"classify", data("c123.json")});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto quiet = run({"classify", data("c123.json"), "--exact"});
  CHECK(quiet.err.empty());
}

TEST_CASE("equiv exit codes") {
  const auto yes = run({"equiv", data("c123.json"), data("c234.json"), "--exact"});
  CHECK(yes.code == 0);
  CHECK(yes.report()["equivalent"] == true);
  CHECK(yes.report().contains("certificate"));
  const auto no = run({"equiv", data("c123.json"), data("c124.json"), "--exact"});
  CHECK(no.code == 1);
  CHECK(no.report()["equivalent"] == false);
}

TEST_CASE("invariant and cone completion") {
  const auto inv = run({"invariant", data("c123.json"), "--exact"});
  CHECK(inv.code == 0);
  CHECK(inv.report()["representative"] == json::array({1, 2}));
  const auto cone = run({"cone-complete", data("single.json")});
  CHECK(cone.code == 0);
  const auto far = run({"cone-complete", data("c123.json")});
  CHECK(far.code == 2);
  CHECK(far.report()["error"]["code"] == "OutOfRange");
}

TEST_CASE("gauss-bonnet") {
  const auto r = run({"gauss-bonnet", data("quad.json"), "--exact"});
  CHECK(r.code == 0);
  CHECK(r.report()["exact_residual_pi"] == "0");
}

TEST_CASE("circulant subcommand") {
  const auto r = run({"circulant", "--principal-k", "-2", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.report()["singular"] == true);
  CHECK(r.report()["rank"] == 1);
  const auto c = run({"circulant", "1", "1/2", "0"});
  CHECK(c.code == 0);
  CHECK(c.report()["rank_method"] == "gcd");
}

TEST_CASE("tolerance flag overrides the environment") {
  const auto r = run({"validate", data("c123.json"), "--tolerance", "1e-7"});
  CHECK(r.report()["header"]["tolerance"] == 1e-7);
}

TEST_CASE("batch mode") {
  const auto r = run({"validate", "--batch", data("batch")});
  CHECK(r.code == 2);
  const auto results = r.report()["results"];
  REQUIRE(results.size() == 4);
  CHECK(results[0]["file"] == "c123.json");
  CHECK(results[3]["report"]["valid"] == false);
}

TEST_CASE("svg golden files are byte-stable") {
  struct Case {
    const char* metric;
    const char* plan;
    const char* golden;
  };
  const Case cases[] = {{"right_iso.json", nullptr, "right_iso.svg"},
                        {"single.json", nullptr, "single.svg"},
                        {"cylinder.json", nullptr, "cylinder.svg"},
                        {"quad.json", "merge_plan.json", "quad_cut.svg"}};
  for (const auto& c : cases) {
    CAPTURE(c.golden);
    std::vector<std::string> args{"render", data(c.metric)};
    if (c.plan) {
      args.push_back("--plan");
      args.push_back(data(c.plan));
    }
    const auto first = run(args);
    const auto second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out == slurp(kData / "golden" / c.golden));
  }
  const auto out = scratch("render.svg");
  const auto r = run({"render", data("right_iso.json"), "--svg-out", out.string()});
  CHECK(r.code == 0);
  CHECK(slurp(out) == slurp(kData / "golden" / "right_iso.svg"));
}

TEST_CASE("usage errors") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
