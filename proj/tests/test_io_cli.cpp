#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support/test_support.hpp"
#include "thicksum/cli.hpp"
#include "thicksum/io.hpp"

using namespace thicksum;
using Catch::Matchers::WithinAbs;

namespace {

const std::filesystem::path& scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "thicksum_io_cli";
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_doc(const std::string& name, const json& doc) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
  return path.string();
}

std::string write_text(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << text;
  return path.string();
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

json envelope_of(const CliResult& r) { return json::parse(r.out); }

json middle_thirds_doc() {
  return json{{"dim", 1},
              {"maps", json::array({json{{"ratio", 1.0 / 3.0}, {"offset", {0.0}}},
                                    json{{"ratio", 1.0 / 3.0},
                                         {"offset", {2.0 / 3.0}}}})}};
}

json binary_cloud_doc() {
  return json{{"dim", 1}, {"points", {{0.0}, {1.0}}}};
}

}  // namespace

TEST_CASE("point cloud documents round-trip and reject malformed input") {
  PointCloud cloud = make_cloud(2, {{0.0, 0.0}, {1.0, 0.5}, {-0.25, 2.0}});
  const json doc = to_json(cloud);
  const PointCloud back = parse_point_cloud(doc, 1000);
  CHECK(back.dim == cloud.dim);
  CHECK(back.points == cloud.points);

  CHECK_THROWS_AS(parse_point_cloud(json{{"points", {{0.0}}}}, 1000), ParseError);
  CHECK_THROWS_AS(parse_point_cloud(json{{"dim", 0}, {"points", {{0.0}}}}, 1000),
                  ParseError);
  CHECK_THROWS_AS(parse_point_cloud(json{{"dim", 1}}, 1000), ParseError);
  CHECK_THROWS_AS(
      parse_point_cloud(json{{"dim", 1}, {"points", json::array()}}, 1000),
      ParseError);
  // Ragged row.
  CHECK_THROWS_AS(
      parse_point_cloud(json{{"dim", 2}, {"points", {{0.0, 0.0}, {1.0}}}}, 1000),
      ParseError);
  // Non-numeric and non-finite entries (NaN serializes to null).
  CHECK_THROWS_AS(
      parse_point_cloud(json{{"dim", 1}, {"points", {{"zero"}}}}, 1000),
      ParseError);
  json with_nan{{"dim", 1}, {"points", {{nullptr}}}};
  CHECK_THROWS_AS(parse_point_cloud(with_nan, 1000), ParseError);
  // Cap enforcement.
  CHECK_THROWS_AS(parse_point_cloud(to_json(cloud), 2), CapExceeded);
}

TEST_CASE("combination and IFS documents parse with diagnostics") {
  const ConvexWitness coeffs =
      parse_coeffs(json{{"coeffs", {{0.5, 0.5}, {1.0}}}});
  REQUIRE(coeffs.size() == 2);
  CHECK(coeffs[0] == std::vector<double>{0.5, 0.5});
  CHECK(coeffs[1] == std::vector<double>{1.0});
  CHECK_THROWS_AS(parse_coeffs(json{{"rows", json::array()}}), ParseError);

  const IfsModel model = parse_ifs(middle_thirds_doc());
  CHECK(model.dim == 1);
  REQUIRE(model.maps.size() == 2);
  CHECK(model.maps[0].ratio == 1.0 / 3.0);

  json bad = middle_thirds_doc();
  bad["maps"][0].erase("ratio");
  CHECK_THROWS_AS(parse_ifs(bad), ParseError);
  json expanding = middle_thirds_doc();
  expanding["maps"][0]["ratio"] = 1.5;  // structurally fine, semantically not
  CHECK_THROWS_AS(parse_ifs(expanding), ValidationError);
}

TEST_CASE("set documents dispatch on their shape") {
  const DiscretizedSet ifs_set = parse_set_document(middle_thirds_doc(), 3, 1000);
  CHECK(ifs_set.cloud.points.size() == 16);  // depth-fold images of both endpoints
  CHECK(ifs_set.delta > 0.0);

  json cloud_doc = binary_cloud_doc();
  cloud_doc["delta"] = 0.125;
  const DiscretizedSet cloud_set = parse_set_document(cloud_doc, 0, 1000);
  CHECK(cloud_set.delta == 0.125);
  CHECK(cloud_set.cloud.points.size() == 2);
  CHECK_THAT(cloud_set.diam, WithinAbs(1.25, 1e-12));  // diameter + 2*delta

  cloud_doc["delta"] = -0.5;
  CHECK_THROWS_AS(parse_set_document(cloud_doc, 0, 1000), ParseError);
}

TEST_CASE("file loading reports the path in diagnostics") {
  try {
    load_json_file("/nonexistent/dir/input.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/input.json") !=
          std::string::npos);
  }
  const std::string path = write_text("broken.json", "{\"dim\": 1, ");
  try {
    load_json_file(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
  }
}

TEST_CASE("threshold subcommand emits aligned text and a JSON report") {
  const CliResult both = run({"threshold", "--c", "1", "--d", "1"});
  CHECK(both.code == kExitOk);
  CHECK(both.out.rfind("threshold report", 0) == 0);
  CHECK(both.out.find("n_main") != std::string::npos);
  CHECK(both.out.find("\"command\"") != std::string::npos);

  const CliResult r = run({"--json", "--seed", "12345", "threshold", "--c", "1"});
  REQUIRE(r.code == kExitOk);
  const json env = envelope_of(r);
  CHECK(env["command"] == "threshold");
  CHECK(env["status"] == "pass");
  CHECK(env["config"]["seed"] == 12345);
  CHECK_THAT(env["payload"]["n_main"].get<double>(),
             WithinAbs(3.0 + 2.0 * std::sqrt(2.0), 1e-12));
  CHECK_THAT(env["payload"]["n_fw"].get<double>(), WithinAbs(2049.0, 1e-9));

  // The envelope round-trips to an equal JSON value.
  CHECK(json::parse(env.dump()) == env);

  // Identical config reproduces the payload byte for byte; wall time may vary.
  const CliResult again = run({"--json", "--seed", "12345", "threshold", "--c", "1"});
  CHECK(envelope_of(again)["payload"].dump() == env["payload"].dump());

  const CliResult text_only = run({"--text", "threshold", "--c", "0.5", "--d", "3"});
  CHECK(text_only.code == kExitOk);
  CHECK(text_only.out.find("\"command\"") == std::string::npos);
  CHECK(text_only.out.find("lambda_star") != std::string::npos);
}

TEST_CASE("argument and command errors map to the documented exit codes") {
  CHECK(run({"frobnicate"}).code == kExitUnknownCommand);
  CHECK(run({}).code == kExitUnknownCommand);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"threshold"}).code == kExitValidation);  // missing required --c

  const CliResult domain = run({"--json", "threshold", "--c", "2"});
  CHECK(domain.code == kExitValidation);
  CHECK(domain.err.find("validation error") != std::string::npos);
  const json env = envelope_of(domain);
  CHECK(env["status"] == "fail");
  CHECK(env["payload"]["error"]["type"] == "validation_error");

  const CliResult missing = run({"--json", "thickness", "--set",
                                 "/nonexistent/set.json", "--target", "0.5"});
  CHECK(missing.code == kExitBadFile);
  CHECK(missing.err.find("/nonexistent/set.json") != std::string::npos);
}

TEST_CASE("decomposition and rounding subcommands work from files") {
  const std::string cloud = write_doc("binary.json", binary_cloud_doc());
  const std::string coeffs = write_doc(
      "halves.json", json{{"coeffs", {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}}});

  const CliResult dec =
      run({"--json", "sf-decompose", "--points", cloud, "--coeffs", coeffs});
  REQUIRE(dec.code == kExitOk);
  const json denv = envelope_of(dec);
  CHECK(denv["status"] == "pass");
  CHECK(denv["payload"]["exceptional"].size() <= 1);  // at most d = 1
  CHECK(denv["payload"]["error"].get<double>() <= 1e-8);
  CHECK(denv["payload"]["exact"].size() + denv["payload"]["convexified"].size() == 3);

  const CliResult rnd =
      run({"--json", "round", "--points", cloud, "--coeffs", coeffs});
  REQUIRE(rnd.code == kExitOk);
  const json renv = envelope_of(rnd);
  CHECK(renv["status"] == "pass");
  CHECK_THAT(renv["payload"]["bound"].get<double>(), WithinAbs(0.5, 1e-12));
  CHECK(renv["payload"]["error"].get<double>() <= 0.5 + 1e-9);
  CHECK(renv["payload"]["chosen"].size() == 3);
}

TEST_CASE("thickness subcommand certifies an IFS model from a file") {
  const std::string ifs = write_doc("cantor.json", middle_thirds_doc());

  const CliResult pass =
      run({"--json", "thickness", "--set", ifs, "--depth", "4", "--target",
           "0.14", "--ratio", "0.9", "--floor", "0.037037037037037035"});
  REQUIRE(pass.code == kExitOk);
  const json penv = envelope_of(pass);
  CHECK(penv["status"] == "pass");
  CHECK(penv["payload"]["certificate"]["passed"] == true);
  CHECK(penv["payload"]["certificate"]["c_certified"].get<double>() >= 0.14);

  const CliResult fail =
      run({"--json", "thickness", "--set", ifs, "--depth", "4", "--target",
           "0.9", "--ratio", "0.9", "--floor", "0.037037037037037035"});
  CHECK(fail.code == kExitPremise);
  const json fenv = envelope_of(fail);
  CHECK(fenv["status"] == "fail");
  const json& worst = fenv["payload"]["certificate"]["worst"];
  REQUIRE(!worst.is_null());
  CHECK(worst["achieved_ratio"].get<double>() < 0.9);
  CHECK(worst.contains("center"));
  CHECK(worst["scale"].get<double>() > 0.0);
}

TEST_CASE("certify subcommand produces and refuses interior certificates") {
  const double lambda = std::sqrt(1.4) - 1.0;
  const double floor = lambda * lambda * 0.81;
  const std::string interval = write_doc(
      "interval.json",
      json{{"dim", 1},
           {"points", ts_test::swept_interval_points(100, 0.9, floor)}});
  const std::string lam = format_real(lambda);

  const CliResult ok = run({"--json", "certify", "--sets", interval, "--copies",
                            "30", "--alpha", "0.4", "--lambda", lam, "--depth",
                            "2", "--cert-ratio", "0.9"});
  REQUIRE(ok.code == kExitOk);
  const json env = envelope_of(ok);
  CHECK(env["status"] == "pass");
  CHECK(env["payload"]["depth"] == 2);
  CHECK_THAT(env["payload"]["ball"]["radius"].get<double>(),
             WithinAbs(30.0 * (0.4 - lambda), 1e-9));
  CHECK_THAT(env["payload"]["gap"].get<double>(),
             WithinAbs(30.0 * (1.0 - lambda) * lambda * lambda, 1e-9));
  CHECK(env["payload"]["checks"]["step1"]["passed"] == true);
  CHECK(env["payload"]["checks"]["step3"]["passed"] == true);
  CHECK(env["payload"]["checks"]["absorption"]["oracle_ran"] == true);

  // Below the parametric summand threshold: refused up front.
  const CliResult few = run({"--json", "certify", "--sets", interval, "--copies",
                             "29", "--alpha", "0.4", "--lambda", lam, "--depth",
                             "2", "--cert-ratio", "0.9"});
  CHECK(few.code == kExitValidation);
  CHECK(few.err.find("threshold") != std::string::npos);

  // Thickness premise failure: alpha above what the gate certifies.
  const CliResult greedy =
      run({"--json", "certify", "--sets", interval, "--copies", "30", "--alpha",
           "0.48", "--lambda", format_real(std::sqrt(1.48) - 1.0), "--depth",
           "2", "--cert-ratio", "0.9"});
  CHECK(greedy.code == kExitPremise);
  CHECK(greedy.err.find("thickness") != std::string::npos);
  const json genv = envelope_of(greedy);
  CHECK(genv["payload"]["error"]["type"] == "premise_failure");
  CHECK(genv["payload"]["error"]["check"] == "thickness");
}

TEST_CASE("oracle subcommands measure against their bounds") {
  const std::string cloud = write_doc("binary_oracle.json", binary_cloud_doc());

  SECTION("exhaustive sum distance") {
    const CliResult r = run({"--json", "oracle", "sum-distance", "--points",
                             cloud, "--copies", "3", "--x", "1.5"});
    REQUIRE(r.code == kExitOk);
    const json env = envelope_of(r);
    CHECK_THAT(env["payload"]["measured"].get<double>(), WithinAbs(0.5, 1e-12));
    CHECK_THAT(env["payload"]["bound"].get<double>(), WithinAbs(0.5, 1e-12));
    CHECK(env["payload"]["sum_points"] == 4);

    const CliResult outside = run({"--json", "oracle", "sum-distance",
                                   "--points", cloud, "--copies", "3", "--x",
                                   "5.0"});
    CHECK(outside.code == kExitPremise);  // outside the hull: bound not claimed
    CHECK(envelope_of(outside)["status"] == "fail");
  }

  SECTION("sampled residual") {
    const CliResult r = run({"--json", "--seed", "7", "oracle", "residual",
                             "--points", cloud, "--copies", "5", "--samples",
                             "256"});
    REQUIRE(r.code == kExitOk);
    const json env = envelope_of(r);
    CHECK(env["payload"]["measured"].get<double>() <= 0.5 + 1e-9);
    CHECK_THAT(env["payload"]["bound"].get<double>(), WithinAbs(0.5, 1e-12));
    const CliResult again = run({"--json", "--seed", "7", "oracle", "residual",
                                 "--points", cloud, "--copies", "5",
                                 "--samples", "256"});
    CHECK(envelope_of(again)["payload"].dump() == env["payload"].dump());
  }

  SECTION("one-dimensional absorption") {
    const double lambda = std::sqrt(1.4) - 1.0;
    const std::string interval = write_doc(
        "interval_oracle.json",
        json{{"dim", 1},
             {"points",
              ts_test::swept_interval_points(100, 0.9, lambda * lambda * 0.81)}});
    const CliResult r = run({"--json", "oracle", "absorb", "--set", interval,
                             "--copies", "30", "--alpha", "0.4", "--lambda",
                             format_real(lambda), "--depth", "2",
                             "--cert-ratio", "0.9"});
    REQUIRE(r.code == kExitOk);
    const json env = envelope_of(r);
    CHECK(env["payload"]["absorption"]["oracle_ran"] == true);
    CHECK(env["payload"]["absorption"]["sampled"].get<long long>() >= 100);
    CHECK(env["payload"]["measured"].get<double>() <= 1e-9);
  }
}

TEST_CASE("reports can be mirrored to a file") {
  const auto path = (scratch_dir() / "report.json").string();
  const CliResult r =
      run({"--json", "--out", path, "threshold", "--c", "0.49", "--d", "1"});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(path);
  REQUIRE(in.is_open());
  const json filed = json::parse(in);
  CHECK(filed["payload"].dump() == envelope_of(r)["payload"].dump());
  CHECK_THAT(filed["payload"]["lambda_star"].get<double>(),
             WithinAbs(0.22065556157337026, 1e-12));
}
