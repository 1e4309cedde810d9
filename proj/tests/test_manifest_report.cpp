#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "fracam/errors.h"
#include "fracam/manifest.h"
#include "fracam/report.h"

using namespace fracam;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("JSON config") {
  RunManifest m;
  apply_config_text(R"({"alpha": 2.5, "B": -1, "selection": "e2", "mode": "full"})", m);
  CHECK(m.config.alpha == 2.5);
  CHECK(m.config.B == -1.0);
  CHECK(m.selection == FieldSelection::E2Only);
  CHECK(m.mode == ReductionMode::Full);
  CHECK(m.config.k == 0.5);
  CHECK_THROWS_AS(apply_config_text(R"({"gamma": 1})", m), ConfigError);
  CHECK_THROWS_AS(apply_config_text(R"({"alpha": "x"})", m), ConfigError);
  CHECK_THROWS_AS(apply_config_text("{ not json", m), ConfigError);
}

TEST_CASE("TOML-style config") {
  RunManifest m;
  apply_config_text("# trap\n[model]\nK = 4.0\nhbar = 0.5  # comment\nselection = \"e1\"\n", m);
  CHECK(m.config.K == 4.0);
  CHECK(m.config.hbar == 0.5);
  CHECK(m.selection == FieldSelection::E1Only);
  CHECK_THROWS_AS(apply_config_text("N = 3\n", m), ConfigError);
  CHECK_THROWS_AS(apply_config_text("alpha 3\n", m), ConfigError);
  CHECK_THROWS_AS(apply_config_file("/nonexistent/fracam.toml", m), ConfigError);
}

TEST_CASE("manifest validation") {
  RunManifest m;
  CHECK_NOTHROW(m.validate());
  m.N = 2;
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m = RunManifest{};
  m.trusted_fraction = 0.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m = RunManifest{};
  m.dt = -1;
  CHECK_THROWS_AS(m.validate(), ConfigError);
}

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e-20) == "1e-20");
  CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("spectrum CSV") {
  RunManifest m;
  m.N = 16;
  const auto s = fam_spectrum(m.config, m.selection, m.N);
  std::ostringstream os;
  write_spectrum_csv(os, fam_table(s, m.config, m.selection), m);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == 2 + 8);
  CHECK(lines[0].rfind("# manifest: {", 0) == 0);
  const auto manifest = nlohmann::json::parse(lines[0].substr(12));
  CHECK(manifest["N"] == 16);
  CHECK(manifest["config"]["k"] == 0.5);
  CHECK(lines[1] == "n,eigenvalue,formulaValue,absError");
  CHECK(lines[2].rfind("0,", 0) == 0);
  CHECK(lines[2].find(",1,") != std::string::npos);
}

TEST_CASE("full-model table") {
  const auto t = full_model_table(full_model_angular_spectrum(8, 0.5), 0.5);
  REQUIRE(t.rows.size() == 8);
  CHECK(t.rows.front().n == -4);
  CHECK(t.rows.front().formula == -2.0);
  CHECK(t.max_abs_error < 1e-10);
}

TEST_CASE("trajectory CSV") {
  RunManifest m;
  const auto sys = build_model(m.config, m.selection, ReductionMode::Full);
  const auto traj = integrate(sys, {{1.0, 0.0}, {0.0, 1.5}}, 1e-3, 5);
  std::ostringstream os;
  write_trajectory_csv(os, traj, m);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == 2 + 6);
  CHECK(lines[1] == "t,x1,x2,p1,p2,J,H,phi1,phi2");
  CHECK(lines[2].rfind("0,1,0,0,1.5,1.5,", 0) == 0);
}

TEST_CASE("analysis JSON") {
  RunManifest m;
  const auto a = analyze(build_model(m.config, m.selection, m.mode));
  const auto j = analysis_to_json(a, m);
  CHECK(j["dof"] == 1);
  CHECK(j["classification"]["second"] == 2);
  CHECK(j["constraints"].size() == 2);
  CHECK(j["constraints"][0]["class"] == "second");
  CHECK(j["dirac_brackets"]["x1,x2"] == "-1");
  CHECK(j["theta"] == 1.0);
  // the constraint text parses back to the same expression
  CHECK(parse_expression(j["constraints"][1]["expr"].get<std::string>()) == a.constraints[1].expr);

  RunManifest e1 = m;
  e1.selection = FieldSelection::E1Only;
  const auto j1 = analysis_to_json(analyze(build_model(e1.config, e1.selection, e1.mode)), e1);
  CHECK(j1["theta"].is_null());
  CHECK(j1["dof"] == 0);
}
