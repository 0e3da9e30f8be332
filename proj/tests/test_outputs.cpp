#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "bell/config.hpp"
#include "bell/dcb_analysis.hpp"
#include "bell/output.hpp"

using namespace bell;

namespace {

nlohmann::json valid_config() {
  return nlohmann::json::parse(R"({
    "schema_version": 1,
    "geometry": {"length_mm": 150.0, "width_mm": 25.0, "thickness_mm": 3.0, "precrack_mm": 30.5},
    "mesh": {"h_fine_mm": 5.0, "h_coarse_mm": 5.0, "fine_region_mm": [25.0, 95.0]},
    "material": {
      "E_xx_MPa": 139400.0, "E_yy_MPa": 10160.0, "E_zz_MPa": 10160.0,
      "nu_xy": 0.3, "nu_xz": 0.3, "nu_yz": 0.436,
      "G_xy_MPa": 4600.0, "G_xz_MPa": 4600.0, "G_yz_MPa": 3540.0,
      "G_Ic_N_mm": 0.170, "G_IIc_N_mm": 0.494,
      "tau_I0_MPa": 30.0, "tau_II0_MPa": 50.0, "eta_BK": 1.62
    },
    "integration": {"rule_points": 13, "subdivision_levels": 1},
    "step": {"target_mm": 4.0, "initial_mm": 0.04, "min_mm": 1e-4, "max_mm": 0.08},
    "output": {"directory": "out", "profiles_mm": [4.0], "damage_maps_mm": [4.0], "cbt_curve": true}
  })");
}

AnalysisHistory mini_run(DcbAnalysis& analysis, double target = 0.5) {
  StepControl control;
  control.target = target;
  control.initial_increment = 0.01;
  control.min_increment = 1e-5;
  control.max_increment = 0.02;
  return analysis.run(control, {target});
}

DcbAnalysis mini_analysis() {
  DCBGeometry g;
  g.length = 30.0;
  g.width = 5.0;
  g.thickness = 3.0;
  g.precrack = 10.0;
  g.h_fine = 2.5;
  g.h_coarse = 2.5;
  g.fine_x0 = 0.0;
  g.fine_x1 = 30.0;
  return DcbAnalysis(g, Material::t300_1076(), IntegrationScheme{13, 0});
}

}  // namespace

TEST_CASE("config round trip") {
  const RunConfig c = parse_config(valid_config());
  REQUIRE(c.geometry.h_fine == 5.0);
  REQUIRE(c.geometry.fine_x0 == 25.0);
  REQUIRE(c.material.E_xx == 139400.0);
  REQUIRE(c.integration.subdivision_levels == 1);
  REQUIRE(c.step.max_increment == 0.08);
  REQUIRE(c.step.force_tolerance == 5e-3);  // default
  REQUIRE(c.output.directory == "out");
  REQUIRE(c.output.profiles == std::vector<double>{4.0});
  REQUIRE(c.output.cbt_curve);
  REQUIRE(!c.cbt_correction.has_value());
}

TEST_CASE("config errors carry the field path") {
  auto expect_error = [](nlohmann::json j, const std::string& needle) {
    try {
      parse_config(j);
      FAIL("expected a config error mentioning " + needle);
    } catch (const std::invalid_argument& e) {
      REQUIRE(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  nlohmann::json j = valid_config();
  j["mesh"].erase("h_fine_mm");
  expect_error(j, "mesh.h_fine_mm");

  j = valid_config();
  j["material"]["E_xx_MPa"] = "fast";
  expect_error(j, "material.E_xx_MPa");

  j = valid_config();
  j.erase("integration");
  expect_error(j, "integration");

  j = valid_config();
  j["schema_version"] = 2;
  expect_error(j, "schema_version");

  // h_fine = 0 must be rejected up front, before any allocation
  j = valid_config();
  j["mesh"]["h_fine_mm"] = 0.0;
  REQUIRE_THROWS_AS(parse_config(j), std::invalid_argument);

  j = valid_config();
  j["integration"]["rule_points"] = 5;
  REQUIRE_THROWS_AS(parse_config(j), std::invalid_argument);
}

TEST_CASE("load-displacement export is deterministic") {
  DcbAnalysis a = mini_analysis();
  DcbAnalysis b = mini_analysis();
  const AnalysisHistory ha = mini_run(a);
  const AnalysisHistory hb = mini_run(b);

  std::ostringstream csva, csvb;
  write_load_displacement(ha, csva);
  write_load_displacement(hb, csvb);
  REQUIRE(csva.str() == csvb.str());
  REQUIRE(csva.str().rfind("opening_mm,load_N,iterations\n", 0) == 0);
  REQUIRE(ha.increments.size() + 1 ==
          static_cast<std::size_t>(std::count(csva.str().begin(), csva.str().end(), '\n')));
}

TEST_CASE("profile export: ordering and precrack plateau") {
  DcbAnalysis analysis = mini_analysis();
  const AnalysisHistory history = mini_run(analysis);
  REQUIRE(history.completed);

  std::ostringstream os;
  write_profile(history, analysis.mesh(), 0.5, os);
  std::istringstream in(os.str());
  std::string header;
  std::getline(in, header);
  REQUIRE(header == "x_mm,tau_I_MPa,damage");

  double prev_x = -1.0;
  int rows = 0, precrack_rows = 0;
  double x, tau, d;
  char comma;
  while (in >> x >> comma >> tau >> comma >> d) {
    REQUIRE(x > prev_x);
    prev_x = x;
    ++rows;
    if (x < 10.0) {
      ++precrack_rows;
      REQUIRE(d == 1.0);
      REQUIRE(std::abs(tau) < 1e-6);  // fully open precrack carries no traction
    }
  }
  REQUIRE(rows > 0);
  REQUIRE(precrack_rows > 0);

  REQUIRE_THROWS_AS(write_profile(history, analysis.mesh(), 0.123, os), std::invalid_argument);
}

TEST_CASE("damage map exports") {
  DcbAnalysis analysis = mini_analysis();
  const AnalysisHistory history = mini_run(analysis);
  const Mesh& mesh = analysis.mesh();

  std::ostringstream csv;
  write_damage_csv(history, 0.5, csv);
  REQUIRE(csv.str().rfind("x_mm,y_mm,damage\n", 0) == 0);
  const std::size_t data_lines = std::count(csv.str().begin(), csv.str().end(), '\n') - 1;
  REQUIRE(data_lines == mesh.tris.size() * 13);

  std::ostringstream vtk;
  write_damage_vtk(history, mesh, 0.5, vtk);
  const std::string text = vtk.str();
  REQUIRE(text.rfind("# vtk DataFile Version 3.0\n", 0) == 0);
  REQUIRE(text.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
  REQUIRE(text.find("POINTS " + std::to_string(mesh.plan_nodes) + " double") != std::string::npos);
  REQUIRE(text.find("CELLS " + std::to_string(mesh.tris.size())) != std::string::npos);
  REQUIRE(text.find("CELL_DATA " + std::to_string(mesh.tris.size())) != std::string::npos);
  REQUIRE(text.find("SCALARS damage double 1") != std::string::npos);
}

TEST_CASE("profile row selection prefers the +y side of mid-width") {
  DCBGeometry g;
  g.length = 30.0;
  g.width = 5.0;
  g.thickness = 3.0;
  g.precrack = 10.0;
  g.h_fine = 2.5;
  g.h_coarse = 2.5;
  g.fine_x0 = 0.0;
  g.fine_x1 = 30.0;
  const Mesh even = generate_mesh(g);  // ny = 2: rows 0 and 1, centerline between them
  REQUIRE(even.ny == 2);
  REQUIRE(profile_row(even) == 1);

  g.h_fine = g.h_coarse = 1.0;  // ny = 5: middle row contains the centerline
  const Mesh odd = generate_mesh(g);
  REQUIRE(odd.ny == 5);
  REQUIRE(profile_row(odd) == 2);
}
