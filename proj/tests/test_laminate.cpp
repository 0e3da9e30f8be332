#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bell/material.hpp"

using namespace bell;

TEST_CASE("benchmark ply bending stiffness") {
  const Material m = Material::t300_1076();
  const PlateStiffness d = plate_bending_stiffness(m, 1.5);
  // frozen from an independent classical-laminate-theory evaluation
  REQUIRE(d.D11 == Catch::Approx(39465.1230886099).epsilon(1e-12));
  REQUIRE(d.D12 == Catch::Approx(862.910295366450).epsilon(1e-12));
  REQUIRE(d.D22 == Catch::Approx(2876.36765122150).epsilon(1e-12));
  REQUIRE(d.D33 == Catch::Approx(1293.75).epsilon(1e-12));
}

TEST_CASE("identity-like isotropic case") {
  Material m;
  m.E_xx = m.E_yy = m.E_zz = 1.0;
  m.G_xy = m.G_xz = m.G_yz = 0.5;  // E/(2(1+nu)) with nu = 0
  m.G_Ic = m.G_IIc = 1.0;
  m.tau_I0 = m.tau_II0 = 1.0;
  const double t = std::cbrt(12.0);  // t^3/12 = 1
  const PlateStiffness d = plate_bending_stiffness(m, t);
  REQUIRE(d.D11 == Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE(d.D22 == Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE(d.D12 == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(d.D33 == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cubic thickness scaling") {
  const Material m = Material::t300_1076();
  const PlateStiffness d1 = plate_bending_stiffness(m, 1.5);
  const PlateStiffness d2 = plate_bending_stiffness(m, 3.0);
  REQUIRE(d2.D11 == Catch::Approx(8.0 * d1.D11).epsilon(1e-14));
  REQUIRE(d2.D12 == Catch::Approx(8.0 * d1.D12).epsilon(1e-14));
  REQUIRE(d2.D22 == Catch::Approx(8.0 * d1.D22).epsilon(1e-14));
  REQUIRE(d2.D33 == Catch::Approx(8.0 * d1.D33).epsilon(1e-14));

  std::mt19937 gen(7);
  std::uniform_real_distribution<double> unif(0.1, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double t = unif(gen);
    const PlateStiffness d = plate_bending_stiffness(m, t);
    const double scale = t * t * t / (1.5 * 1.5 * 1.5);
    REQUIRE(d.D11 == Catch::Approx(scale * d1.D11).epsilon(1e-12));
    REQUIRE(d.D33 == Catch::Approx(scale * d1.D33).epsilon(1e-12));
  }
}

TEST_CASE("equal moduli and zero Poisson give D11 == D22") {
  Material m = Material::t300_1076();
  m.E_yy = m.E_xx;
  m.nu_xy = 0.0;
  const PlateStiffness d = plate_bending_stiffness(m, 2.0);
  REQUIRE(d.D11 == Catch::Approx(d.D22).epsilon(1e-14));
  REQUIRE(d.D12 == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("invalid inputs are rejected") {
  const Material m = Material::t300_1076();
  REQUIRE_THROWS_AS(plate_bending_stiffness(m, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(plate_bending_stiffness(m, -1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(plate_bending_stiffness(m, 1.5, 45.0), std::invalid_argument);

  Material bad = m;
  bad.E_zz = -1.0;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = m;
  bad.G_Ic = 0.0;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = m;
  bad.nu_xy = 4.0;  // nu_xy^2 E_yy/E_xx > 1
  bad.E_yy = bad.E_xx;
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
}
