#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "bell/dcb_analysis.hpp"
#include "bell/solver.hpp"

using namespace bell;

namespace {

// small DCB specimen that fully delaminates within half a millimetre of
// opening; cheap enough for property checks
DCBGeometry mini_geometry() {
  DCBGeometry g;
  g.length = 30.0;
  g.width = 5.0;
  g.thickness = 3.0;
  g.precrack = 10.0;
  g.h_fine = 2.5;
  g.h_coarse = 2.5;
  g.fine_x0 = 0.0;
  g.fine_x1 = 30.0;
  return g;
}

StepControl mini_control() {
  StepControl c;
  c.target = 0.5;
  c.initial_increment = 0.01;
  c.min_increment = 1e-5;
  c.max_increment = 0.02;
  return c;
}

const CohesiveProps kDummyProps{1.0, 1.0, 1.0};

}  // namespace

TEST_CASE("single unconstrained plate assembles to its element matrix") {
  const Triangle tri(0.0, 0.0, 2.0, 0.1, 0.4, 1.7);
  const PlateStiffness D = plate_bending_stiffness(Material::t300_1076(), 1.5);
  const Matrix18 k = element_stiffness(tri, D);

  PlateInstance plate;
  for (int i = 0; i < 18; ++i) plate.dofs[i] = i;
  plate.stiffness = &k;
  NonlinearStatics solver(18, {plate}, {}, ConstraintSet{}, kDummyProps);
  REQUIRE(solver.reduced_size() == 18);

  const Eigen::MatrixXd global =
      Eigen::MatrixXd(solver.reduced_stiffness(Eigen::VectorXd::Zero(18)))
          .selfadjointView<Eigen::Lower>();
  REQUIRE((global - k).cwiseAbs().maxCoeff() < 1e-12 * k.cwiseAbs().maxCoeff());
}

TEST_CASE("plate pair with intact interface is at rest") {
  const DCBGeometry geom = mini_geometry();
  DcbAnalysis analysis(geom, Material::t300_1076(), IntegrationScheme{13, 0});
  auto& solver = analysis.solver();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(analysis.mesh().dof_count());
  REQUIRE(solver.reduced_residual(u).lpNorm<Eigen::Infinity>() == 0.0);
  REQUIRE(solver.reaction(u) == 0.0);
}

TEST_CASE("reduced stiffness of the undamaged model is positive definite") {
  DCBGeometry g = mini_geometry();
  g.precrack = 2.5;  // keep one precracked strip
  DcbAnalysis analysis(g, Material::t300_1076(), IntegrationScheme{13, 0});
  auto& solver = analysis.solver();
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(analysis.mesh().dof_count());
  const Eigen::MatrixXd k =
      Eigen::MatrixXd(solver.reduced_stiffness(u)).selfadjointView<Eigen::Lower>();
  REQUIRE((k - k.transpose()).cwiseAbs().maxCoeff() < 1e-10 * k.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
  REQUIRE(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("prescribed tip deflection matches a dense condensation oracle") {
  const Triangle tri(0.0, 0.0, 3.0, 0.0, 0.0, 2.0);
  const PlateStiffness D = plate_bending_stiffness(Material::t300_1076(), 1.5);
  const Matrix18 k = element_stiffness(tri, D);

  PlateInstance plate;
  for (int i = 0; i < 18; ++i) plate.dofs[i] = i;
  plate.stiffness = &k;

  ConstraintSet set;
  for (int d = 0; d < 12; ++d) set.fixed.push_back(d);  // clamp nodes 1 and 2
  set.driven.push_back(12);                             // w at node 3

  NonlinearStatics solver(18, {plate}, {}, set, kDummyProps);
  StepControl control;
  control.target = 0.3;
  control.initial_increment = 0.3;
  control.max_increment = 0.3;
  const AnalysisHistory history = solver.run(control, {});
  REQUIRE(history.completed);
  REQUIRE(history.increments.size() == 1);

  // dense partition: free DOFs are the five remaining components of node 3
  Eigen::VectorXd u = Eigen::VectorXd::Zero(18);
  u[12] = 0.3;
  const Eigen::MatrixXd kff = k.block(13, 13, 5, 5);
  const Eigen::VectorXd rhs = -k.block(13, 0, 5, 13) * u.head(13);
  u.tail(5) = kff.ldlt().solve(rhs);
  const double reaction = k.row(12) * u;

  REQUIRE(history.increments[0].reaction == Catch::Approx(reaction).epsilon(1e-9));
  REQUIRE((solver.displacements() - u).lpNorm<Eigen::Infinity>() <
          1e-9 * u.lpNorm<Eigen::Infinity>());
}

TEST_CASE("mini DCB analysis: equilibrium, constraints, energy, damage") {
  const DCBGeometry geom = mini_geometry();
  const Material mat = Material::t300_1076();
  DcbAnalysis analysis(geom, mat, IntegrationScheme{13, 0});
  const StepControl control = mini_control();

  std::ostringstream log;
  const AnalysisHistory history = analysis.run(control, {0.2, 0.35, 0.5}, &log);
  REQUIRE(history.completed);
  REQUIRE(history.snapshots.size() == 3);
  REQUIRE(history.peak_load() > 0.0);
  REQUIRE(log.str().find("step 1 opening") != std::string::npos);

  // openings strictly increase and the final state is in equilibrium
  for (std::size_t i = 1; i < history.increments.size(); ++i) {
    REQUIRE(history.increments[i].opening > history.increments[i - 1].opening);
  }
  auto& solver = analysis.solver();
  Eigen::VectorXd u = solver.displacements();
  REQUIRE(solver.reduced_residual(u).lpNorm<Eigen::Infinity>() <= control.force_tolerance);

  // moment-free rows hold exactly after elimination
  const PlateStiffness& D = analysis.bending_stiffness();
  for (const auto& row : analysis.constraints().mpc) {
    const double moment = D.D11 * u[row.slave] + D.D12 * u[row.master];
    REQUIRE(std::abs(moment) <=
            1e-9 * D.D11 * (std::abs(u[row.slave]) + std::abs(u[row.master]) + 1e-12));
  }

  // energy balance: external work covers stored plus dissipated energy
  for (const auto& rec : history.increments) {
    const double residual = rec.external_work - rec.plate_energy - rec.cohesive_work;
    REQUIRE(residual >= -5e-3 * std::max(rec.external_work, 1e-12));
    const double dissipated = rec.cohesive_work - rec.cohesive_recoverable;
    REQUIRE(dissipated >= -1e-9);
  }

  // crack growth happened and damage is monotone across snapshots
  double prev_mean = 0.0;
  for (const auto& snap : history.snapshots) {
    double mean = 0.0;
    for (const auto& s : snap.samples) mean += s.damage;
    mean /= static_cast<double>(snap.samples.size());
    REQUIRE(mean >= prev_mean - 1e-12);
    prev_mean = mean;
  }
  for (std::size_t i = 0; i < history.snapshots.front().samples.size(); ++i) {
    REQUIRE(history.snapshots.back().samples[i].damage >=
            history.snapshots.front().samples[i].damage - 1e-12);
  }
  REQUIRE(prev_mean > 0.3);  // the mini specimen is mostly torn at 0.5 mm
}

TEST_CASE("identical configurations give bit-identical histories") {
  const DCBGeometry geom = mini_geometry();
  const Material mat = Material::t300_1076();
  const StepControl control = mini_control();

  DcbAnalysis a(geom, mat, IntegrationScheme{13, 0});
  DcbAnalysis b(geom, mat, IntegrationScheme{13, 0});
  const AnalysisHistory ha = a.run(control, {0.5});
  const AnalysisHistory hb = b.run(control, {0.5});

  REQUIRE(ha.increments.size() == hb.increments.size());
  for (std::size_t i = 0; i < ha.increments.size(); ++i) {
    REQUIRE(ha.increments[i].opening == hb.increments[i].opening);
    REQUIRE(ha.increments[i].reaction == hb.increments[i].reaction);
    REQUIRE(ha.increments[i].iterations == hb.increments[i].iterations);
  }
  REQUIRE(ha.snapshots[0].samples.size() == hb.snapshots[0].samples.size());
  for (std::size_t i = 0; i < ha.snapshots[0].samples.size(); ++i) {
    REQUIRE(ha.snapshots[0].samples[i].damage == hb.snapshots[0].samples[i].damage);
    REQUIRE(ha.snapshots[0].samples[i].traction == hb.snapshots[0].samples[i].traction);
  }
}

TEST_CASE("invalid step controls are rejected") {
  StepControl c;
  c.initial_increment = 0.0;
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
  c = StepControl{};
  c.min_increment = 0.5;  // above initial
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
  c = StepControl{};
  c.cutback_factor = 1.5;
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
  c = StepControl{};
  c.force_tolerance = 0.0;
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
}
