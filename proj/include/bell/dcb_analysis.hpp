#pragma once

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <ostream>
#include <vector>

#include "bell/cohesive.hpp"
#include "bell/dcb_model.hpp"
#include "bell/material.hpp"
#include "bell/plate_element.hpp"
#include "bell/solver.hpp"

namespace bell {

/// Interface integration scheme: a Gaussian rule on each of 4^levels
/// congruent sub-triangles. 13 points with no subdivision gives the 13-IP
/// scheme; one subdivision level gives 52 IPs.
struct IntegrationScheme {
  int rule_points = 13;
  int subdivision_levels = 0;
};

/// Ready-to-run DCB model: generates the mesh, builds one stiffness /
/// opening-operator kernel per congruent triangle shape (the structured
/// grid only has a handful), instantiates the elements and hands them to
/// the nonlinear solver.
class DcbAnalysis {
 public:
  DcbAnalysis(const DCBGeometry& geom, const Material& mat, const IntegrationScheme& scheme)
      : geom_(geom),
        material_(mat),
        scheme_(scheme),
        bending_(plate_bending_stiffness(mat, geom.arm_thickness())),
        props_(CohesiveProps::from_material(mat, geom.thickness)),
        layout_(SubdomainLayout::uniform(scheme.subdivision_levels)),
        rule_(QuadratureRule::gauss(scheme.rule_points)),
        mesh_(generate_mesh(geom)),
        constraints_(build_constraints(mesh_, bending_)) {
    const double t_arm = geom.arm_thickness();
    std::vector<PlateInstance> plates;
    std::vector<CohesiveInstance> cohesives;
    plates.reserve(2 * mesh_.tris.size());
    cohesives.reserve(mesh_.tris.size());

    for (std::size_t t = 0; t < mesh_.tris.size(); ++t) {
      const Triangle tri = mesh_.triangle(static_cast<int>(t));
      const Kernel& kernel = kernel_for(tri, t_arm);
      const auto& nodes = mesh_.tris[t].nodes;

      PlateInstance bottom, top;
      for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < 6; ++k) {
          bottom.dofs[6 * c + k] = Mesh::dof(mesh_.bottom_node(nodes[c]), k);
          top.dofs[6 * c + k] = Mesh::dof(mesh_.top_node(nodes[c]), k);
        }
      }
      bottom.stiffness = top.stiffness = &kernel.plate_stiffness;
      plates.push_back(bottom);
      plates.push_back(top);

      CohesiveInstance ce;
      for (int i = 0; i < 18; ++i) {
        ce.dofs[i] = bottom.dofs[i];
        ce.dofs[18 + i] = top.dofs[i];
      }
      ce.ips = &kernel.ips;
      ce.intact_stiffness = &kernel.intact_stiffness;
      ce.mesh_ce = static_cast<int>(t);
      const std::size_t n_ip = kernel.ips.size();
      ce.states.assign(n_ip, mesh_.ce_precracked[t] ? CohesiveIPState::precrack(props_)
                                                    : CohesiveIPState{});
      ce.ip_xy.reserve(n_ip);
      for (const auto& ip : kernel.ips) {
        ce.ip_xy.push_back(tri.point(ip.L));
      }
      cohesives.push_back(std::move(ce));
    }

    solver_ = std::make_unique<NonlinearStatics>(mesh_.dof_count(), std::move(plates),
                                                 std::move(cohesives), constraints_, props_);
  }

  AnalysisHistory run(const StepControl& control, std::vector<double> snapshot_openings,
                      std::ostream* progress = nullptr) {
    return solver_->run(control, std::move(snapshot_openings), progress);
  }

  const DCBGeometry& geometry() const { return geom_; }
  const Material& material() const { return material_; }
  const Mesh& mesh() const { return mesh_; }
  const ConstraintSet& constraints() const { return constraints_; }
  const PlateStiffness& bending_stiffness() const { return bending_; }
  const CohesiveProps& cohesive_props() const { return props_; }
  int ips_per_element() const { return layout_.point_count(rule_); }
  NonlinearStatics& solver() { return *solver_; }

 private:
  struct Kernel {
    Matrix18 plate_stiffness;
    std::vector<CeIntegrationPoint> ips;
    Matrix36 intact_stiffness;
  };

  const Kernel& kernel_for(const Triangle& tri, double t_arm) {
    // congruent (translated) triangles share all element-level operators
    std::array<long long, 4> key{};
    key[0] = std::llround((tri.x[1] - tri.x[0]) * 1e9);
    key[1] = std::llround((tri.y[1] - tri.y[0]) * 1e9);
    key[2] = std::llround((tri.x[2] - tri.x[0]) * 1e9);
    key[3] = std::llround((tri.y[2] - tri.y[0]) * 1e9);
    auto it = kernels_.find(key);
    if (it != kernels_.end()) return *it->second;

    auto kernel = std::make_unique<Kernel>();
    const Triangle local(0.0, 0.0, tri.x[1] - tri.x[0], tri.y[1] - tri.y[0],
                         tri.x[2] - tri.x[0], tri.y[2] - tri.y[0]);
    kernel->plate_stiffness = element_stiffness(local, bending_);
    kernel->ips = ce_integration_points(local, t_arm, t_arm, layout_, rule_);
    kernel->intact_stiffness.setZero();
    for (const auto& ip : kernel->ips) {
      kernel->intact_stiffness.noalias() +=
          (props_.penalty * ip.weight) * (ip.B.transpose() * ip.B);
    }
    it = kernels_.emplace(key, std::move(kernel)).first;
    return *it->second;
  }

  DCBGeometry geom_;
  Material material_;
  IntegrationScheme scheme_;
  PlateStiffness bending_;
  CohesiveProps props_;
  SubdomainLayout layout_;
  QuadratureRule rule_;
  Mesh mesh_;
  ConstraintSet constraints_;
  std::map<std::array<long long, 4>, std::unique_ptr<Kernel>> kernels_;
  std::unique_ptr<NonlinearStatics> solver_;
};

}  // namespace bell
