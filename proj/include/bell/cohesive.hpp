#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bell/bell_basis.hpp"
#include "bell/material.hpp"
#include "bell/quadrature.hpp"
#include "bell/triangle.hpp"

namespace bell {

using Matrix36 = Eigen::Matrix<double, 36, 36>;
using Vector36 = Eigen::Matrix<double, 36, 1>;
using OpeningMatrix = Eigen::Matrix<double, 3, 36>;

/// Bilinear mode I traction-separation law: penalty stiffness K up to the
/// onset opening d0 = tau0/K, linear softening to zero at the failure
/// opening df = 2*G_Ic/tau0. The triangle under the curve is exactly G_Ic.
struct CohesiveProps {
  double penalty = 0.0;    // N/mm^3
  double strength = 0.0;   // MPa
  double toughness = 0.0;  // N/mm
  double onset = 0.0;      // mm
  double failure = 0.0;    // mm

  CohesiveProps(double penalty_, double strength_, double toughness_)
      : penalty(penalty_), strength(strength_), toughness(toughness_) {
    if (!(penalty > 0.0) || !(strength > 0.0) || !(toughness > 0.0)) {
      throw std::invalid_argument("CohesiveProps: penalty, strength, toughness must be > 0");
    }
    onset = strength / penalty;
    failure = 2.0 * toughness / strength;
    if (!(failure > onset)) {
      throw std::invalid_argument("CohesiveProps: failure opening must exceed onset opening");
    }
  }

  /// Penalty stiffness 50*E3/t with t the full laminate thickness.
  static CohesiveProps from_material(const Material& m, double laminate_thickness) {
    return CohesiveProps(50.0 * m.E_zz / laminate_thickness, m.tau_I0, m.G_Ic);
  }

  /// Damage for a given maximum historical opening.
  double damage_at(double max_opening) const {
    if (max_opening <= onset) return 0.0;
    if (max_opening >= failure) return 1.0;
    return failure * (max_opening - onset) / (max_opening * (failure - onset));
  }
};

/// History at one integration point. Damage is non-decreasing; a precracked
/// point starts (and stays) fully damaged but keeps the compressive penalty.
struct CohesiveIPState {
  double max_opening = 0.0;
  double damage = 0.0;
  bool precracked = false;

  static CohesiveIPState precrack(const CohesiveProps& p) {
    return {p.failure, 1.0, true};
  }
};

/// Trial state for a candidate mode I opening: the opening history only ever
/// grows, and so does damage.
inline CohesiveIPState ip_trial(const CohesiveIPState& committed, double delta_I,
                                const CohesiveProps& p) {
  CohesiveIPState s = committed;
  if (delta_I > s.max_opening) {
    s.max_opening = delta_I;
    s.damage = std::max(s.damage, p.damage_at(s.max_opening));
  }
  return s;
}

/// Secant constitutive matrix diag((1-d_I)K, (1-d)K, (1-d)K). The opening
/// row keeps the full penalty in compression (d_I = 0 for delta_I <= 0) so
/// crack faces cannot interpenetrate; the shear rows are degraded by the
/// mode I damage but never drive it.
inline Eigen::Vector3d secant_moduli(const CohesiveIPState& s, double delta_I, double penalty) {
  const double d_I = delta_I > 0.0 ? s.damage : 0.0;
  const double shear = (1.0 - s.damage) * penalty;
  return {(1.0 - d_I) * penalty, shear, shear};
}

struct TractionResult {
  Eigen::Vector3d traction;
  double damage = 0.0;
  CohesiveIPState state;
};

inline TractionResult traction_update(const Eigen::Vector3d& delta, const CohesiveIPState& committed,
                                      const CohesiveProps& p) {
  TractionResult r;
  r.state = ip_trial(committed, delta[0], p);
  r.damage = r.state.damage;
  r.traction = secant_moduli(r.state, delta[0], p.penalty).cwiseProduct(delta);
  return r;
}

/// Opening operator at a point: rows are the mode I, II, III separations of
/// the two plate mid-planes in terms of the stacked 36 DOFs (bottom arm
/// first). Mode I is the deflection jump; modes II and III come from the
/// small-rotation surface displacements (t/2 times the mid-plane slopes).
inline OpeningMatrix opening_matrix(const BellBasis& basis, const Eigen::Vector3d& L,
                                    double t_bottom, double t_top) {
  const auto n = basis.values(L);
  const auto g = basis.gradients(L);
  OpeningMatrix bmat;
  bmat.row(0).head<18>() = -n.transpose();
  bmat.row(0).tail<18>() = n.transpose();
  bmat.row(1).head<18>() = 0.5 * t_bottom * g.row(0);
  bmat.row(1).tail<18>() = 0.5 * t_top * g.row(0);
  bmat.row(2).head<18>() = 0.5 * t_bottom * g.row(1);
  bmat.row(2).tail<18>() = 0.5 * t_top * g.row(1);
  return bmat;
}

/// Precomputed data at one cohesive integration point: location, opening
/// operator, and the weight that turns parent-domain quadrature into an
/// integral over the physical triangle.
struct CeIntegrationPoint {
  Eigen::Vector3d L;
  double weight = 0.0;  // w_i * det_j * A
  OpeningMatrix B;
};

inline std::vector<CeIntegrationPoint> ce_integration_points(const Triangle& tri, double t_bottom,
                                                             double t_top,
                                                             const SubdomainLayout& layout,
                                                             const QuadratureRule& rule) {
  const BellBasis basis(tri);
  std::vector<CeIntegrationPoint> ips;
  ips.reserve(layout.sub.size() * rule.points.size());
  for (const auto& st : layout.sub) {
    for (const auto& qp : rule.points) {
      CeIntegrationPoint ip;
      ip.L = st.vertices * Eigen::Vector3d(qp.L1, qp.L2, qp.L3);
      ip.weight = qp.w * st.det_jr * tri.area;
      ip.B = opening_matrix(basis, ip.L, t_bottom, t_top);
      ips.push_back(ip);
    }
  }
  return ips;
}

/// Cohesive element pairing the bottom and top plate triangles over the same
/// in-plane geometry. DOFs 0-17 belong to the bottom arm nodes, 18-35 to the
/// top arm nodes, in matching order.
struct CohesiveElement {
  Triangle tri;
  double t_bottom = 0.0;
  double t_top = 0.0;
  std::array<int, 36> dofs{};
  std::vector<CohesiveIPState> states;  // committed, one per integration point
};

inline Eigen::Vector3d openings(const CohesiveElement& elem, const Vector36& U,
                                const Eigen::Vector3d& L) {
  const BellBasis basis(elem.tri);
  return opening_matrix(basis, L, elem.t_bottom, elem.t_top) * U;
}

struct CeSystem {
  Matrix36 stiffness;
  Vector36 residual;
};

/// Secant stiffness and residual for a trial displacement state. Damage is
/// evaluated per integration point from the trial openings on top of the
/// committed history; it is not written back here -- the caller commits
/// states only once an increment has converged.
inline CeSystem ce_stiffness_residual(const CohesiveElement& elem, const CohesiveProps& props,
                                      const SubdomainLayout& layout, const QuadratureRule& rule,
                                      const Vector36& U) {
  const auto ips = ce_integration_points(elem.tri, elem.t_bottom, elem.t_top, layout, rule);
  if (ips.size() != elem.states.size()) {
    throw std::invalid_argument("ce_stiffness_residual: state count does not match IP count");
  }
  CeSystem sys;
  sys.stiffness.setZero();
  for (std::size_t i = 0; i < ips.size(); ++i) {
    const Eigen::Vector3d delta = ips[i].B * U;
    const CohesiveIPState trial = ip_trial(elem.states[i], delta[0], props);
    const Eigen::Vector3d mod = secant_moduli(trial, delta[0], props.penalty);
    sys.stiffness.noalias() +=
        ips[i].weight * ips[i].B.transpose() * mod.asDiagonal() * ips[i].B;
  }
  sys.residual = -sys.stiffness * U;
  return sys;
}

/// Commit the damage history for a converged displacement state.
inline void commit_states(CohesiveElement& elem, const CohesiveProps& props,
                          const SubdomainLayout& layout, const QuadratureRule& rule,
                          const Vector36& U) {
  const auto ips = ce_integration_points(elem.tri, elem.t_bottom, elem.t_top, layout, rule);
  for (std::size_t i = 0; i < ips.size(); ++i) {
    const Eigen::Vector3d delta = ips[i].B * U;
    elem.states[i] = ip_trial(elem.states[i], delta[0], props);
  }
}

}  // namespace bell
