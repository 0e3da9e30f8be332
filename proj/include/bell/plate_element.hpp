#pragma once

#include <Eigen/Dense>
#include <array>

#include "bell/bell_basis.hpp"
#include "bell/material.hpp"
#include "bell/quadrature.hpp"
#include "bell/triangle.hpp"

namespace bell {

using Matrix18 = Eigen::Matrix<double, 18, 18>;
using Vector18 = Eigen::Matrix<double, 18, 1>;

/// One Kirchhoff plate bending triangle: geometry, section stiffness and the
/// 18 global DOF indices it scatters into.
struct PlateElement {
  Triangle tri;
  PlateStiffness D;
  double thickness = 0.0;
  std::array<int, 18> dofs{};
};

/// Analytically integrated element stiffness. The curvature rows of the
/// basis are homogeneous cubics, so every entry of the integrand B^T D B is
/// a product of two cubic-basis monomials and integrates in closed form.
inline Matrix18 element_stiffness(const Triangle& tri, const PlateStiffness& D) {
  const BellBasis basis(tri);

  Eigen::Matrix<double, 10, 10> R;
  const auto& e = BellBasis::cubic_exponents();
  for (int m = 0; m < 10; ++m) {
    for (int n = m; n < 10; ++n) {
      R(m, n) = R(n, m) =
          em_integral(e[m][0] + e[n][0], e[m][1] + e[n][1], e[m][2] + e[n][2], tri.area);
    }
  }

  const auto& cxx = basis.coeffs_xx();
  const auto& cyy = basis.coeffs_yy();
  const auto& cxy = basis.coeffs_xy2();
  Matrix18 k = D.D11 * cxx.transpose() * R * cxx + D.D22 * cyy.transpose() * R * cyy +
               D.D12 * (cxx.transpose() * R * cyy + cyy.transpose() * R * cxx) +
               D.D33 * cxy.transpose() * R * cxy;
  return 0.5 * (k + k.transpose());
}

inline Matrix18 element_stiffness(const PlateElement& elem) {
  return element_stiffness(elem.tri, elem.D);
}

/// Internal nodal forces K*U; no distributed plate loads are modelled, so
/// the element residual is just their negative.
inline Vector18 internal_force(const Matrix18& stiffness, const Vector18& U) {
  return stiffness * U;
}

}  // namespace bell
