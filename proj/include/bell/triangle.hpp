#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace bell {

/// Planar triangle with the area-coordinate machinery attached: the
/// coefficients a_i = x_j*y_k - x_k*y_j, b_i = y_j - y_k, c_i = x_k - x_j
/// (i,j,k cyclic) invert the linear map between Cartesian points and area
/// coordinates. Corners must be counter-clockwise so that the mapping
/// Jacobian determinant equals 2*area.
struct Triangle {
  std::array<double, 3> x{};
  std::array<double, 3> y{};
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::array<double, 3> c{};
  double area = 0.0;

  Triangle(double x1, double y1, double x2, double y2, double x3, double y3)
      : x{x1, x2, x3}, y{y1, y2, y3} {
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      a[i] = x[j] * y[k] - x[k] * y[j];
      b[i] = y[j] - y[k];
      c[i] = x[k] - x[j];
    }
    const double det = (x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]);
    double edge2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      edge2 = std::max(edge2, b[i] * b[i] + c[i] * c[i]);
    }
    if (!(det > 1e-12 * edge2)) {
      throw std::invalid_argument(det <= 0.0
                                      ? "triangle: corners must be counter-clockwise"
                                      : "triangle: degenerate (area below tolerance)");
    }
    area = 0.5 * det;
  }

  /// Area coordinates of a Cartesian point.
  Eigen::Vector3d area_coordinates(double px, double py) const {
    const double inv = 1.0 / (2.0 * area);
    const double l1 = (a[0] + b[0] * px + c[0] * py) * inv;
    const double l2 = (a[1] + b[1] * px + c[1] * py) * inv;
    return {l1, l2, 1.0 - l1 - l2};
  }

  /// Cartesian point of an area-coordinate triple.
  Eigen::Vector2d point(const Eigen::Vector3d& L) const {
    return {L[0] * x[0] + L[1] * x[1] + L[2] * x[2],
            L[0] * y[0] + L[1] * y[1] + L[2] * y[2]};
  }

  Eigen::Vector2d centroid() const {
    return {(x[0] + x[1] + x[2]) / 3.0, (y[0] + y[1] + y[2]) / 3.0};
  }

  /// Determinant of the Cartesian-to-area-coordinate mapping Jacobian.
  double jacobian_det() const { return 2.0 * area; }
};

}  // namespace bell
