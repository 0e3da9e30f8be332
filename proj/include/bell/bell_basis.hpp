#pragma once

#include <Eigen/Dense>
#include <array>

#include "bell/polynomial.hpp"
#include "bell/triangle.hpp"

namespace bell {

/// The 18 quintic shape functions of the Bell (TUBA3) plate bending
/// triangle, together with their exact first and second Cartesian
/// derivatives.
///
/// Nodal DOF ordering, repeated per corner node:
///   [ w, dw/dx, dw/dy, d2w/dx2, d2w/dxdy, d2w/dy2 ]
///
/// The basis interpolates these 18 functionals with Kronecker-delta duality
/// and constrains the normal slope to a cubic along each edge, which is what
/// buys C1 continuity across a mesh. Everything is assembled symbolically in
/// area coordinates, so second derivatives come out as exact homogeneous
/// cubics whose monomial coefficients feed the analytic stiffness integral.
class BellBasis {
 public:
  using Vector18 = Eigen::Matrix<double, 18, 1>;
  using CoeffMatrix = Eigen::Matrix<double, 10, 18>;

  explicit BellBasis(const Triangle& tri) : inv2A_(1.0 / (2.0 * tri.area)) {
    // r_ij = -(b_i b_j + c_i c_j)/(b_i^2 + c_i^2)
    double r[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        r[i][j] = -(tri.b[i] * tri.b[j] + tri.c[i] * tri.c[j]) /
                  (tri.b[i] * tri.b[i] + tri.c[i] * tri.c[i]);
      }
    }

    // The six node-1 shape functions, then cyclic index permutations for
    // nodes 2 and 3. perm[m] maps local coordinate slot m to the actual
    // area-coordinate index.
    for (int shift = 0; shift < 3; ++shift) {
      const int p1 = shift, p2 = (shift + 1) % 3, p3 = (shift + 2) % 3;
      const double b1 = tri.b[p1], b2 = tri.b[p2], b3 = tri.b[p3];
      const double c1 = tri.c[p1], c2 = tri.c[p2], c3 = tri.c[p3];
      const double r21 = r[p2][p1], r31 = r[p3][p1];

      // monomial in the permuted coordinates: L_{p1}^e1 L_{p2}^e2 L_{p3}^e3
      auto add = [&](TriPoly& poly, int e1, int e2, int e3, double coeff) {
        int e[3] = {0, 0, 0};
        e[p1] = e1;
        e[p2] = e2;
        e[p3] = e3;
        poly.add_term(e[0], e[1], e[2], coeff);
      };

      TriPoly n1, n2, n3, n4, n5, n6;
      // deflection
      add(n1, 5, 0, 0, 1.0);
      add(n1, 4, 1, 0, 5.0);
      add(n1, 4, 0, 1, 5.0);
      add(n1, 3, 2, 0, 10.0);
      add(n1, 3, 0, 2, 10.0);
      add(n1, 3, 1, 1, 20.0);
      add(n1, 2, 1, 2, 30.0 * r21);
      add(n1, 2, 2, 1, 30.0 * r31);
      // slope about x
      add(n2, 4, 1, 0, c3);
      add(n2, 4, 0, 1, -c2);
      add(n2, 3, 2, 0, 4.0 * c3);
      add(n2, 3, 0, 2, -4.0 * c2);
      add(n2, 3, 1, 1, 4.0 * (c3 - c2));
      add(n2, 2, 1, 2, -(3.0 * c1 + 15.0 * r21 * c2));
      add(n2, 2, 2, 1, 3.0 * c1 + 15.0 * r31 * c3);
      // slope about y
      add(n3, 4, 1, 0, -b3);
      add(n3, 4, 0, 1, b2);
      add(n3, 3, 2, 0, -4.0 * b3);
      add(n3, 3, 0, 2, 4.0 * b2);
      add(n3, 3, 1, 1, 4.0 * (b2 - b3));
      add(n3, 2, 1, 2, 3.0 * b1 + 15.0 * r21 * b2);
      add(n3, 2, 2, 1, -(3.0 * b1 + 15.0 * r31 * b3));
      // curvature xx
      add(n4, 3, 2, 0, 0.5 * c3 * c3);
      add(n4, 3, 0, 2, 0.5 * c2 * c2);
      add(n4, 3, 1, 1, -c2 * c3);
      add(n4, 2, 1, 2, c1 * c2 + 2.5 * r21 * c2 * c2);
      add(n4, 2, 2, 1, c1 * c3 + 2.5 * r31 * c3 * c3);
      // curvature xy
      add(n5, 3, 2, 0, -b3 * c3);
      add(n5, 3, 0, 2, -b2 * c2);
      add(n5, 3, 1, 1, b2 * c3 + b3 * c2);
      add(n5, 2, 1, 2, -(b1 * c2 + b2 * c1 + 5.0 * r21 * b2 * c2));
      add(n5, 2, 2, 1, -(b1 * c3 + b3 * c1 + 5.0 * r31 * b3 * c3));
      // curvature yy
      add(n6, 3, 2, 0, 0.5 * b3 * b3);
      add(n6, 3, 0, 2, 0.5 * b2 * b2);
      add(n6, 3, 1, 1, -b2 * b3);
      add(n6, 2, 1, 2, b1 * b2 + 2.5 * r21 * b2 * b2);
      add(n6, 2, 2, 1, b1 * b3 + 2.5 * r31 * b3 * b3);

      shape_[6 * shift + 0] = n1;
      shape_[6 * shift + 1] = n2;
      shape_[6 * shift + 2] = n3;
      shape_[6 * shift + 3] = n4;
      shape_[6 * shift + 4] = n5;
      shape_[6 * shift + 5] = n6;
    }

    // Cartesian derivatives via d/dx = (1/2A) sum_i b_i d/dL_i and the
    // analogous y form with the c_i.
    auto cartesian = [&](const TriPoly& p, const std::array<double, 3>& g) {
      TriPoly out;
      for (int i = 0; i < 3; ++i) {
        out.axpy(g[i] * inv2A_, p.diff(i));
      }
      return out;
    };
    for (int k = 0; k < 18; ++k) {
      ddx_[k] = cartesian(shape_[k], tri.b);
      ddy_[k] = cartesian(shape_[k], tri.c);
      const TriPoly dxx = cartesian(ddx_[k], tri.b);
      const TriPoly dyy = cartesian(ddy_[k], tri.c);
      const TriPoly dxy = cartesian(ddx_[k], tri.c);
      const auto& basis = cubic_exponents();
      for (int m = 0; m < 10; ++m) {
        cxx_(m, k) = dxx.coefficient(basis[m][0], basis[m][1], basis[m][2]);
        cyy_(m, k) = dyy.coefficient(basis[m][0], basis[m][1], basis[m][2]);
        cxy2_(m, k) = 2.0 * dxy.coefficient(basis[m][0], basis[m][1], basis[m][2]);
      }
    }
  }

  /// Exponent triples of the 10-term cubic basis the second derivatives
  /// live in: L1^3, L2^3, L3^3, L1^2 L2, L1^2 L3, L2^2 L1, L2^2 L3,
  /// L3^2 L1, L3^2 L2, L1 L2 L3.
  static const std::array<std::array<int, 3>, 10>& cubic_exponents() {
    static const std::array<std::array<int, 3>, 10> table = {{{3, 0, 0},
                                                              {0, 3, 0},
                                                              {0, 0, 3},
                                                              {2, 1, 0},
                                                              {2, 0, 1},
                                                              {1, 2, 0},
                                                              {0, 2, 1},
                                                              {1, 0, 2},
                                                              {0, 1, 2},
                                                              {1, 1, 1}}};
    return table;
  }

  static Eigen::Matrix<double, 10, 1> cubic_values(const Eigen::Vector3d& L) {
    Eigen::Matrix<double, 10, 1> v;
    const double l1 = L[0], l2 = L[1], l3 = L[2];
    v << l1 * l1 * l1, l2 * l2 * l2, l3 * l3 * l3, l1 * l1 * l2, l1 * l1 * l3, l2 * l2 * l1,
        l2 * l2 * l3, l3 * l3 * l1, l3 * l3 * l2, l1 * l2 * l3;
    return v;
  }

  Vector18 values(const Eigen::Vector3d& L) const {
    Vector18 n;
    for (int k = 0; k < 18; ++k) {
      n[k] = shape_[k].eval(L[0], L[1], L[2]);
    }
    return n;
  }

  /// Rows: dN/dx, dN/dy.
  Eigen::Matrix<double, 2, 18> gradients(const Eigen::Vector3d& L) const {
    Eigen::Matrix<double, 2, 18> g;
    for (int k = 0; k < 18; ++k) {
      g(0, k) = ddx_[k].eval(L[0], L[1], L[2]);
      g(1, k) = ddy_[k].eval(L[0], L[1], L[2]);
    }
    return g;
  }

  /// Curvature operator rows [d2w/dx2, d2w/dy2, 2 d2w/dxdy] -- the plate
  /// B-matrix at a point.
  Eigen::Matrix<double, 3, 18> curvatures(const Eigen::Vector3d& L) const {
    const Eigen::Matrix<double, 10, 1> f = cubic_values(L);
    Eigen::Matrix<double, 3, 18> bmat;
    bmat.row(0) = f.transpose() * cxx_;
    bmat.row(1) = f.transpose() * cyy_;
    bmat.row(2) = f.transpose() * cxy2_;
    return bmat;
  }

  /// Cubic-basis coefficients of the three curvature rows.
  const CoeffMatrix& coeffs_xx() const { return cxx_; }
  const CoeffMatrix& coeffs_yy() const { return cyy_; }
  const CoeffMatrix& coeffs_xy2() const { return cxy2_; }

 private:
  double inv2A_;
  std::array<TriPoly, 18> shape_;
  std::array<TriPoly, 18> ddx_, ddy_;
  CoeffMatrix cxx_ = CoeffMatrix::Zero();
  CoeffMatrix cyy_ = CoeffMatrix::Zero();
  CoeffMatrix cxy2_ = CoeffMatrix::Zero();
};

}  // namespace bell
