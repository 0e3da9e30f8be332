#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bell {

/// Exact integral of L1^a * L2^b * L3^c over a physical triangle of the
/// given area: a!b!c!/(a+b+c+2)! * 2A (Eisenberg-Malvern).
inline double em_integral(int a, int b, int c, double area) {
  if (a < 0 || b < 0 || c < 0) {
    throw std::invalid_argument("em_integral: exponents must be non-negative");
  }
  // a!b!c!/(a+b+c+2)! evaluated as a product of ratios to avoid overflow
  long double value = 1.0L;
  int denom = a + b + c + 2;
  for (int n : {a, b, c}) {
    for (int m = 1; m <= n; ++m) {
      value *= static_cast<long double>(m) / static_cast<long double>(denom--);
    }
  }
  while (denom > 1) {
    value /= static_cast<long double>(denom--);
  }
  return static_cast<double>(value) * 2.0 * area;
}

struct QuadPoint {
  double L1, L2, L3;
  double w;
};

/// Symmetric Gaussian quadrature rules on the parent triangle, weights
/// normalised to sum to one:  integral over parent = 1/2 * sum w_i * g_i.
/// Point sets of Cowper's tables for 1, 3, 4, 6, 7 and 13 points.
struct QuadratureRule {
  std::vector<QuadPoint> points;
  int degree = 0;

  static QuadratureRule gauss(int n_points) {
    QuadratureRule rule;
    auto centroid = [&](double w) { rule.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, w}); };
    auto orbit3 = [&](double la, double lb, double w) {
      rule.points.push_back({la, lb, lb, w});
      rule.points.push_back({lb, la, lb, w});
      rule.points.push_back({lb, lb, la, w});
    };
    auto orbit6 = [&](double la, double lb, double lc, double w) {
      rule.points.push_back({la, lb, lc, w});
      rule.points.push_back({la, lc, lb, w});
      rule.points.push_back({lb, la, lc, w});
      rule.points.push_back({lb, lc, la, w});
      rule.points.push_back({lc, la, lb, w});
      rule.points.push_back({lc, lb, la, w});
    };
    switch (n_points) {
      case 1:
        rule.degree = 1;
        centroid(1.0);
        break;
      case 3:
        rule.degree = 2;
        orbit3(2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0);
        break;
      case 4:
        rule.degree = 3;
        centroid(-9.0 / 16.0);
        orbit3(0.6, 0.2, 25.0 / 48.0);
        break;
      case 6:
        rule.degree = 4;
        orbit3(0.816847572980459, 0.091576213509771, 0.109951743655322);
        orbit3(0.108103018168070, 0.445948490915965, 0.223381589678011);
        break;
      case 7: {
        rule.degree = 5;
        const double s15 = std::sqrt(15.0);
        centroid(9.0 / 40.0);
        orbit3((9.0 + 2.0 * s15) / 21.0, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
        orbit3((9.0 - 2.0 * s15) / 21.0, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
        break;
      }
      case 13:
        rule.degree = 7;
        centroid(-0.149570044467670);
        orbit3(0.479308067841923, 0.260345966079038, 0.175615257433204);
        orbit3(0.869739794195568, 0.065130102902216, 0.053347235608839);
        orbit6(0.638444188569809, 0.312865496004875, 0.048690315425316, 0.077113760890257);
        break;
      default:
        throw std::invalid_argument("QuadratureRule::gauss: supported point counts are 1,3,4,6,7,13");
    }
    return rule;
  }
};

/// One sub-triangle of the parent domain. Column n of `vertices` holds the
/// area coordinates of vertex n. det_jr is the determinant of the linear
/// map from the quadrature domain onto this sub-triangle, i.e. twice its
/// parent-domain area.
struct SubTriangle {
  Eigen::Matrix3d vertices;
  double det_jr = 0.0;

  static double det_of(const Eigen::Matrix3d& v) {
    return (v(0, 0) - v(0, 2)) * (v(1, 1) - v(1, 2)) - (v(1, 0) - v(1, 2)) * (v(0, 1) - v(0, 2));
  }
};

/// Uniform midpoint partition of the parent triangle into 4^levels congruent
/// sub-triangles; the determinants sum to one so composite quadrature is a
/// drop-in replacement for a single rule.
struct SubdomainLayout {
  std::vector<SubTriangle> sub;
  int levels = 0;

  static SubdomainLayout uniform(int levels) {
    if (levels < 0) {
      throw std::invalid_argument("SubdomainLayout::uniform: levels must be >= 0");
    }
    SubdomainLayout layout;
    layout.levels = levels;
    Eigen::Matrix3d parent = Eigen::Matrix3d::Identity();
    std::vector<Eigen::Matrix3d> current{parent};
    for (int l = 0; l < levels; ++l) {
      std::vector<Eigen::Matrix3d> next;
      next.reserve(current.size() * 4);
      for (const auto& v : current) {
        const Eigen::Vector3d v1 = v.col(0), v2 = v.col(1), v3 = v.col(2);
        const Eigen::Vector3d m12 = 0.5 * (v1 + v2);
        const Eigen::Vector3d m23 = 0.5 * (v2 + v3);
        const Eigen::Vector3d m31 = 0.5 * (v3 + v1);
        Eigen::Matrix3d t;
        t << v1, m12, m31;
        next.push_back(t);
        t << m12, v2, m23;
        next.push_back(t);
        t << m31, m23, v3;
        next.push_back(t);
        t << m12, m23, m31;
        next.push_back(t);
      }
      current = std::move(next);
    }
    layout.sub.reserve(current.size());
    for (const auto& v : current) {
      layout.sub.push_back({v, SubTriangle::det_of(v)});
    }
    return layout;
  }

  int point_count(const QuadratureRule& rule) const {
    return static_cast<int>(sub.size() * rule.points.size());
  }
};

/// Composite quadrature of g(L1,L2,L3) over the parent triangle:
/// 1/2 * sum_j sum_i w_i g(L^j(r_i)) det_j. Integrals over a physical
/// triangle are obtained by multiplying with its Jacobian determinant 2A.
template <class F>
double integrate_subdomain(F&& g, const SubdomainLayout& layout, const QuadratureRule& rule) {
  double sum = 0.0;
  for (const auto& st : layout.sub) {
    for (const auto& qp : rule.points) {
      const Eigen::Vector3d L = st.vertices * Eigen::Vector3d(qp.L1, qp.L2, qp.L3);
      sum += qp.w * st.det_jr * g(L[0], L[1], L[2]);
    }
  }
  return 0.5 * sum;
}

}  // namespace bell
