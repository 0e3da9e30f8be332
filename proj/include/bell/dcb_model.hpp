#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bell/constraints.hpp"
#include "bell/material.hpp"
#include "bell/triangle.hpp"

namespace bell {

/// Double cantilever beam specimen: two bonded arms of half the laminate
/// thickness each, pried apart at the left end. The interface carries an
/// initial crack of length `precrack` from the left edge. Mesh sizes refer
/// to the x-direction; the fine size applies inside [fine_x0, fine_x1].
struct DCBGeometry {
  double length = 150.0;     // mm
  double width = 25.0;       // mm
  double thickness = 3.0;    // mm, full laminate
  double precrack = 30.5;    // mm
  double h_fine = 2.0;       // mm
  double h_coarse = 5.0;     // mm
  double fine_x0 = 25.0;     // mm
  double fine_x1 = 95.0;     // mm

  double arm_thickness() const { return 0.5 * thickness; }

  void validate() const {
    if (!(length > 0.0 && width > 0.0 && thickness > 0.0)) {
      throw std::invalid_argument("geometry: dimensions must be > 0");
    }
    if (!(precrack > 0.0 && precrack < length)) {
      throw std::invalid_argument("geometry: precrack must lie inside (0, length)");
    }
    if (!(h_fine > 0.0 && h_coarse > 0.0 && h_fine <= h_coarse)) {
      throw std::invalid_argument("geometry: need 0 < h_fine <= h_coarse");
    }
    if (!(fine_x0 >= 0.0 && fine_x1 <= length && fine_x0 < fine_x1)) {
      throw std::invalid_argument("geometry: fine region must satisfy 0 <= fine_x0 < fine_x1 <= length");
    }
  }
};

/// Structured two-arm mesh. The in-plane triangulation is shared by both
/// arms and by the cohesive layer: plan node/triangle p appears once in the
/// bottom arm and once (offset by plan_nodes) in the top arm, so every
/// cohesive element pairs vertically coincident node triples by
/// construction. Node DOFs are [w, w_x, w_y, w_xx, w_xy, w_yy] at 6*node+k.
struct Mesh {
  struct PlanTriangle {
    std::array<int, 3> nodes;
    double cx = 0.0, cy = 0.0;  // centroid
    int row = 0;                // y-row of the parent grid cell
  };

  std::vector<double> node_x, node_y;  // per plan node
  std::vector<PlanTriangle> tris;
  std::vector<bool> ce_precracked;  // per plan triangle
  int plan_nodes = 0;
  int nx = 0, ny = 0;

  int node_count() const { return 2 * plan_nodes; }
  int dof_count() const { return 6 * node_count(); }
  static int dof(int node, int comp) { return 6 * node + comp; }
  int bottom_node(int plan) const { return plan; }
  int top_node(int plan) const { return plan_nodes + plan; }

  Triangle triangle(int t) const {
    const auto& n = tris[t].nodes;
    return Triangle(node_x[n[0]], node_y[n[0]], node_x[n[1]], node_y[n[1]], node_x[n[2]],
                    node_y[n[2]]);
  }

  std::vector<int> left_edge_plan_nodes() const {
    std::vector<int> out;
    for (int p = 0; p < plan_nodes; ++p) {
      if (std::abs(node_x[p]) < 1e-9) out.push_back(p);
    }
    return out;
  }
};

namespace detail {

inline void append_breakpoints(std::vector<double>& xs, double x0, double x1, double h,
                               const char* region) {
  const double len = x1 - x0;
  if (len <= 1e-12) return;
  const long n = std::lround(len / h);
  if (n < 1) {
    throw std::invalid_argument(std::string("mesh: element size exceeds the ") + region +
                                " region length");
  }
  if (std::abs(static_cast<double>(n) * h - len) > 1e-9 * std::max(1.0, len)) {
    throw std::invalid_argument(std::string("mesh: ") + region +
                                " region length is not an integer multiple of the element size");
  }
  for (long i = 1; i <= n; ++i) {
    xs.push_back(x0 + len * static_cast<double>(i) / static_cast<double>(n));
  }
}

}  // namespace detail

/// Structured grid of rectangles split into two right triangles each, with
/// the split diagonal running from the cell's lower-left to upper-right
/// corner. The x-spacing is h_coarse outside [fine_x0, fine_x1] and h_fine
/// inside; the row count across the width is b/h_fine rounded to the
/// nearest integer. Cohesive elements cover the whole interface; those with
/// centroid left of the precrack are flagged fully damaged from the start.
inline Mesh generate_mesh(const DCBGeometry& geom) {
  geom.validate();
  std::vector<double> xs{0.0};
  detail::append_breakpoints(xs, 0.0, geom.fine_x0, geom.h_coarse, "left coarse");
  detail::append_breakpoints(xs, geom.fine_x0, geom.fine_x1, geom.h_fine, "fine");
  detail::append_breakpoints(xs, geom.fine_x1, geom.length, geom.h_coarse, "right coarse");

  const int ny = std::max(1L, std::lround(geom.width / geom.h_fine));
  std::vector<double> ys(ny + 1);
  for (int j = 0; j <= ny; ++j) {
    ys[j] = geom.width * static_cast<double>(j) / static_cast<double>(ny);
  }

  Mesh mesh;
  mesh.nx = static_cast<int>(xs.size()) - 1;
  mesh.ny = ny;
  mesh.plan_nodes = static_cast<int>(xs.size()) * (ny + 1);
  mesh.node_x.reserve(mesh.plan_nodes);
  mesh.node_y.reserve(mesh.plan_nodes);
  for (int j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mesh.node_x.push_back(xs[i]);
      mesh.node_y.push_back(ys[j]);
    }
  }
  const int stride = static_cast<int>(xs.size());
  auto node = [&](int i, int j) { return j * stride + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < mesh.nx; ++i) {
      const int n00 = node(i, j), n10 = node(i + 1, j);
      const int n11 = node(i + 1, j + 1), n01 = node(i, j + 1);
      for (const auto& tri : {std::array<int, 3>{n00, n10, n11}, std::array<int, 3>{n00, n11, n01}}) {
        Mesh::PlanTriangle pt;
        pt.nodes = tri;
        pt.cx = (mesh.node_x[tri[0]] + mesh.node_x[tri[1]] + mesh.node_x[tri[2]]) / 3.0;
        pt.cy = (mesh.node_y[tri[0]] + mesh.node_y[tri[1]] + mesh.node_y[tri[2]]) / 3.0;
        pt.row = j;
        mesh.tris.push_back(pt);
        mesh.ce_precracked.push_back(pt.cx < geom.precrack);
      }
    }
  }
  return mesh;
}

/// Boundary conditions of the opening test: the bottom arm's left edge is
/// held at w = 0, the top arm's left edge carries the prescribed opening
/// ramp, slopes stay free, and both edges are made moment-free by tying the
/// curvature DOFs through D11*w_xx + D12*w_yy = 0 (bending moment about the
/// edge axis must vanish at a pin support).
inline ConstraintSet build_constraints(const Mesh& mesh, const PlateStiffness& D) {
  ConstraintSet set;
  const double ratio = -D.D12 / D.D11;
  for (int p : mesh.left_edge_plan_nodes()) {
    const int nb = mesh.bottom_node(p);
    const int nt = mesh.top_node(p);
    set.fixed.push_back(Mesh::dof(nb, 0));
    set.driven.push_back(Mesh::dof(nt, 0));
    for (int n : {nb, nt}) {
      set.mpc.push_back({Mesh::dof(n, 3), Mesh::dof(n, 5), ratio});
    }
  }
  set.validate(mesh.dof_count());
  return set;
}

/// Plain-text mesh listing, one record per line, for debugging and as input
/// to external tooling.
inline void write_mesh_listing(const Mesh& mesh, std::ostream& os) {
  char buf[160];
  for (int n = 0; n < mesh.node_count(); ++n) {
    const int p = n % mesh.plan_nodes;
    std::snprintf(buf, sizeof(buf), "node %d %.9g %.9g %s", n, mesh.node_x[p], mesh.node_y[p],
                  n < mesh.plan_nodes ? "bottom" : "top");
    os << buf << '\n';
  }
  int id = 0;
  for (std::size_t t = 0; t < mesh.tris.size(); ++t, ++id) {
    const auto& n = mesh.tris[t].nodes;
    os << "elem " << id << " plate " << n[0] << ' ' << n[1] << ' ' << n[2] << " bottom\n";
  }
  for (std::size_t t = 0; t < mesh.tris.size(); ++t, ++id) {
    const auto& n = mesh.tris[t].nodes;
    os << "elem " << id << " plate " << mesh.top_node(n[0]) << ' ' << mesh.top_node(n[1]) << ' '
       << mesh.top_node(n[2]) << " top\n";
  }
  for (std::size_t t = 0; t < mesh.tris.size(); ++t, ++id) {
    const auto& n = mesh.tris[t].nodes;
    os << "elem " << id << " cohesive " << n[0] << ' ' << n[1] << ' ' << n[2] << ' '
       << mesh.top_node(n[0]) << ' ' << mesh.top_node(n[1]) << ' ' << mesh.top_node(n[2])
       << (mesh.ce_precracked[t] ? " precracked" : " intact") << '\n';
  }
}

}  // namespace bell
