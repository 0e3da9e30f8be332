#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "bell/beam_theory.hpp"
#include "bell/dcb_model.hpp"
#include "bell/solver.hpp"

namespace bell {

inline void write_load_displacement(const AnalysisHistory& history, std::ostream& os) {
  os << "opening_mm,load_N,iterations\n";
  char line[96];
  for (const auto& r : history.increments) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%d", r.opening, r.reaction, r.iterations);
    os << line << '\n';
  }
}

inline void write_cbt_curve(const std::vector<CurvePoint>& curve, std::ostream& os) {
  os << "opening_mm,load_N\n";
  char line[64];
  for (const auto& p : curve) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g", p.opening, p.load);
    os << line << '\n';
  }
}

/// Row of elements used for stress/damage profiles: the row adjacent to
/// mid-width on the +y side. Even row counts have no row centred on the
/// specimen axis, so this choice is what keeps the sampling deterministic.
inline int profile_row(const Mesh& mesh) { return mesh.ny / 2; }

namespace detail {

inline const Snapshot& snapshot_or_throw(const AnalysisHistory& history, double opening) {
  const Snapshot* snap = history.snapshot_at(opening);
  if (!snap) {
    throw std::invalid_argument("output: no snapshot recorded at the requested opening");
  }
  return *snap;
}

}  // namespace detail

/// Mode I traction and damage along the specimen, sampled for each element
/// of the profile row at the integration point closest to its barycenter,
/// ordered by x.
inline void write_profile(const AnalysisHistory& history, const Mesh& mesh, double opening,
                          std::ostream& os) {
  const Snapshot& snap = detail::snapshot_or_throw(history, opening);
  const int row = profile_row(mesh);

  struct Entry {
    double x, traction, damage, dist2;
  };
  std::vector<Entry> best(mesh.tris.size(), Entry{0.0, 0.0, 0.0, 1e300});
  for (const auto& s : snap.samples) {
    if (mesh.tris[s.ce].row != row) continue;
    const double dx = s.x - mesh.tris[s.ce].cx;
    const double dy = s.y - mesh.tris[s.ce].cy;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best[s.ce].dist2) {
      best[s.ce] = {s.x, s.traction, s.damage, d2};
    }
  }
  std::vector<Entry> rows;
  for (const auto& e : best) {
    if (e.dist2 < 1e300) rows.push_back(e);
  }
  std::sort(rows.begin(), rows.end(), [](const Entry& a, const Entry& b) { return a.x < b.x; });

  os << "x_mm,tau_I_MPa,damage\n";
  char line[96];
  for (const auto& e : rows) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g", e.x, e.traction, e.damage);
    os << line << '\n';
  }
}

/// Per integration point damage table.
inline void write_damage_csv(const AnalysisHistory& history, double opening, std::ostream& os) {
  const Snapshot& snap = detail::snapshot_or_throw(history, opening);
  os << "x_mm,y_mm,damage\n";
  char line[96];
  for (const auto& s : snap.samples) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g", s.x, s.y, s.damage);
    os << line << '\n';
  }
}

/// Legacy ASCII VTK unstructured grid of the interface triangulation with
/// the element-mean damage as cell data.
inline void write_damage_vtk(const AnalysisHistory& history, const Mesh& mesh, double opening,
                             std::ostream& os) {
  const Snapshot& snap = detail::snapshot_or_throw(history, opening);
  std::vector<double> mean(mesh.tris.size(), 0.0);
  std::vector<int> count(mesh.tris.size(), 0);
  for (const auto& s : snap.samples) {
    mean[s.ce] += s.damage;
    count[s.ce] += 1;
  }
  for (std::size_t t = 0; t < mesh.tris.size(); ++t) {
    if (count[t] > 0) mean[t] /= count[t];
  }

  char line[128];
  os << "# vtk DataFile Version 3.0\n";
  std::snprintf(line, sizeof(line), "interface damage at %.9g mm opening", opening);
  os << line << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.plan_nodes << " double\n";
  for (int p = 0; p < mesh.plan_nodes; ++p) {
    std::snprintf(line, sizeof(line), "%.9g %.9g 0", mesh.node_x[p], mesh.node_y[p]);
    os << line << '\n';
  }
  os << "CELLS " << mesh.tris.size() << ' ' << 4 * mesh.tris.size() << '\n';
  for (const auto& t : mesh.tris) {
    os << "3 " << t.nodes[0] << ' ' << t.nodes[1] << ' ' << t.nodes[2] << '\n';
  }
  os << "CELL_TYPES " << mesh.tris.size() << '\n';
  for (std::size_t t = 0; t < mesh.tris.size(); ++t) os << "5\n";
  os << "CELL_DATA " << mesh.tris.size() << "\nSCALARS damage double 1\nLOOKUP_TABLE default\n";
  for (std::size_t t = 0; t < mesh.tris.size(); ++t) {
    std::snprintf(line, sizeof(line), "%.9g", mean[t]);
    os << line << '\n';
  }
}

}  // namespace bell
