#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bell/dcb_model.hpp"
#include "bell/material.hpp"

namespace bell {

struct CurvePoint {
  double opening = 0.0;  // mm
  double load = 0.0;     // N
};

/// Analytical DCB reference. Each arm is a cantilever of rigidity
/// EI = E_xx*b*h^3/12; corrected beam theory adds an effective crack length
/// increment to account for root rotation at the crack front. With
/// correction zero this degenerates to simple beam theory.
///
/// Pre-peak:     delta = 2 P (a0+corr)^3 / (3 EI)
/// Propagation:  G_I = P^2 (a+corr)^2 / (b EI) = G_Ic, opening eliminated
///               through the same compliance relation.
struct BeamModel {
  double flexural_rigidity = 0.0;  // N*mm^2, per arm
  double correction = 0.0;         // mm
  double width = 0.0;
  double precrack = 0.0;
  double toughness = 0.0;

  /// The elastic-foundation root correction of Williams: corr = chi * h with
  /// chi^2 = E_xx/(11 G_xz) * (3 - 2 (Gamma/(1+Gamma))^2) and
  /// Gamma = 1.18 sqrt(E_xx E_zz)/G_xz. Pass `correction_override` to pin a
  /// different value (0 recovers simple beam theory).
  static BeamModel from(const DCBGeometry& geom, const Material& mat,
                        std::optional<double> correction_override = std::nullopt) {
    mat.validate();
    geom.validate();
    const double h = geom.arm_thickness();
    BeamModel m;
    m.flexural_rigidity = mat.E_xx * geom.width * h * h * h / 12.0;
    m.width = geom.width;
    m.precrack = geom.precrack;
    m.toughness = mat.G_Ic;
    if (correction_override) {
      if (*correction_override < 0.0) {
        throw std::invalid_argument("beam model: correction must be >= 0");
      }
      m.correction = *correction_override;
    } else {
      const double gamma = 1.18 * std::sqrt(mat.E_xx * mat.E_zz) / mat.G_xz;
      const double ratio = gamma / (1.0 + gamma);
      m.correction = h * std::sqrt(mat.E_xx / (11.0 * mat.G_xz) * (3.0 - 2.0 * ratio * ratio));
    }
    return m;
  }

  double effective_crack(double a) const { return a + correction; }

  double critical_load() const {
    return std::sqrt(toughness * width * flexural_rigidity) / effective_crack(precrack);
  }

  double critical_opening() const {
    const double ae = effective_crack(precrack);
    return 2.0 * critical_load() * ae * ae * ae / (3.0 * flexural_rigidity);
  }

  /// Load on the propagation branch for a given effective crack length.
  double propagation_load(double a_effective) const {
    return std::sqrt(toughness * width * flexural_rigidity) / a_effective;
  }

  double propagation_opening(double a_effective) const {
    return 2.0 * propagation_load(a_effective) * a_effective * a_effective * a_effective /
           (3.0 * flexural_rigidity);
  }
};

/// Monotone load-displacement curve up to max_opening: linear loading branch
/// to the critical point, then steady-state propagation at G_I = G_Ic.
inline std::vector<CurvePoint> cbt_curve(const DCBGeometry& geom, const Material& mat,
                                         int n_samples, double max_opening = 4.0,
                                         std::optional<double> correction_override = std::nullopt) {
  if (n_samples < 4) {
    throw std::invalid_argument("cbt_curve: need at least 4 samples");
  }
  const BeamModel m = BeamModel::from(geom, mat, correction_override);
  const double dc = m.critical_opening();
  const double pc = m.critical_load();
  std::vector<CurvePoint> curve;
  curve.reserve(n_samples);
  const int n_pre = n_samples / 2;
  for (int i = 0; i < n_pre; ++i) {
    const double d = dc * static_cast<double>(i) / static_cast<double>(n_pre);
    curve.push_back({d, pc * d / dc});
  }
  // opening grows with the square of the effective crack length during
  // propagation, so sweep that instead and read both quantities off it
  const double ae0 = m.effective_crack(m.precrack);
  const double ae1 = ae0 * std::sqrt(std::max(max_opening, dc) / dc);
  const int n_prop = n_samples - n_pre;
  for (int i = 0; i < n_prop; ++i) {
    const double ae = ae0 + (ae1 - ae0) * static_cast<double>(i) / static_cast<double>(n_prop - 1);
    curve.push_back({m.propagation_opening(ae), m.propagation_load(ae)});
  }
  return curve;
}

}  // namespace bell
