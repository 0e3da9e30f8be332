#pragma once

#include <stdexcept>
#include <string>

namespace bell {

/// Orthotropic ply properties. Units are N, mm, MPa throughout; fracture
/// toughnesses in N/mm.
struct Material {
  double E_xx = 0.0;
  double E_yy = 0.0;
  double E_zz = 0.0;
  double nu_xy = 0.0;
  double nu_xz = 0.0;
  double nu_yz = 0.0;
  double G_xy = 0.0;
  double G_xz = 0.0;
  double G_yz = 0.0;
  double G_Ic = 0.0;
  double G_IIc = 0.0;
  double tau_I0 = 0.0;
  double tau_II0 = 0.0;
  double eta_BK = 0.0;  // mixed-mode exponent; stored but unused in a mode I analysis

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) {
        throw std::invalid_argument(std::string("material: ") + name + " must be > 0");
      }
    };
    positive(E_xx, "E_xx");
    positive(E_yy, "E_yy");
    positive(E_zz, "E_zz");
    positive(G_xy, "G_xy");
    positive(G_xz, "G_xz");
    positive(G_yz, "G_yz");
    positive(G_Ic, "G_Ic");
    positive(G_IIc, "G_IIc");
    positive(tau_I0, "tau_I0");
    positive(tau_II0, "tau_II0");
    if (!(nu_xy * nu_xy * E_yy / E_xx < 1.0)) {
      throw std::invalid_argument("material: nu_xy^2*E_yy/E_xx >= 1, reduced compliance not admissible");
    }
  }

  /// T300/1076 graphite-epoxy, the standard mode I delamination benchmark ply.
  static Material t300_1076() {
    Material m;
    m.E_xx = 139400.0;
    m.E_yy = 10160.0;
    m.E_zz = 10160.0;
    m.nu_xy = 0.3;
    m.nu_xz = 0.3;
    m.nu_yz = 0.436;
    m.G_xy = 4600.0;
    m.G_xz = 4600.0;
    m.G_yz = 3540.0;
    m.G_Ic = 0.170;   // 0.170 kJ/m^2 == 0.170 N/mm
    m.G_IIc = 0.494;
    m.tau_I0 = 30.0;
    m.tau_II0 = 50.0;
    m.eta_BK = 1.62;
    return m;
  }
};

/// Kirchhoff bending stiffnesses of a single-ply sublaminate, N*mm.
/// Bend-twist coupling terms are identically zero for the 0-degree layups
/// supported here.
struct PlateStiffness {
  double D11 = 0.0;
  double D12 = 0.0;
  double D22 = 0.0;
  double D33 = 0.0;
};

/// Reduced plane-stress bending stiffness D = Q*t^3/12 of a unidirectional
/// ply. Only 0-degree plies are supported; anything else would populate the
/// bend-twist terms that the plate element assumes vanish.
inline PlateStiffness plate_bending_stiffness(const Material& m, double thickness,
                                              double ply_angle_deg = 0.0) {
  m.validate();
  if (!(thickness > 0.0)) {
    throw std::invalid_argument("plate_bending_stiffness: thickness must be > 0");
  }
  if (ply_angle_deg != 0.0) {
    throw std::invalid_argument("plate_bending_stiffness: only 0-degree plies are supported");
  }
  const double nu_yx = m.nu_xy * m.E_yy / m.E_xx;
  const double denom = 1.0 - m.nu_xy * nu_yx;
  const double f = thickness * thickness * thickness / 12.0;
  PlateStiffness d;
  d.D11 = m.E_xx / denom * f;
  d.D22 = m.E_yy / denom * f;
  d.D12 = m.nu_xy * m.E_yy / denom * f;
  d.D33 = m.G_xy * f;
  // positive definiteness of the expanded 3x3 matrix
  if (!(d.D11 > 0.0 && d.D33 > 0.0 && d.D11 * d.D22 - d.D12 * d.D12 > 0.0)) {
    throw std::invalid_argument("plate_bending_stiffness: resulting D is not positive definite");
  }
  return d;
}

}  // namespace bell
