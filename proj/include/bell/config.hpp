#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bell/dcb_analysis.hpp"
#include "bell/dcb_model.hpp"
#include "bell/material.hpp"
#include "bell/solver.hpp"

namespace bell {

struct OutputOptions {
  std::string directory = "out";
  bool load_displacement = true;
  std::vector<double> profiles;     // openings, mm
  std::vector<double> damage_maps;  // openings, mm
  bool mesh_listing = false;
  bool cbt_curve = false;
};

struct RunConfig {
  DCBGeometry geometry;
  Material material;
  IntegrationScheme integration;
  StepControl step;
  OutputOptions output;
  std::optional<double> cbt_correction;  // mm, overrides the root correction

  void validate() const {
    geometry.validate();
    material.validate();
    step.validate();
    QuadratureRule::gauss(integration.rule_points);
    SubdomainLayout::uniform(integration.subdivision_levels);
  }
};

namespace cfg {

/// Field access with dotted-path error reporting.
inline const nlohmann::json& child(const nlohmann::json& j, const std::string& path,
                                   const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument("config: missing field " + path + key);
  }
  return *it;
}

inline double number(const nlohmann::json& j, const std::string& path, const std::string& key) {
  const auto& v = child(j, path, key);
  if (!v.is_number()) {
    throw std::invalid_argument("config: field " + path + key + " must be a number");
  }
  return v.get<double>();
}

inline double number_or(const nlohmann::json& j, const std::string& path, const std::string& key,
                        double fallback) {
  return j.contains(key) ? number(j, path, key) : fallback;
}

inline int integer(const nlohmann::json& j, const std::string& path, const std::string& key) {
  const auto& v = child(j, path, key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument("config: field " + path + key + " must be an integer");
  }
  return v.get<int>();
}

inline bool boolean_or(const nlohmann::json& j, const std::string& path, const std::string& key,
                       bool fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_boolean()) {
    throw std::invalid_argument("config: field " + path + key + " must be a boolean");
  }
  return v.get<bool>();
}

inline std::vector<double> number_list(const nlohmann::json& j, const std::string& path,
                                       const std::string& key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) {
    throw std::invalid_argument("config: field " + path + key + " must be an array of numbers");
  }
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw std::invalid_argument("config: field " + path + key + " must be an array of numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace cfg

inline RunConfig parse_config(const nlohmann::json& j) {
  if (cfg::integer(j, "", "schema_version") != 1) {
    throw std::invalid_argument("config: unsupported schema_version (expected 1)");
  }
  RunConfig c;

  const auto& geom = cfg::child(j, "", "geometry");
  c.geometry.length = cfg::number(geom, "geometry.", "length_mm");
  c.geometry.width = cfg::number(geom, "geometry.", "width_mm");
  c.geometry.thickness = cfg::number(geom, "geometry.", "thickness_mm");
  c.geometry.precrack = cfg::number(geom, "geometry.", "precrack_mm");

  const auto& mesh = cfg::child(j, "", "mesh");
  c.geometry.h_fine = cfg::number(mesh, "mesh.", "h_fine_mm");
  c.geometry.h_coarse = cfg::number(mesh, "mesh.", "h_coarse_mm");
  const auto& fine = cfg::child(mesh, "mesh.", "fine_region_mm");
  if (!fine.is_array() || fine.size() != 2 || !fine[0].is_number() || !fine[1].is_number()) {
    throw std::invalid_argument("config: field mesh.fine_region_mm must be [x0, x1]");
  }
  c.geometry.fine_x0 = fine[0].get<double>();
  c.geometry.fine_x1 = fine[1].get<double>();

  const auto& mat = cfg::child(j, "", "material");
  c.material.E_xx = cfg::number(mat, "material.", "E_xx_MPa");
  c.material.E_yy = cfg::number(mat, "material.", "E_yy_MPa");
  c.material.E_zz = cfg::number(mat, "material.", "E_zz_MPa");
  c.material.nu_xy = cfg::number(mat, "material.", "nu_xy");
  c.material.nu_xz = cfg::number(mat, "material.", "nu_xz");
  c.material.nu_yz = cfg::number(mat, "material.", "nu_yz");
  c.material.G_xy = cfg::number(mat, "material.", "G_xy_MPa");
  c.material.G_xz = cfg::number(mat, "material.", "G_xz_MPa");
  c.material.G_yz = cfg::number(mat, "material.", "G_yz_MPa");
  c.material.G_Ic = cfg::number(mat, "material.", "G_Ic_N_mm");
  c.material.G_IIc = cfg::number(mat, "material.", "G_IIc_N_mm");
  c.material.tau_I0 = cfg::number(mat, "material.", "tau_I0_MPa");
  c.material.tau_II0 = cfg::number(mat, "material.", "tau_II0_MPa");
  c.material.eta_BK = cfg::number(mat, "material.", "eta_BK");

  const auto& integ = cfg::child(j, "", "integration");
  c.integration.rule_points = cfg::integer(integ, "integration.", "rule_points");
  c.integration.subdivision_levels = cfg::integer(integ, "integration.", "subdivision_levels");

  const auto& step = cfg::child(j, "", "step");
  c.step.target = cfg::number(step, "step.", "target_mm");
  c.step.initial_increment = cfg::number(step, "step.", "initial_mm");
  c.step.min_increment = cfg::number(step, "step.", "min_mm");
  c.step.max_increment = cfg::number(step, "step.", "max_mm");
  c.step.cutback_factor = cfg::number_or(step, "step.", "cutback_factor", 0.25);
  c.step.growth_factor = cfg::number_or(step, "step.", "growth_factor", 1.5);
  c.step.max_iterations = static_cast<int>(cfg::number_or(step, "step.", "max_iterations", 25));
  c.step.force_tolerance = cfg::number_or(step, "step.", "force_tolerance_N", 5e-3);
  c.step.displacement_tolerance =
      cfg::number_or(step, "step.", "displacement_tolerance_mm", 1e-6);

  if (j.contains("output")) {
    const auto& out = j.at("output");
    if (out.contains("directory")) {
      const auto& d = out.at("directory");
      if (!d.is_string()) throw std::invalid_argument("config: field output.directory must be a string");
      c.output.directory = d.get<std::string>();
    }
    c.output.load_displacement = cfg::boolean_or(out, "output.", "load_displacement", true);
    c.output.profiles = cfg::number_list(out, "output.", "profiles_mm");
    c.output.damage_maps = cfg::number_list(out, "output.", "damage_maps_mm");
    c.output.mesh_listing = cfg::boolean_or(out, "output.", "mesh_listing", false);
    c.output.cbt_curve = cfg::boolean_or(out, "output.", "cbt_curve", false);
  }
  if (j.contains("beam_theory")) {
    const auto& bt = j.at("beam_theory");
    if (bt.contains("correction_mm")) {
      c.cbt_correction = cfg::number(bt, "beam_theory.", "correction_mm");
    }
  }

  c.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace bell
