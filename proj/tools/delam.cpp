// Batch front end: run a DCB delamination analysis from a JSON configuration
// and export load-displacement curves, cohesive-zone profiles and damage
// maps.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bell/beam_theory.hpp"
#include "bell/config.hpp"
#include "bell/dcb_analysis.hpp"
#include "bell/output.hpp"

namespace {

// mirrors solver progress to stdout and run.log
class Tee : public std::ostream, private std::streambuf {
 public:
  Tee(std::ostream& a, std::ostream& b) : std::ostream(this), a_(a), b_(b) {}

 private:
  int overflow(int ch) override {
    if (ch != EOF) {
      a_.put(static_cast<char>(ch));
      b_.put(static_cast<char>(ch));
    }
    return ch;
  }
  std::ostream& a_;
  std::ostream& b_;
};

std::string format_mm(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

int run_command(const std::string& config_path, const std::string& out_override,
                const std::vector<double>& extra_profiles,
                const std::vector<double>& extra_maps) {
  bell::RunConfig config;
  try {
    config = bell::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!out_override.empty()) config.output.directory = out_override;
  config.output.profiles.insert(config.output.profiles.end(), extra_profiles.begin(),
                                extra_profiles.end());
  config.output.damage_maps.insert(config.output.damage_maps.end(), extra_maps.begin(),
                                   extra_maps.end());

  const std::filesystem::path out_dir(config.output.directory);
  std::filesystem::create_directories(out_dir);

  std::set<double> snapshot_set(config.output.profiles.begin(), config.output.profiles.end());
  snapshot_set.insert(config.output.damage_maps.begin(), config.output.damage_maps.end());
  std::vector<double> snapshots(snapshot_set.begin(), snapshot_set.end());

  bell::DcbAnalysis analysis(config.geometry, config.material, config.integration);
  std::cout << "mesh: " << analysis.mesh().tris.size() << " plan triangles, "
            << analysis.mesh().dof_count() << " DOFs, " << analysis.ips_per_element()
            << " IPs per cohesive element\n";

  if (config.output.mesh_listing) {
    auto os = open_output(out_dir / "mesh.txt");
    bell::write_mesh_listing(analysis.mesh(), os);
  }

  std::ofstream log(out_dir / "run.log");
  Tee tee(std::cout, log);
  const bell::AnalysisHistory history = analysis.run(config.step, snapshots, &tee);

  if (config.output.load_displacement) {
    auto os = open_output(out_dir / "load_disp.csv");
    bell::write_load_displacement(history, os);
  }
  if (config.output.cbt_curve) {
    auto os = open_output(out_dir / "cbt_curve.csv");
    bell::write_cbt_curve(
        bell::cbt_curve(config.geometry, config.material, 400, config.step.target,
                        config.cbt_correction),
        os);
  }
  for (double mm : config.output.profiles) {
    if (!history.snapshot_at(mm)) continue;  // unreachable opening: reported below
    auto os = open_output(out_dir / ("profile_" + format_mm(mm) + ".csv"));
    bell::write_profile(history, analysis.mesh(), mm, os);
  }
  for (double mm : config.output.damage_maps) {
    if (!history.snapshot_at(mm)) continue;
    {
      auto os = open_output(out_dir / ("damage_" + format_mm(mm) + ".csv"));
      bell::write_damage_csv(history, mm, os);
    }
    auto os = open_output(out_dir / ("damage_" + format_mm(mm) + ".vtk"));
    bell::write_damage_vtk(history, analysis.mesh(), mm, os);
  }

  if (!history.completed) {
    const double last =
        history.increments.empty() ? 0.0 : history.increments.back().opening;
    std::cerr << "error: solver aborted (" << history.abort_reason
              << "); last converged opening " << last << " mm\n";
    return 2;
  }
  std::cout << "peak load " << history.peak_load() << " N at opening "
            << history.opening_at_peak() << " mm\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DCB delamination solver with C1 plate and cohesive elements"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<double> profiles, damage_maps;
  CLI::App* run = app.add_subcommand("run", "run an analysis from a JSON configuration");
  run->add_option("config", config_path, "configuration file")->required();
  run->add_option("--out", out_dir, "output directory (overrides the configuration)");
  run->add_option("--profiles", profiles, "extra profile export openings, mm");
  run->add_option("--damage-map", damage_maps, "extra damage map export openings, mm");

  CLI11_PARSE(app, argc, argv);

  try {
    return run_command(config_path, out_dir, profiles, damage_maps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
