#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lagbound/classifier.hpp"
#include "lagbound/surface_geom.hpp"

namespace lagbound {

struct PatchSpec {
  PatchKind kind = PatchKind::flat_cylinder;
  double length = 0.0;  // cylinder and hyperbolic band; 0 means 2 pi
  double radius = 2.0;  // plane_circle base radius
  double halfwidth = 1.0;
};

BaseCurve base_of(const PatchSpec& spec);
PatchPtr build_patch(const PatchSpec& spec, GridResolution grid);

struct LemmaToggle {
  bool enabled = true;
  std::optional<double> tol;
};

struct ExperimentConfig {
  std::map<std::string, PatchSpec> patches;
  std::vector<FamilySpec> families;
  std::map<std::string, LemmaToggle> lemmas;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  GridResolution grid;
  std::optional<double> tol_override;
};

// Patches "cylinder", "plane", "sphere", "hyperbolic"; every lemma enabled.
ExperimentConfig default_config();

// JSON text; unknown keys and bad values raise ConfigError naming the JSON pointer.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::string& path);

// "2048x513"
GridResolution parse_grid(const std::string& s);

}  // namespace lagbound
