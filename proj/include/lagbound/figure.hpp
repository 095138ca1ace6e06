#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lagbound/classifier.hpp"

namespace lagbound {

struct FigureRow {
  std::string member;
  double parameter = 0.0;
  double curvature = 0.0;
  std::optional<double> epsilon;  // skipped for the hs ladders
  double hausdorff = 0.0;         // to the zero section
  double invariant = 0.0;
};

struct FigureResult {
  std::vector<FigureRow> rows;
  std::string svg;
  std::string csv;
};

FigureResult render_family(const Family& f);
// Writes <path> and <path> with extension .csv; throws IoError.
FigureResult run_figure(const FamilySpec& spec, const std::filesystem::path& svg_path);

}  // namespace lagbound
