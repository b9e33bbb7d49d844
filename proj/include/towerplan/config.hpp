#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "towerplan/scoring.hpp"
#include "towerplan/spatialdb.hpp"

namespace towerplan {

struct PlanConfig {
  // Paths as written by the user (echoed in reports) and as resolved.
  std::string raster;
  std::string objects;
  std::filesystem::path raster_path;
  std::filesystem::path objects_path;

  double cell_side_m = 0.0;
  double antenna_radius_m = 0.0;
  std::optional<double> square_side_m;
  double minsup = 0.5;
  double minconf = 0.8;
  int threshold = 100;
  SuitabilityTable suitability;
  DistanceBins distance_bins;

  std::optional<std::filesystem::path> out_path;
  std::optional<std::filesystem::path> svg_path;
  std::optional<int> jobs;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Reads a JSON config. Relative paths resolve against base_dir. Unknown
/// keys are rejected.
PlanConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
PlanConfig load_config(const std::filesystem::path& path);

/// Objects file: JSON array of {"id","type","size","shape","geometry",
/// "population","employment"}. Throws ConfigError naming the element.
std::vector<SpatialObject> parse_objects(const nlohmann::json& doc);
std::vector<SpatialObject> load_objects(const std::filesystem::path& path);

nlohmann::json objects_to_json(const std::vector<SpatialObject>& objects);

}  // namespace towerplan
