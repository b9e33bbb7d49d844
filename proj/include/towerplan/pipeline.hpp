#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "towerplan/config.hpp"
#include "towerplan/coverage.hpp"
#include "towerplan/grid.hpp"
#include "towerplan/miner.hpp"
#include "towerplan/raster.hpp"
#include "towerplan/scoring.hpp"
#include "towerplan/spatialdb.hpp"

namespace towerplan {

inline constexpr const char* kToolName = "towerplan";
inline constexpr const char* kToolVersion = "0.1.0";

/// How far down the pipeline a run goes.
enum class Depth { Classify, Mine, Full };

/// Per-run parameters shared by every cell.
struct PlanParams {
  Threshold minsup = Threshold::from_fraction(0.5);
  Threshold minconf = Threshold::from_fraction(0.8);
  int threshold = 100;
  SuitabilityTable suitability;
  DistanceBins distance_bins;

  static PlanParams from_config(const PlanConfig& cfg);
};

struct SquareResult {
  SquarePos pos;
  PriorityClass priority = PriorityClass::Second;
  std::optional<double> elevation_m;

  // Mine depth and beyond.
  std::vector<SquareRecord> records;
  std::vector<Item> items;  // item universe; rule item ids index into it
  std::size_t transactions = 0;
  std::vector<AssociationRule> rules;

  // Full depth.
  std::vector<TypeWeight> weights;
  Suitability suitability;
  GoodnessScore score;
};

struct CellResult {
  CellId id;
  bool partial = false;
  int n = 1;
  std::vector<SquareResult> squares;  // row-major
  std::vector<std::size_t> omitted;   // objects touching no square of this cell
  std::optional<Placement> placement;
  std::optional<CellCoverage> coverage;
  std::vector<std::string> warnings;
};

/// Runs the pipeline on one cell. Errors surface as StageError with the
/// stage name and the cell as locus.
CellResult process_cell(const Cell& cell, std::span<const SpatialObject> objects, const PlanParams& params,
                        Depth depth);

/// Reference driver: cells one after another.
std::vector<CellResult> process_cells_serial(const ExternalGrid& grid, std::span<const SpatialObject> objects,
                                             const PlanParams& params, Depth depth);

/// OpenMP driver over cells with `jobs` threads. Results come back in cell
/// order, identical to process_cells_serial.
std::vector<CellResult> process_cells_parallel(const ExternalGrid& grid, std::span<const SpatialObject> objects,
                                               const PlanParams& params, Depth depth, int jobs);

struct PlanResult {
  PlanConfig config;
  ExternalGrid grid;
  std::vector<SpatialObject> objects;
  Depth depth = Depth::Full;
  std::vector<CellResult> cells;
  std::optional<CoverageReport> coverage;
  std::vector<std::string> warnings;  // run-level, then per cell in cell order
};

/// Whole pipeline on in-memory inputs.
PlanResult plan(const PlanConfig& config, const ElevationRaster& raster, std::vector<SpatialObject> objects,
                Depth depth = Depth::Full, int jobs = 1);

/// Loads the raster and objects named by the config first.
PlanResult plan(const PlanConfig& config, Depth depth = Depth::Full, int jobs = 1);

/// "a ^ b => c (s=0.5, c=0.8)"
std::string describe_rule(const AssociationRule& rule, std::span<const Item> items);

}  // namespace towerplan
