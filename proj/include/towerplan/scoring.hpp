#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "towerplan/coverage.hpp"
#include "towerplan/grid.hpp"
#include "towerplan/miner.hpp"
#include "towerplan/spatialdb.hpp"

namespace towerplan {

enum class PriorityClass { First, Second };

std::string_view to_string(PriorityClass c);

/// SECOND for squares on the internal-grid border (x or y equal to 1 or n),
/// FIRST otherwise. Throws ScoringError for a position outside 1..n.
PriorityClass classify(SquarePos pos, int n);

/// FIRST -> 100, SECOND -> 50.
int class_score(PriorityClass c);

/// Placement-friendliness per object type, in percent.
struct SuitabilityTable {
  // town, road, river, sea, lake, mine, forest, bridge, highway, peak, trough
  std::array<int, kObjectTypeCount> percent{20, 60, 40, 50, 40, 30, 55, 35, 60, 90, 10};
  int empty_default = 50;     // square with no objects
  int terrain_percent = 50;   // weight not claimed by any object
  double point_weight = 0.05;
  double line_weight = 0.1;

  int at(ObjectType t) const { return percent[static_cast<std::size_t>(t) - 1]; }
  /// Throws ConfigError for entries outside [0, 100] or negative weights.
  void validate() const;
};

struct TypeWeight {
  ObjectType type;
  double weight = 0.0;  // share of the square
};

/// Per-type share of a square: clipped area fraction for polygons, the
/// nominal table weights for lines and points. Sorted by type code.
std::vector<TypeWeight> square_type_weights(std::span<const SpatialObject> objects,
                                            std::span<const PlacedObject> placed, const Rect& square,
                                            const SuitabilityTable& table);

/// Highest support at which a type item shows up in the square's rules.
struct RuleTypeSupport {
  ObjectType type;
  Rational support;
};

struct Suitability {
  int percent = 0;
  std::optional<ObjectType> dominant_by_area;
  std::vector<ObjectType> dominant_by_rules;  // all types tied at the top
  /// False when rules name a dominant type that differs from the area one.
  bool consistent = true;
};

/// Weighted mean of table entries over the square's type weights, with any
/// unclaimed share scored as open terrain, rounded to the nearest integer and
/// capped to [0, 100]. Rules are only cross-checked against the area answer.
Suitability suitability(std::span<const TypeWeight> weights, std::span<const RuleTypeSupport> rule_types,
                        const SuitabilityTable& table);

struct GoodnessScore {
  int class_component = 0;
  int suitability_component = 0;

  int total() const { return class_component + suitability_component; }
  friend bool operator==(const GoodnessScore&, const GoodnessScore&) = default;
};

GoodnessScore goodness(SquarePos pos, int n, int suitability_percent);

struct ScoredSquare {
  SquarePos pos;
  GoodnessScore score;
};

enum class PlacementMode { Single, Dual };

std::string_view to_string(PlacementMode m);

struct RulesDigest {
  std::size_t rule_count = 0;
  std::vector<std::string> top_rules;
};

struct Placement {
  CellId cell;
  PlacementMode mode = PlacementMode::Single;
  std::vector<SquarePos> squares;
  std::vector<GoodnessScore> scores;
  /// Single mode picked because the best square met the threshold. False
  /// when dual mode was taken, or wanted but fewer than two border squares exist.
  bool meets_threshold = true;
  std::vector<RulesDigest> digests;  // filled by the pipeline, one per square
};

/// Picks the argmax-goodness square when it reaches `threshold`, breaking
/// ties by distance to the cell center and then by (x, y). Otherwise picks
/// the pair of SECOND squares with the largest joint footprint, then the
/// largest summed goodness, then the smallest pair. Input order is irrelevant.
/// Throws ScoringError for an empty or incomplete score set.
Placement select_placement(const InternalGrid& grid, std::span<const ScoredSquare> scores, int threshold);

}  // namespace towerplan
