#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "towerplan/geometry.hpp"
#include "towerplan/grid.hpp"

namespace towerplan {

enum class ObjectType : int {
  Town = 1,
  Road = 2,
  River = 3,
  Sea = 4,
  Lake = 5,
  Mine = 6,
  Forest = 7,
  Bridge = 8,
  Highway = 9,
  Peak = 10,
  Trough = 11,
};
inline constexpr int kObjectTypeCount = 11;

enum class SizeCode : int { Large = 1, Medium = 2, Small = 3 };
enum class ShapeCode : int { Point = 1, Line = 2, Polygon = 3 };
enum class Level : int { High = 0, Medium = 1, Low = 2 };

std::string_view to_string(ObjectType t);
std::string_view to_string(Level l);
std::optional<Level> parse_level(std::string_view s);

struct SpatialObject {
  std::string id;
  ObjectType type = ObjectType::Town;
  SizeCode size = SizeCode::Large;
  ShapeCode shape = ShapeCode::Point;
  Geometry geometry;
  Level population = Level::Medium;
  Level employment = Level::Medium;
};

/// Throws GeometryError when codes are out of range or the shape code does
/// not match the geometry variant. Returns the object with normalized geometry.
SpatialObject validated(SpatialObject obj);

/// Natural order on object ids: "O2" < "O10".
bool id_less(std::string_view a, std::string_view b);

/// Compass sector codes. A = north of, B = south of, C = east of,
/// D = west of, E = north east of, F = north west of, G = south east of,
/// H = south west of.
enum class DirectionCode : int { A, B, C, D, E, F, G, H };

/// I = overlap, II = meet, III = covers, IV = covered by, V = disjoint.
enum class PositionCode : int { I, II, III, IV, V };

std::string_view to_string(DirectionCode d);
std::string_view to_string(PositionCode p);
DirectionCode opposite(DirectionCode d);

/// Sector of the bearing from a's centroid to b's centroid. Sectors are 45
/// degrees wide and centered on the compass points, half-open so a boundary
/// bearing belongs to the clockwise-next sector. Throws GeometryError when
/// the centroids coincide.
DirectionCode compute_direction(const SpatialObject& a, const SpatialObject& b);

/// Fixed precedence: covers, covered by, overlap / meet, disjoint.
PositionCode compute_position(const SpatialObject& a, const SpatialObject& b);

/// Ascending distance thresholds in meters; bin i means "< thresholds[i]",
/// the last bin means ">= thresholds.back()".
class DistanceBins {
 public:
  DistanceBins();
  explicit DistanceBins(std::vector<double> thresholds_m);

  std::size_t bin(double meters) const;
  std::string label(std::size_t bin) const;
  std::size_t count() const { return thresholds_.size() + 1; }
  const std::vector<double>& thresholds_m() const { return thresholds_; }

 private:
  std::vector<double> thresholds_;
};

struct Distance {
  double meters = 0.0;
  std::size_t bin = 0;
};

Distance compute_distance(const SpatialObject& a, const SpatialObject& b, const DistanceBins& bins);

/// An object's presence in one square, with the part of it clipped there.
struct PlacedObject {
  std::size_t object = 0;  // index into the objects list
  double clipped_area_m2 = 0.0;
  double clipped_length_m = 0.0;
};

struct Assignment {
  std::vector<std::vector<PlacedObject>> per_square;  // indexed by InternalGrid::index
  std::vector<std::size_t> omitted;                   // objects touching no square of the grid
};

/// Lists each object under every square it intersects with positive measure
/// (area for polygons, length for polylines); points go to the one square
/// InternalGrid::locate picks. Objects per square keep input order.
Assignment assign_objects(std::span<const SpatialObject> objects, const InternalGrid& grid);

struct DirectionRelation {
  DirectionCode code;
  std::string target;
};

struct PositionRelation {
  PositionCode code;
  std::string target;
};

struct DistanceRelation {
  std::string target;
  double meters = 0.0;
  std::size_t bin = 0;
  std::string label;
};

/// One row of a square's spatial database.
struct SquareRecord {
  std::string object_id;
  ObjectType type = ObjectType::Town;
  SizeCode size = SizeCode::Large;
  ShapeCode shape = ShapeCode::Point;
  std::optional<DirectionRelation> direction;
  std::optional<PositionRelation> position;
  std::optional<DistanceRelation> distance;
  Level population = Level::Medium;
  Level employment = Level::Medium;
};

/// Index of the object nearest to objects[i] among the others, ties broken
/// by natural id order. nullopt for a single object.
std::optional<std::size_t> nearest_other(std::span<const SpatialObject* const> objects, std::size_t i);

/// One record per object, ordered by natural id order. Relations target the
/// nearest other object in the square; a lone object has none, and the
/// direction is left empty when both centroids coincide.
std::vector<SquareRecord> build_square_database(std::span<const SpatialObject* const> objects,
                                                const DistanceBins& bins);

enum class Attribute : int { Type, Size, Direction, Position, Distance, Population, Employment };

/// Mining item: attribute tag plus coded value. Ordered by tag rank, then
/// code, then target.
struct Item {
  Attribute attribute = Attribute::Type;
  int code = 0;
  std::string target;
  std::string label;  // distance bin label; empty otherwise

  friend auto operator<=>(const Item&, const Item&) = default;
};

/// Text form used in reports, e.g. "type=4", "dir=(B,O2)", "dist=(O2,<50km)".
std::string to_string(const Item& item);

struct Transaction {
  SquarePos square;
  std::vector<Item> items;  // sorted, unique
};

/// One transaction per record. Shape is carried by the record but is not a
/// mining item; empty relation fields emit nothing.
std::vector<Transaction> encode_transactions(SquarePos square, std::span<const SquareRecord> records);

}  // namespace towerplan
