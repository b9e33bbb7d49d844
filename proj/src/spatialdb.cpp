#include "towerplan/spatialdb.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "towerplan/error.hpp"

namespace towerplan {

namespace {

// Compass sectors clockwise from north, mapped to direction codes.
constexpr std::array<DirectionCode, 8> kSectorCode{
    DirectionCode::A, DirectionCode::E, DirectionCode::C, DirectionCode::G,
    DirectionCode::B, DirectionCode::H, DirectionCode::D, DirectionCode::F,
};

std::string format_km(double meters) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), meters / 1000.0);
  return std::string(buf.data(), ptr) + "km";
}

}  // namespace

std::string_view to_string(ObjectType t) {
  static constexpr std::array<std::string_view, kObjectTypeCount> kNames{
      "town", "road", "river", "sea", "lake", "mine", "forest", "bridge", "highway", "peak", "trough"};
  return kNames[static_cast<std::size_t>(t) - 1];
}

std::string_view to_string(Level l) {
  switch (l) {
    case Level::High: return "high";
    case Level::Medium: return "medium";
    case Level::Low: return "low";
  }
  return "?";
}

std::optional<Level> parse_level(std::string_view s) {
  if (s == "high") return Level::High;
  if (s == "medium") return Level::Medium;
  if (s == "low") return Level::Low;
  return std::nullopt;
}

std::string_view to_string(DirectionCode d) {
  static constexpr std::array<std::string_view, 8> kNames{"A", "B", "C", "D", "E", "F", "G", "H"};
  return kNames[static_cast<std::size_t>(d)];
}

std::string_view to_string(PositionCode p) {
  static constexpr std::array<std::string_view, 5> kNames{"I", "II", "III", "IV", "V"};
  return kNames[static_cast<std::size_t>(p)];
}

DirectionCode opposite(DirectionCode d) {
  switch (d) {
    case DirectionCode::A: return DirectionCode::B;
    case DirectionCode::B: return DirectionCode::A;
    case DirectionCode::C: return DirectionCode::D;
    case DirectionCode::D: return DirectionCode::C;
    case DirectionCode::E: return DirectionCode::H;
    case DirectionCode::H: return DirectionCode::E;
    case DirectionCode::F: return DirectionCode::G;
    case DirectionCode::G: return DirectionCode::F;
  }
  return d;
}

SpatialObject validated(SpatialObject obj) {
  const int type = static_cast<int>(obj.type);
  const int size = static_cast<int>(obj.size);
  const int shape = static_cast<int>(obj.shape);
  if (type < 1 || type > kObjectTypeCount) throw GeometryError(obj.id + ": type code out of range 1..11");
  if (size < 1 || size > 3) throw GeometryError(obj.id + ": size code out of range 1..3");
  if (shape < 1 || shape > 3) throw GeometryError(obj.id + ": shape code out of range 1..3");
  if (static_cast<int>(obj.geometry.index()) + 1 != shape) {
    throw GeometryError(obj.id + ": shape code " + std::to_string(shape) + " does not match geometry kind");
  }
  try {
    obj.geometry = normalized(std::move(obj.geometry));
  } catch (const GeometryError& e) {
    throw GeometryError(obj.id + ": " + e.what());
  }
  return obj;
}

bool id_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      auto na = a.substr(i, ie - i);
      auto nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;  // e.g. "O01" vs "O1": fall back to plain order
}

DirectionCode compute_direction(const SpatialObject& a, const SpatialObject& b) {
  const Point ca = centroid(a.geometry);
  const Point cb = centroid(b.geometry);
  double dx = cb.x - ca.x;
  double dy = cb.y - ca.y;
  if (dx == 0.0 && dy == 0.0) {
    throw GeometryError("direction undefined: " + a.id + " and " + b.id + " have coincident centroids");
  }
  // Evaluate on the northern half-plane and flip, so (a,b) and (b,a) land in
  // exactly opposite sectors.
  int flip = 0;
  if (dy < 0.0 || (dy == 0.0 && dx < 0.0)) {
    dx = -dx;
    dy = -dy;
    flip = 4;
  }
  const double bearing = std::atan2(dx, dy) * 180.0 / std::numbers::pi;  // (-90, 90]
  const int sector = static_cast<int>(std::floor((bearing + 22.5) / 45.0));
  return kSectorCode[static_cast<std::size_t>((sector + flip + 8) % 8)];
}

PositionCode compute_position(const SpatialObject& a, const SpatialObject& b) {
  if (covers(a.geometry, b.geometry)) return PositionCode::III;
  if (covers(b.geometry, a.geometry)) return PositionCode::IV;
  if (distance(a.geometry, b.geometry) < kTouchTolerance) {
    return interiors_intersect(a.geometry, b.geometry) ? PositionCode::I : PositionCode::II;
  }
  return PositionCode::V;
}

DistanceBins::DistanceBins() : DistanceBins({1000.0, 10000.0, 50000.0}) {}

DistanceBins::DistanceBins(std::vector<double> thresholds_m) : thresholds_(std::move(thresholds_m)) {
  if (thresholds_.empty()) throw ConfigError("distance bins need at least one threshold");
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    if (!(thresholds_[i] > 0) || (i && thresholds_[i] <= thresholds_[i - 1])) {
      throw ConfigError("distance thresholds must be positive and strictly increasing");
    }
  }
}

std::size_t DistanceBins::bin(double meters) const {
  return static_cast<std::size_t>(std::upper_bound(thresholds_.begin(), thresholds_.end(), meters) -
                                  thresholds_.begin());
}

std::string DistanceBins::label(std::size_t bin) const {
  if (bin < thresholds_.size()) return "<" + format_km(thresholds_[bin]);
  return ">=" + format_km(thresholds_.back());
}

Distance compute_distance(const SpatialObject& a, const SpatialObject& b, const DistanceBins& bins) {
  const double d = distance(a.geometry, b.geometry);
  return {d, bins.bin(d)};
}

Assignment assign_objects(std::span<const SpatialObject> objects, const InternalGrid& grid) {
  Assignment out;
  out.per_square.resize(grid.size());
  const Rect& cell = grid.cell_bounds();
  for (std::size_t k = 0; k < objects.size(); ++k) {
    const Geometry& g = objects[k].geometry;
    const Rect box = bounding_box(g);
    bool placed = false;
    if (const auto* p = std::get_if<Point>(&g)) {
      if (auto pos = grid.locate(*p)) {
        out.per_square[grid.index(*pos)].push_back({k, 0.0, 0.0});
        placed = true;
      }
    } else if (box.max_x >= cell.min_x && box.min_x <= cell.max_x && box.max_y >= cell.min_y &&
               box.min_y <= cell.max_y) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Rect sq = grid.bounds(grid.position(i));
        if (box.max_x < sq.min_x || box.min_x > sq.max_x || box.max_y < sq.min_y || box.min_y > sq.max_y) continue;
        if (const auto* line = std::get_if<Polyline>(&g)) {
          const double len = clipped_length(*line, sq);
          if (len > 0.0) {
            out.per_square[i].push_back({k, 0.0, len});
            placed = true;
          }
        } else {
          const double area = polygon_area(clip_polygon(std::get<Polygon>(g), sq));
          if (area > 0.0) {
            out.per_square[i].push_back({k, area, 0.0});
            placed = true;
          }
        }
      }
    }
    if (!placed) out.omitted.push_back(k);
  }
  return out;
}

std::optional<std::size_t> nearest_other(std::span<const SpatialObject* const> objects, std::size_t i) {
  std::optional<std::size_t> best;
  double best_d = 0.0;
  for (std::size_t j = 0; j < objects.size(); ++j) {
    if (j == i) continue;
    const double d = distance(objects[i]->geometry, objects[j]->geometry);
    if (!best || d < best_d || (d == best_d && id_less(objects[j]->id, objects[*best]->id))) {
      best = j;
      best_d = d;
    }
  }
  return best;
}

std::vector<SquareRecord> build_square_database(std::span<const SpatialObject* const> objects,
                                                const DistanceBins& bins) {
  std::vector<std::size_t> order(objects.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return id_less(objects[l]->id, objects[r]->id); });

  std::vector<SquareRecord> records;
  records.reserve(objects.size());
  for (std::size_t i : order) {
    const SpatialObject& obj = *objects[i];
    SquareRecord rec{obj.id, obj.type, obj.size, obj.shape, {}, {}, {}, obj.population, obj.employment};
    if (auto j = nearest_other(objects, i)) {
      const SpatialObject& other = *objects[*j];
      const Point ca = centroid(obj.geometry);
      const Point cb = centroid(other.geometry);
      if (!(ca == cb)) rec.direction = DirectionRelation{compute_direction(obj, other), other.id};
      rec.position = PositionRelation{compute_position(obj, other), other.id};
      const Distance d = compute_distance(obj, other, bins);
      rec.distance = DistanceRelation{other.id, d.meters, d.bin, bins.label(d.bin)};
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string to_string(const Item& item) {
  switch (item.attribute) {
    case Attribute::Type: return "type=" + std::to_string(item.code);
    case Attribute::Size: return "size=" + std::to_string(item.code);
    case Attribute::Direction:
      return "dir=(" + std::string(to_string(static_cast<DirectionCode>(item.code))) + "," + item.target + ")";
    case Attribute::Position:
      return "pos=(" + std::string(to_string(static_cast<PositionCode>(item.code))) + "," + item.target + ")";
    case Attribute::Distance: return "dist=(" + item.target + "," + item.label + ")";
    case Attribute::Population: return "pop=" + std::string(to_string(static_cast<Level>(item.code)));
    case Attribute::Employment: return "emp=" + std::string(to_string(static_cast<Level>(item.code)));
  }
  return "?";
}

std::vector<Transaction> encode_transactions(SquarePos square, std::span<const SquareRecord> records) {
  std::vector<Transaction> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    Transaction t{square, {}};
    t.items.push_back({Attribute::Type, static_cast<int>(r.type), {}, {}});
    t.items.push_back({Attribute::Size, static_cast<int>(r.size), {}, {}});
    if (r.direction) t.items.push_back({Attribute::Direction, static_cast<int>(r.direction->code), r.direction->target, {}});
    if (r.position) t.items.push_back({Attribute::Position, static_cast<int>(r.position->code), r.position->target, {}});
    if (r.distance) {
      t.items.push_back({Attribute::Distance, static_cast<int>(r.distance->bin), r.distance->target, r.distance->label});
    }
    t.items.push_back({Attribute::Population, static_cast<int>(r.population), {}, {}});
    t.items.push_back({Attribute::Employment, static_cast<int>(r.employment), {}, {}});
    std::sort(t.items.begin(), t.items.end());
    t.items.erase(std::unique(t.items.begin(), t.items.end()), t.items.end());
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace towerplan
