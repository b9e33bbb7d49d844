#pragma once

// Shared generators and independent oracles for the test binaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "towerplan/geometry.hpp"
#include "towerplan/grid.hpp"
#include "towerplan/miner.hpp"
#include "towerplan/raster.hpp"
#include "towerplan/spatialdb.hpp"

namespace towerplan::testing {

inline constexpr std::uint32_t kSeed = 20240611u;

inline Polygon rect_polygon(double x0, double y0, double x1, double y1) {
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

inline Polygon rect_polygon(const Rect& r) { return rect_polygon(r.min_x, r.min_y, r.max_x, r.max_y); }

inline SpatialObject make_object(std::string id, ObjectType type, Geometry g, SizeCode size = SizeCode::Large,
                                 Level pop = Level::Medium, Level emp = Level::Medium) {
  SpatialObject o;
  o.id = std::move(id);
  o.type = type;
  o.size = size;
  o.shape = static_cast<ShapeCode>(g.index() + 1);
  o.geometry = std::move(g);
  o.population = pop;
  o.employment = emp;
  return validated(std::move(o));
}

/// Flat raster of the given shape anchored at the origin.
inline ElevationRaster flat_raster(int ncols, int nrows, double cell_size, double value = 0.0) {
  ElevationRaster r;
  r.ncols = ncols;
  r.nrows = nrows;
  r.cell_size_m = cell_size;
  r.values.assign(static_cast<std::size_t>(ncols) * nrows, value);
  return r;
}

inline InternalGrid unit_grid(int n, double side = 100.0) {
  return InternalGrid(CellId{0, 0}, Rect{0, 0, n * side, n * side}, n, side);
}

// ---- random geometry -------------------------------------------------------

class GeometryGen {
 public:
  explicit GeometryGen(std::uint32_t seed, double extent = 1000.0) : rng_(seed), extent_(extent) {}

  double coord() { return std::uniform_real_distribution<double>(0.0, extent_)(rng_); }

  Point point() { return {coord(), coord()}; }

  Polyline polyline() {
    const int k = std::uniform_int_distribution<int>(2, 5)(rng_);
    Polyline l;
    while (static_cast<int>(l.points.size()) < k) {
      Point p = point();
      if (l.points.empty() || std::hypot(p.x - l.points.back().x, p.y - l.points.back().y) > 1.0) l.points.push_back(p);
    }
    return l;
  }

  /// Star-shaped simple polygon around a random center (possibly non-convex).
  Polygon polygon() {
    const Point c = point();
    const int k = std::uniform_int_distribution<int>(3, 8)(rng_);
    std::vector<double> angles;
    for (int i = 0; i < k; ++i) angles.push_back(std::uniform_real_distribution<double>(0.0, 2 * std::numbers::pi)(rng_));
    std::sort(angles.begin(), angles.end());
    Polygon p;
    for (double a : angles) {
      const double r = std::uniform_real_distribution<double>(20.0, extent_ / 3)(rng_);
      p.ring.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
    }
    if (std::abs(polygon_area(p.ring)) < 10.0) return rect_polygon(c.x, c.y, c.x + 50, c.y + 50);
    return p;
  }

  Polygon box() {
    double x0 = coord(), x1 = coord(), y0 = coord(), y1 = coord();
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    return rect_polygon(x0, y0, x1 + 1.0, y1 + 1.0);
  }

  Geometry any() {
    switch (std::uniform_int_distribution<int>(0, 3)(rng_)) {
      case 0: return point();
      case 1: return polyline();
      case 2: return polygon();
      default: return box();
    }
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  double extent_;
};

// ---- random transactions ---------------------------------------------------

struct TransactionCase {
  std::vector<Itemset> transactions;
  double minsup = 0.5;
};

inline TransactionCase random_transactions(std::mt19937& rng, std::size_t max_items = 12,
                                           std::size_t max_transactions = 64) {
  TransactionCase c;
  const auto items = std::uniform_int_distribution<std::size_t>(1, max_items)(rng);
  const auto count = std::uniform_int_distribution<std::size_t>(1, max_transactions)(rng);
  const double density = std::uniform_real_distribution<double>(0.1, 0.8)(rng);
  std::bernoulli_distribution in(density);
  for (std::size_t t = 0; t < count; ++t) {
    Itemset row;
    for (ItemId i = 0; i < items; ++i) {
      if (in(rng)) row.push_back(i);
    }
    std::shuffle(row.begin(), row.end(), rng);  // apriori must not rely on sorted input
    c.transactions.push_back(std::move(row));
  }
  c.minsup = std::uniform_int_distribution<int>(1, 9)(rng) / 10.0;
  return c;
}

// ---- independent oracles ---------------------------------------------------

/// Frequent itemsets by direct counting over every subset of the universe,
/// with the support test done in integers: count * 10 >= tenths * total.
inline std::set<std::pair<Itemset, std::uint64_t>> oracle_frequent(const std::vector<Itemset>& transactions,
                                                                    int minsup_tenths) {
  std::set<ItemId> universe;
  for (const auto& t : transactions) universe.insert(t.begin(), t.end());
  const std::vector<ItemId> u(universe.begin(), universe.end());
  std::set<std::pair<Itemset, std::uint64_t>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << u.size()); ++mask) {
    Itemset s;
    for (std::size_t b = 0; b < u.size(); ++b) {
      if (mask >> b & 1u) s.push_back(u[b]);
    }
    std::uint64_t count = 0;
    for (const auto& t : transactions) {
      const std::set<ItemId> ts(t.begin(), t.end());
      if (std::all_of(s.begin(), s.end(), [&](ItemId i) { return ts.count(i) > 0; })) ++count;
    }
    if (count * 10 >= static_cast<std::uint64_t>(minsup_tenths) * transactions.size()) out.insert({s, count});
  }
  return out;
}

/// Relation oracle for axis-aligned boxes with integer coordinates.
struct BoxRelation {
  bool a_covers_b;
  bool b_covers_a;
  bool interiors;
  bool touching;  // closed boxes intersect
  double gap;
};

inline BoxRelation box_relation(const Rect& a, const Rect& b) {
  BoxRelation r{};
  r.a_covers_b = a.min_x <= b.min_x && a.min_y <= b.min_y && a.max_x >= b.max_x && a.max_y >= b.max_y;
  r.b_covers_a = b.min_x <= a.min_x && b.min_y <= a.min_y && b.max_x >= a.max_x && b.max_y >= a.max_y;
  r.interiors = a.min_x < b.max_x && b.min_x < a.max_x && a.min_y < b.max_y && b.min_y < a.max_y;
  r.touching = a.min_x <= b.max_x && b.min_x <= a.max_x && a.min_y <= b.max_y && b.min_y <= a.max_y;
  const double dx = std::max({0.0, a.min_x - b.max_x, b.min_x - a.max_x});
  const double dy = std::max({0.0, a.min_y - b.max_y, b.min_y - a.max_y});
  r.gap = std::hypot(dx, dy);
  return r;
}

/// Footprint size by brute force: squares within Chebyshev distance 1.
inline std::size_t oracle_footprint(SquarePos c, int n) {
  std::size_t k = 0;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (std::abs(x - c.x) <= 1 && std::abs(y - c.y) <= 1) ++k;
    }
  }
  return k;
}

inline std::vector<SquarePos> border_squares(int n) {
  std::vector<SquarePos> out;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (x == 1 || y == 1 || x == n || y == n) out.push_back({x, y});
    }
  }
  return out;
}

inline std::size_t oracle_union(const std::vector<SquarePos>& centers, int n) {
  std::size_t k = 0;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      for (SquarePos c : centers) {
        if (std::abs(x - c.x) <= 1 && std::abs(y - c.y) <= 1) {
          ++k;
          break;
        }
      }
    }
  }
  return k;
}

}  // namespace towerplan::testing
