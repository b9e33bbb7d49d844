#pragma once

#include <span>
#include <variant>
#include <vector>

namespace towerplan {

/// Planar point in meters, raster frame (x east, y north).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle, closed on all sides.
struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
  Point center() const { return {(min_x + max_x) / 2.0, (min_y + max_y) / 2.0}; }
  bool contains(Point p) const { return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Polyline {
  std::vector<Point> points;
};

/// Simple polygon given by its outer ring, without a repeated closing vertex.
struct Polygon {
  std::vector<Point> ring;
};

using Geometry = std::variant<Point, Polyline, Polygon>;

/// Boundary tolerance in meters: closer than this counts as touching.
inline constexpr double kTouchTolerance = 1e-6;

enum class Location { Interior, Boundary, Exterior };

/// Throws GeometryError for non-finite coordinates or degenerate shapes.
/// Polygons given with a closing vertex equal to the first are normalized.
Geometry normalized(Geometry g);

Point centroid(const Geometry& g);
Rect bounding_box(const Geometry& g);

double polygon_area(std::span<const Point> ring);
double polyline_length(std::span<const Point> points);

/// Location of p relative to a polygon, boundary within kTouchTolerance.
Location locate(Point p, const Polygon& poly);

/// Minimum Euclidean distance; 0 when the geometries intersect or one
/// contains the other. Symmetric in its arguments bit-for-bit.
double distance(const Geometry& a, const Geometry& b);

/// Every point of b lies in the closure of a.
bool covers(const Geometry& a, const Geometry& b);

/// The interiors of a and b share at least one point. Points are their own
/// interior; polylines exclude their two end points; polygons exclude the ring.
bool interiors_intersect(const Geometry& a, const Geometry& b);

/// Sutherland-Hodgman clip of a polygon against a rectangle. The output ring
/// may carry zero-width bridges for non-convex input; its area is exact.
std::vector<Point> clip_polygon(const Polygon& poly, const Rect& rect);

/// Length of the part of a polyline inside a rectangle.
double clipped_length(const Polyline& line, const Rect& rect);

/// Point-in-rectangle test used for assignment (closed rectangle).
bool point_in_rect(Point p, const Rect& rect);

}  // namespace towerplan
