#include "towerplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "towerplan/error.hpp"

namespace towerplan {

namespace {

struct Segment {
  Point a;
  Point b;
};

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double point_segment_distance(Point p, const Segment& s) {
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return dist(p, s.a);
  const double t = std::clamp(((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2, 0.0, 1.0);
  return dist(p, {s.a.x + t * dx, s.a.y + t * dy});
}

bool on_box(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Segment& s, const Segment& t) {
  const double d1 = cross(t.a, t.b, s.a);
  const double d2 = cross(t.a, t.b, s.b);
  const double d3 = cross(s.a, s.b, t.a);
  const double d4 = cross(s.a, s.b, t.b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_box(t.a, t.b, s.a)) return true;
  if (d2 == 0 && on_box(t.a, t.b, s.b)) return true;
  if (d3 == 0 && on_box(s.a, s.b, t.a)) return true;
  if (d4 == 0 && on_box(s.a, s.b, t.b)) return true;
  return false;
}

double segment_distance(const Segment& s, const Segment& t) {
  if (segments_intersect(s, t)) return 0.0;
  return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t), point_segment_distance(t.a, s),
                   point_segment_distance(t.b, s)});
}

std::vector<Segment> segments_of(const Geometry& g) {
  std::vector<Segment> out;
  if (const auto* p = std::get_if<Point>(&g)) {
    out.push_back({*p, *p});
  } else if (const auto* l = std::get_if<Polyline>(&g)) {
    for (std::size_t i = 0; i + 1 < l->points.size(); ++i) out.push_back({l->points[i], l->points[i + 1]});
  } else {
    const auto& ring = std::get<Polygon>(g).ring;
    for (std::size_t i = 0; i < ring.size(); ++i) out.push_back({ring[i], ring[(i + 1) % ring.size()]});
  }
  return out;
}

Point first_vertex(const Geometry& g) {
  if (const auto* p = std::get_if<Point>(&g)) return *p;
  if (const auto* l = std::get_if<Polyline>(&g)) return l->points.front();
  return std::get<Polygon>(g).ring.front();
}

int dimension(const Geometry& g) { return static_cast<int>(g.index()); }

/// Midpoints of the pieces of s obtained by cutting it wherever it meets one
/// of the other segments (crossings plus vertices lying on s).
std::vector<Point> piece_midpoints(const Segment& s, const std::vector<Segment>& others) {
  const double dx = s.b.x - s.a.x;
  const double dy = s.b.y - s.a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return {s.a};

  std::vector<double> params{0.0, 1.0};
  auto add_projection = [&](Point p) {
    if (point_segment_distance(p, s) < kTouchTolerance) {
      params.push_back(std::clamp(((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2, 0.0, 1.0));
    }
  };
  for (const auto& o : others) {
    add_projection(o.a);
    add_projection(o.b);
    const double ex = o.b.x - o.a.x;
    const double ey = o.b.y - o.a.y;
    const double denom = dx * ey - dy * ex;
    if (denom == 0.0) continue;
    const double t = ((o.a.x - s.a.x) * ey - (o.a.y - s.a.y) * ex) / denom;
    const double u = ((o.a.x - s.a.x) * dy - (o.a.y - s.a.y) * dx) / denom;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) params.push_back(t);
  }
  std::sort(params.begin(), params.end());

  std::vector<Point> mids;
  const double len = std::sqrt(len2);
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    if ((params[i + 1] - params[i]) * len <= 1e-9) continue;
    const double m = (params[i] + params[i + 1]) / 2.0;
    mids.push_back({s.a.x + m * dx, s.a.y + m * dy});
  }
  return mids;
}

double distance_to_segments(Point p, const std::vector<Segment>& segs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segs) best = std::min(best, point_segment_distance(p, s));
  return best;
}

bool is_line_endpoint(const Polyline& line, Point p) {
  if (line.points.front() == line.points.back()) return false;
  return dist(p, line.points.front()) < kTouchTolerance || dist(p, line.points.back()) < kTouchTolerance;
}

bool line_covers(const Polyline& line, const Geometry& b) {
  const auto segs = segments_of(line);
  if (const auto* p = std::get_if<Point>(&b)) return distance_to_segments(*p, segs) < kTouchTolerance;
  if (!std::holds_alternative<Polyline>(b)) return false;
  for (const auto& s : segments_of(b)) {
    if (distance_to_segments(s.a, segs) >= kTouchTolerance || distance_to_segments(s.b, segs) >= kTouchTolerance) {
      return false;
    }
    for (Point m : piece_midpoints(s, segs)) {
      if (distance_to_segments(m, segs) >= kTouchTolerance) return false;
    }
  }
  return true;
}

bool polygon_covers(const Polygon& poly, const Geometry& b) {
  if (const auto* p = std::get_if<Point>(&b)) return locate(*p, poly) != Location::Exterior;
  const auto edges = segments_of(poly);
  for (const auto& s : segments_of(b)) {
    if (locate(s.a, poly) == Location::Exterior || locate(s.b, poly) == Location::Exterior) return false;
    for (Point m : piece_midpoints(s, edges)) {
      if (locate(m, poly) == Location::Exterior) return false;
    }
  }
  return true;
}

bool some_piece_inside(const Geometry& pieces_of, const Polygon& poly) {
  const auto edges = segments_of(poly);
  for (const auto& s : segments_of(pieces_of)) {
    for (Point m : piece_midpoints(s, edges)) {
      if (locate(m, poly) == Location::Interior) return true;
    }
  }
  return false;
}

bool line_interiors_meet(const Polyline& a, const Polyline& b) {
  for (const auto& s : segments_of(a)) {
    for (const auto& t : segments_of(b)) {
      const double dx = s.b.x - s.a.x;
      const double dy = s.b.y - s.a.y;
      const double ex = t.b.x - t.a.x;
      const double ey = t.b.y - t.a.y;
      const double denom = dx * ey - dy * ex;
      const double slen = std::hypot(dx, dy);
      if (denom != 0.0 && std::abs(denom) > 1e-12 * slen * std::hypot(ex, ey)) {
        const double tp = ((t.a.x - s.a.x) * ey - (t.a.y - s.a.y) * ex) / denom;
        const double up = ((t.a.x - s.a.x) * dy - (t.a.y - s.a.y) * dx) / denom;
        if (tp < 0.0 || tp > 1.0 || up < 0.0 || up > 1.0) continue;
        const Point x{s.a.x + tp * dx, s.a.y + tp * dy};
        if (!is_line_endpoint(a, x) && !is_line_endpoint(b, x)) return true;
        continue;
      }
      // Parallel: only collinear overlap of positive length counts.
      if (std::abs(cross(s.a, s.b, t.a)) / slen >= kTouchTolerance) continue;
      const double ta = ((t.a.x - s.a.x) * dx + (t.a.y - s.a.y) * dy) / (slen * slen);
      const double tb = ((t.b.x - s.a.x) * dx + (t.b.y - s.a.y) * dy) / (slen * slen);
      const double lo = std::max(0.0, std::min(ta, tb));
      const double hi = std::min(1.0, std::max(ta, tb));
      if ((hi - lo) * slen > kTouchTolerance) return true;
    }
  }
  return false;
}

}  // namespace

Geometry normalized(Geometry g) {
  auto check_finite = [](const std::vector<Point>& pts) {
    for (Point p : pts) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GeometryError("non-finite coordinate");
    }
  };
  auto dedup = [](std::vector<Point>& pts) { pts.erase(std::unique(pts.begin(), pts.end()), pts.end()); };

  if (auto* p = std::get_if<Point>(&g)) {
    check_finite({*p});
  } else if (auto* l = std::get_if<Polyline>(&g)) {
    check_finite(l->points);
    dedup(l->points);
    if (l->points.size() < 2) throw GeometryError("polyline needs at least two distinct points");
  } else {
    auto& ring = std::get<Polygon>(g).ring;
    check_finite(ring);
    dedup(ring);
    if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    if (ring.size() < 3) throw GeometryError("polygon needs at least three distinct vertices");
    if (polygon_area(ring) == 0.0) throw GeometryError("polygon has zero area");
  }
  return g;
}

double polygon_area(std::span<const Point> ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % ring.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

double polyline_length(std::span<const Point> points) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) len += dist(points[i], points[i + 1]);
  return len;
}

Point centroid(const Geometry& g) {
  if (const auto* p = std::get_if<Point>(&g)) return *p;
  if (const auto* l = std::get_if<Polyline>(&g)) {
    double total = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t i = 0; i + 1 < l->points.size(); ++i) {
      const Point a = l->points[i];
      const Point b = l->points[i + 1];
      const double len = dist(a, b);
      total += len;
      cx += len * (a.x + b.x) / 2.0;
      cy += len * (a.y + b.y) / 2.0;
    }
    return {cx / total, cy / total};
  }
  const auto& ring = std::get<Polygon>(g).ring;
  // Shoelace centroid relative to the first vertex for conditioning.
  const Point o = ring.front();
  double a2 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point a{ring[i].x - o.x, ring[i].y - o.y};
    const Point b{ring[(i + 1) % ring.size()].x - o.x, ring[(i + 1) % ring.size()].y - o.y};
    const double c = a.x * b.y - b.x * a.y;
    a2 += c;
    cx += (a.x + b.x) * c;
    cy += (a.y + b.y) * c;
  }
  return {o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2)};
}

Rect bounding_box(const Geometry& g) {
  Rect r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : segments_of(g)) {
    for (Point p : {s.a, s.b}) {
      r.min_x = std::min(r.min_x, p.x);
      r.min_y = std::min(r.min_y, p.y);
      r.max_x = std::max(r.max_x, p.x);
      r.max_y = std::max(r.max_y, p.y);
    }
  }
  return r;
}

Location locate(Point p, const Polygon& poly) {
  const auto& ring = poly.ring;
  bool inside = false;
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point a = ring[j];
    const Point b = ring[i];
    nearest = std::min(nearest, point_segment_distance(p, {a, b}));
    if ((b.y > p.y) != (a.y > p.y)) {
      const double x_at = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < x_at) inside = !inside;
    }
  }
  if (nearest < kTouchTolerance) return Location::Boundary;
  return inside ? Location::Interior : Location::Exterior;
}

double distance(const Geometry& a, const Geometry& b) {
  if (const auto* pa = std::get_if<Polygon>(&a); pa && locate(first_vertex(b), *pa) != Location::Exterior) return 0.0;
  if (const auto* pb = std::get_if<Polygon>(&b); pb && locate(first_vertex(a), *pb) != Location::Exterior) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segments_of(a)) {
    for (const auto& t : segments_of(b)) {
      best = std::min(best, segment_distance(s, t));
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

bool covers(const Geometry& a, const Geometry& b) {
  if (const auto* p = std::get_if<Point>(&a)) {
    const auto* q = std::get_if<Point>(&b);
    return q != nullptr && dist(*p, *q) < kTouchTolerance;
  }
  if (const auto* l = std::get_if<Polyline>(&a)) return line_covers(*l, b);
  return polygon_covers(std::get<Polygon>(a), b);
}

bool interiors_intersect(const Geometry& a, const Geometry& b) {
  if (dimension(a) > dimension(b)) return interiors_intersect(b, a);
  if (const auto* p = std::get_if<Point>(&a)) {
    if (const auto* q = std::get_if<Point>(&b)) return dist(*p, *q) < kTouchTolerance;
    if (const auto* l = std::get_if<Polyline>(&b)) {
      return distance_to_segments(*p, segments_of(b)) < kTouchTolerance && !is_line_endpoint(*l, *p);
    }
    return locate(*p, std::get<Polygon>(b)) == Location::Interior;
  }
  if (const auto* l = std::get_if<Polyline>(&a)) {
    if (const auto* m = std::get_if<Polyline>(&b)) return line_interiors_meet(*l, *m);
    return some_piece_inside(a, std::get<Polygon>(b));
  }
  // Two simple polygons whose interiors meet either have a boundary piece
  // inside the other, or enclose the same region.
  return some_piece_inside(a, std::get<Polygon>(b)) || some_piece_inside(b, std::get<Polygon>(a)) ||
         (covers(a, b) && covers(b, a));
}

std::vector<Point> clip_polygon(const Polygon& poly, const Rect& rect) {
  std::vector<Point> out = poly.ring;
  auto clip_edge = [&](auto inside, auto intersect) {
    if (out.empty()) return;
    std::vector<Point> in = std::move(out);
    out.clear();
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Point cur = in[i];
      const Point prev = in[(i + in.size() - 1) % in.size()];
      const bool cur_in = inside(cur);
      const bool prev_in = inside(prev);
      if (cur_in) {
        if (!prev_in) out.push_back(intersect(prev, cur));
        out.push_back(cur);
      } else if (prev_in) {
        out.push_back(intersect(prev, cur));
      }
    }
  };
  auto at_x = [](double x) {
    return [x](Point a, Point b) { return Point{x, a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x)}; };
  };
  auto at_y = [](double y) {
    return [y](Point a, Point b) { return Point{a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y), y}; };
  };
  clip_edge([&](Point p) { return p.x >= rect.min_x; }, at_x(rect.min_x));
  clip_edge([&](Point p) { return p.x <= rect.max_x; }, at_x(rect.max_x));
  clip_edge([&](Point p) { return p.y >= rect.min_y; }, at_y(rect.min_y));
  clip_edge([&](Point p) { return p.y <= rect.max_y; }, at_y(rect.max_y));
  return out;
}

double clipped_length(const Polyline& line, const Rect& rect) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
    const Point a = line.points[i];
    const Point b = line.points[i + 1];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    double t0 = 0.0;
    double t1 = 1.0;
    bool visible = true;
    // Liang-Barsky against the four slabs.
    for (auto [p, q] : {std::pair{-dx, a.x - rect.min_x}, std::pair{dx, rect.max_x - a.x},
                        std::pair{-dy, a.y - rect.min_y}, std::pair{dy, rect.max_y - a.y}}) {
      if (p == 0.0) {
        if (q < 0.0) visible = false;
        continue;
      }
      const double r = q / p;
      if (p < 0.0) {
        t0 = std::max(t0, r);
      } else {
        t1 = std::min(t1, r);
      }
    }
    if (visible && t1 > t0) total += (t1 - t0) * std::hypot(dx, dy);
  }
  return total;
}

bool point_in_rect(Point p, const Rect& rect) { return rect.contains(p); }

}  // namespace towerplan
