#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "towerplan/error.hpp"
#include "towerplan/geometry.hpp"

using namespace towerplan;
using namespace towerplan::testing;

TEST_CASE("geometry: normalization rejects degenerate shapes") {
  CHECK_THROWS_AS(normalized(Point{std::numeric_limits<double>::quiet_NaN(), 0}), GeometryError);
  CHECK_THROWS_AS(normalized(Polyline{{{0, 0}}}), GeometryError);
  CHECK_THROWS_AS(normalized(Polygon{{{0, 0}, {1, 0}}}), GeometryError);
  CHECK_THROWS_AS(normalized(Polygon{{{0, 0}, {1, 0}, {2, 0}}}), GeometryError);  // zero area
  const auto closed = std::get<Polygon>(normalized(Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 0}}}));
  CHECK(closed.ring.size() == 3);
}

TEST_CASE("geometry: measures and centroids") {
  const auto sq = rect_polygon(0, 0, 4, 2);
  CHECK(std::abs(polygon_area(sq.ring)) == doctest::Approx(8.0));
  CHECK(centroid(sq) == Point{2, 1});
  CHECK(bounding_box(sq) == Rect{0, 0, 4, 2});
  CHECK(polyline_length(std::vector<Point>{{0, 0}, {3, 4}, {3, 10}}) == doctest::Approx(11.0));
  // L-shape: centroid is area-weighted, not the vertex mean.
  const Polygon ell{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
  const Point c = centroid(ell);
  CHECK(c.x == doctest::Approx(5.0 / 6.0));
  CHECK(c.y == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("geometry: point location in a polygon") {
  const auto sq = rect_polygon(0, 0, 10, 10);
  CHECK(locate({5, 5}, sq) == Location::Interior);
  CHECK(locate({10, 5}, sq) == Location::Boundary);
  CHECK(locate({10 + 1e-8, 5}, sq) == Location::Boundary);
  CHECK(locate({11, 5}, sq) == Location::Exterior);
}

TEST_CASE("geometry: relations agree with an independent box oracle") {
  // Integer boxes make every relation exact, including touching edges.
  std::mt19937 rng(kSeed);
  std::uniform_int_distribution<int> c(0, 12);
  int touching_only = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    auto box = [&] {
      int x0 = c(rng), x1 = c(rng), y0 = c(rng), y1 = c(rng);
      if (x0 > x1) std::swap(x0, x1);
      if (y0 > y1) std::swap(y0, y1);
      return Rect{double(x0), double(y0), double(x1 + 1), double(y1 + 1)};
    };
    const Rect ra = box();
    const Rect rb = box();
    const Geometry a = rect_polygon(ra);
    const Geometry b = rect_polygon(rb);
    const auto want = box_relation(ra, rb);
    INFO("a=", ra.min_x, ",", ra.min_y, ",", ra.max_x, ",", ra.max_y, " b=", rb.min_x, ",", rb.min_y, ",",
         rb.max_x, ",", rb.max_y);
    CHECK(covers(a, b) == want.a_covers_b);
    CHECK(covers(b, a) == want.b_covers_a);
    CHECK(interiors_intersect(a, b) == want.interiors);
    CHECK(distance(a, b) == doctest::Approx(want.gap));
    if (want.touching && !want.interiors) ++touching_only;
  }
  CHECK(touching_only > 0);  // the generator does exercise the meet case
}

TEST_CASE("geometry: mixed-dimension relations") {
  const Geometry sea = rect_polygon(0, 0, 10, 10);
  SUBCASE("point") {
    CHECK(covers(sea, Point{5, 5}));
    CHECK(covers(sea, Point{10, 5}));
    CHECK(interiors_intersect(sea, Point{5, 5}));
    CHECK_FALSE(interiors_intersect(sea, Point{10, 5}));
    CHECK(distance(sea, Point{13, 14}) == doctest::Approx(5.0));
  }
  SUBCASE("polyline crossing the polygon") {
    const Geometry road = Polyline{{{-5, 5}, {15, 5}}};
    CHECK_FALSE(covers(sea, road));
    CHECK_FALSE(covers(road, sea));
    CHECK(interiors_intersect(sea, road));
    CHECK(distance(sea, road) == 0.0);
  }
  SUBCASE("polyline along an edge") {
    const Geometry shore = Polyline{{{0, 10}, {10, 10}}};
    CHECK(covers(sea, shore));
    CHECK_FALSE(interiors_intersect(sea, shore));
  }
  SUBCASE("polyline inside a non-convex polygon's notch") {
    const Geometry ell = Polygon{{{0, 0}, {10, 0}, {10, 4}, {4, 4}, {4, 10}, {0, 10}}};
    CHECK_FALSE(covers(ell, Polyline{{{2, 8}, {8, 8}}}));  // leaves through the notch
    CHECK(covers(ell, Polyline{{{2, 8}, {2, 2}, {8, 2}}}));
  }
  SUBCASE("polylines") {
    const Geometry l1 = Polyline{{{0, 0}, {10, 0}}};
    CHECK(covers(l1, Polyline{{{2, 0}, {5, 0}}}));
    CHECK(interiors_intersect(l1, Polyline{{{5, -5}, {5, 5}}}));
    CHECK_FALSE(interiors_intersect(l1, Polyline{{{10, 0}, {10, 5}}}));  // end point only
    CHECK(distance(l1, Polyline{{{10, 0}, {10, 5}}}) == 0.0);
    CHECK(covers(l1, Point{3, 0}));
    CHECK_FALSE(interiors_intersect(l1, Point{0, 0}));
  }
}

TEST_CASE("geometry: distance is symmetric bit for bit") {
  GeometryGen gen(kSeed);
  for (int i = 0; i < 2000; ++i) {
    const Geometry a = normalized(gen.any());
    const Geometry b = normalized(gen.any());
    const double ab = distance(a, b);
    CHECK(ab == distance(b, a));
    CHECK(ab >= 0.0);
    // Zero distance iff the closed geometries share a point.
    if (ab == 0.0) CHECK((covers(a, b) || covers(b, a) || interiors_intersect(a, b) || ab < kTouchTolerance));
  }
}

TEST_CASE("geometry: polygon clipping keeps the exact overlap area") {
  const Rect window{0, 0, 10, 10};
  CHECK(std::abs(polygon_area(clip_polygon(rect_polygon(5, 5, 20, 20), window))) == doctest::Approx(25.0));
  CHECK(clip_polygon(rect_polygon(20, 20, 30, 30), window).empty());
  // Non-convex U straddling the window: the two prongs are 2x4 each, the base 10x2.
  const Polygon u{{{0, -2}, {10, -2}, {10, 4}, {8, 4}, {8, 0}, {2, 0}, {2, 4}, {0, 4}}};
  CHECK(std::abs(polygon_area(clip_polygon(u, window))) == doctest::Approx(16.0));

  std::mt19937 rng(kSeed);
  std::uniform_real_distribution<double> d(-5, 15);
  for (int i = 0; i < 300; ++i) {
    double x0 = d(rng), x1 = d(rng), y0 = d(rng), y1 = d(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    const double want = std::max(0.0, std::min(x1, 10.0) - std::max(x0, 0.0)) *
                        std::max(0.0, std::min(y1, 10.0) - std::max(y0, 0.0));
    CHECK(std::abs(polygon_area(clip_polygon(rect_polygon(x0, y0, x1, y1), window))) ==
          doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("geometry: polyline clipping") {
  const Rect window{0, 0, 10, 10};
  CHECK(clipped_length(Polyline{{{-5, 5}, {15, 5}}}, window) == doctest::Approx(10.0));
  CHECK(clipped_length(Polyline{{{-5, -5}, {15, 15}}}, window) == doctest::Approx(std::sqrt(200.0)));
  CHECK(clipped_length(Polyline{{{20, 5}, {30, 5}}}, window) == 0.0);
  CHECK(clipped_length(Polyline{{{2, 2}, {4, 2}, {4, 20}}}, window) == doctest::Approx(2.0 + 8.0));
}
