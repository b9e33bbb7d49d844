#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "towerplan/error.hpp"
#include "towerplan/spatialdb.hpp"

using namespace towerplan;
using namespace towerplan::testing;

namespace {

SpatialObject pt(std::string id, double x, double y, ObjectType t = ObjectType::Peak) {
  return make_object(std::move(id), t, Point{x, y});
}

const Item* find_item(const Transaction& t, Attribute a) {
  for (const auto& i : t.items) {
    if (i.attribute == a) return &i;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("objects: validation") {
  SpatialObject o;
  o.id = "O1";
  o.type = ObjectType::Sea;
  o.shape = ShapeCode::Point;
  o.geometry = rect_polygon(0, 0, 1, 1);
  CHECK_THROWS_AS(validated(o), GeometryError);  // shape code disagrees with geometry
  o.shape = ShapeCode::Polygon;
  CHECK_NOTHROW(validated(o));
  o.type = static_cast<ObjectType>(12);
  CHECK_THROWS_AS(validated(o), GeometryError);
  o.type = ObjectType::Sea;
  o.size = static_cast<SizeCode>(0);
  CHECK_THROWS_AS(validated(o), GeometryError);
}

TEST_CASE("objects: natural id order") {
  CHECK(id_less("O2", "O10"));
  CHECK_FALSE(id_less("O10", "O2"));
  CHECK(id_less("A", "B"));
  CHECK_FALSE(id_less("O1", "O1"));
}

TEST_CASE("direction: compass sectors") {
  const auto a = pt("a", 0, 0);
  CHECK(compute_direction(a, pt("b", 0, 100)) == DirectionCode::A);
  CHECK(compute_direction(a, pt("b", 0, -100)) == DirectionCode::B);
  CHECK(compute_direction(a, pt("b", 100, 0)) == DirectionCode::C);
  CHECK(compute_direction(a, pt("b", -100, 0)) == DirectionCode::D);
  CHECK(compute_direction(a, pt("b", 100, 100)) == DirectionCode::E);
  CHECK(compute_direction(a, pt("b", -100, 100)) == DirectionCode::F);
  CHECK(compute_direction(a, pt("b", 100, -100)) == DirectionCode::G);
  CHECK(compute_direction(a, pt("b", -100, -100)) == DirectionCode::H);
  // Bearing 40 degrees clockwise from north falls in the north-east sector.
  const double rad = 40.0 * std::numbers::pi / 180.0;
  CHECK(compute_direction(a, pt("b", 1000 * std::sin(rad), 1000 * std::cos(rad))) == DirectionCode::E);
  CHECK_THROWS_AS(compute_direction(a, pt("b", 0, 0)), GeometryError);
}

TEST_CASE("direction: sector boundaries belong to the clockwise-next sector") {
  const auto a = pt("a", 0, 0);
  // tan(22.5 deg) = sqrt(2) - 1; choose b exactly on that ray as far as doubles allow.
  auto at = [&](double deg) {
    const double r = deg * std::numbers::pi / 180.0;
    return compute_direction(a, pt("b", 1000 * std::sin(r), 1000 * std::cos(r)));
  };
  CHECK(at(22.4) == DirectionCode::A);
  CHECK(at(22.6) == DirectionCode::E);
  CHECK(at(337.6) == DirectionCode::A);
  CHECK(at(337.4) == DirectionCode::F);
  CHECK(at(180.0) == DirectionCode::B);
}

TEST_CASE("direction: opposite codes") {
  CHECK(opposite(DirectionCode::A) == DirectionCode::B);
  CHECK(opposite(DirectionCode::C) == DirectionCode::D);
  CHECK(opposite(DirectionCode::E) == DirectionCode::H);
  CHECK(opposite(DirectionCode::F) == DirectionCode::G);
  for (int c = 0; c < 8; ++c) {
    const auto d = static_cast<DirectionCode>(c);
    CHECK(opposite(opposite(d)) == d);
  }
}

TEST_CASE("position: precedence and examples") {
  const auto p1 = make_object("O1", ObjectType::Sea, rect_polygon(0, 0, 10, 10));
  const auto p2 = make_object("O2", ObjectType::Lake, rect_polygon(20, 0, 30, 10));
  CHECK(compute_position(p1, p2) == PositionCode::V);
  CHECK(compute_position(p1, p1) == PositionCode::III);  // equal geometries resolve to covers
  const auto road = make_object("O3", ObjectType::Road, Polyline{{{-5, 5}, {15, 5}}});
  CHECK(compute_position(road, p1) == PositionCode::I);
  CHECK(compute_position(p1, road) == PositionCode::I);
  const auto inner = make_object("O4", ObjectType::Lake, rect_polygon(2, 2, 4, 4));
  CHECK(compute_position(p1, inner) == PositionCode::III);
  CHECK(compute_position(inner, p1) == PositionCode::IV);
  const auto neighbor = make_object("O5", ObjectType::Lake, rect_polygon(10, 0, 20, 10));
  CHECK(compute_position(p1, neighbor) == PositionCode::II);
  CHECK(compute_position(neighbor, p1) == PositionCode::II);
}

TEST_CASE("distance: bins") {
  const DistanceBins bins;
  const auto d3 = compute_distance(pt("a", 0, 0), pt("b", 3000, 0), bins);
  CHECK(d3.meters == 3000.0);
  CHECK(bins.label(d3.bin) == "<10km");
  CHECK(bins.label(compute_distance(pt("a", 0, 0), pt("b", 0, 30000), bins).bin) == "<50km");
  CHECK(bins.label(compute_distance(pt("a", 0, 0), pt("b", 0, 50000), bins).bin) == ">=50km");
  const auto t1 = make_object("O1", ObjectType::Sea, rect_polygon(0, 0, 10, 10));
  const auto t2 = make_object("O2", ObjectType::Lake, rect_polygon(10, 0, 20, 10));
  const auto touch = compute_distance(t1, t2, bins);
  CHECK(touch.meters == 0.0);
  CHECK(bins.label(touch.bin) == "<1km");
  CHECK(bins.bin(999.999) == 0);
  CHECK(bins.bin(1000.0) == 1);
  CHECK_THROWS_AS(DistanceBins(std::vector<double>{}), ConfigError);
  CHECK_THROWS_AS(DistanceBins({10.0, 5.0}), ConfigError);
}

TEST_CASE("assignment: objects land in the squares they touch with positive measure") {
  const auto g = unit_grid(5);
  const std::vector<SpatialObject> objects{
      pt("O1", 250, 250),                                                            // center of (3,3)
      make_object("O2", ObjectType::Sea, rect_polygon(10, 410, 190, 490)),           // spans (1,1)-(1,2)
      make_object("O3", ObjectType::Road, Polyline{{{0, 100}, {500, 100}}}),         // on a row boundary
      make_object("O4", ObjectType::Lake, rect_polygon(1000, 1000, 1100, 1100)),     // outside the cell
      make_object("O5", ObjectType::River, Polyline{{{150, 50}, {150, 150}}}),       // inside column 2
  };
  const auto a = assign_objects(objects, g);
  auto in = [&](SquarePos p) {
    std::vector<std::size_t> ids;
    for (const auto& po : a.per_square[g.index(p)]) ids.push_back(po.object);
    return ids;
  };
  CHECK(in({3, 3}) == std::vector<std::size_t>{0});
  CHECK(in({1, 1}) == std::vector<std::size_t>{1});
  CHECK(in({1, 2}) == std::vector<std::size_t>{1});
  CHECK(a.per_square[g.index({1, 1})][0].clipped_area_m2 == doctest::Approx(90.0 * 80.0));
  // A line exactly on the boundary between rows 4 and 5 has positive length in both.
  CHECK(in({4, 1}).size() == 1);
  CHECK(in({5, 1}).size() == 1);
  CHECK(in({5, 2}) == std::vector<std::size_t>{2, 4});
  CHECK(in({4, 2}) == std::vector<std::size_t>{2, 4});
  CHECK(a.omitted == std::vector<std::size_t>{3});
}

TEST_CASE("square database: relations target the nearest other object") {
  const auto sea = make_object("O1", ObjectType::Sea, rect_polygon(0, 0, 100, 90), SizeCode::Large, Level::Low,
                               Level::Low);
  const auto road = make_object("O2", ObjectType::Road, rect_polygon(0, 95, 100, 100), SizeCode::Medium);
  std::vector<const SpatialObject*> two{&road, &sea};
  const auto recs = build_square_database(two, DistanceBins{});
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].object_id == "O1");
  CHECK(recs[0].direction->target == "O2");
  CHECK(recs[0].direction->code == DirectionCode::A);
  CHECK(recs[1].direction->code == DirectionCode::B);
  CHECK(recs[0].position->code == PositionCode::V);
  CHECK(recs[0].distance->meters == doctest::Approx(5.0));
  CHECK(recs[1].position->target == "O1");

  CHECK(build_square_database({}, DistanceBins{}).empty());
  std::vector<const SpatialObject*> one{&sea};
  const auto lone = build_square_database(one, DistanceBins{});
  REQUIRE(lone.size() == 1);
  CHECK_FALSE(lone[0].direction.has_value());
  CHECK_FALSE(lone[0].position.has_value());
  CHECK_FALSE(lone[0].distance.has_value());

  // Coincident centroids: position and distance exist, direction does not.
  const auto lake = make_object("O3", ObjectType::Lake, rect_polygon(40, 40, 60, 50));
  const auto island = make_object("O4", ObjectType::Peak, Point{50, 45});
  std::vector<const SpatialObject*> co{&lake, &island};
  const auto cr = build_square_database(co, DistanceBins{});
  CHECK_FALSE(cr[0].direction.has_value());
  CHECK(cr[0].position->code == PositionCode::III);
}

TEST_CASE("square database: nearest neighbor matches a pairwise distance oracle") {
  std::mt19937 rng(kSeed);
  std::uniform_real_distribution<double> c(0, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = std::uniform_int_distribution<int>(2, 6)(rng);
    std::vector<SpatialObject> objs;
    for (int i = 0; i < k; ++i) objs.push_back(pt("O" + std::to_string(i + 1), c(rng), c(rng)));
    std::vector<const SpatialObject*> ptrs;
    for (const auto& o : objs) ptrs.push_back(&o);
    const auto recs = build_square_database(ptrs, DistanceBins{});
    for (int i = 0; i < k; ++i) {
      const Point p = std::get<Point>(objs[i].geometry);
      int best = -1;
      double bd = 1e300;
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        const Point q = std::get<Point>(objs[j].geometry);
        const double d = std::hypot(p.x - q.x, p.y - q.y);
        if (d < bd) {
          bd = d;
          best = j;
        }
      }
      // Records come back in natural id order, which here is input order.
      CHECK(recs[i].object_id == objs[i].id);
      CHECK(recs[i].distance->target == objs[best].id);
      CHECK(recs[i].distance->meters == doctest::Approx(bd));
      CHECK(recs[i].direction->target == objs[best].id);
    }
  }
}

TEST_CASE("transactions: encoding") {
  SquareRecord r;
  r.object_id = "O1";
  r.type = ObjectType::Sea;
  r.size = SizeCode::Large;
  r.shape = ShapeCode::Polygon;
  r.direction = DirectionRelation{DirectionCode::B, "O2"};
  r.position = PositionRelation{PositionCode::I, "O2"};
  r.population = Level::High;
  r.employment = Level::Low;
  const std::vector<SquareRecord> recs{r, r};
  const auto tx = encode_transactions({3, 3}, recs);
  REQUIRE(tx.size() == 2);
  CHECK(tx[0].items == tx[1].items);  // duplicates survive for support counting
  CHECK(tx[0].square == SquarePos{3, 3});
  // type, size, dir, pos + population, employment; no distance, no shape.
  REQUIRE(tx[0].items.size() == 6);
  std::vector<std::string> text;
  for (const auto& i : tx[0].items) text.push_back(to_string(i));
  CHECK(text == std::vector<std::string>{"type=4", "size=1", "dir=(B,O2)", "pos=(I,O2)", "pop=high", "emp=low"});
  CHECK(std::is_sorted(tx[0].items.begin(), tx[0].items.end()));
  CHECK(encode_transactions({1, 1}, {}).empty());

  SquareRecord lone;
  lone.object_id = "O9";
  CHECK(encode_transactions({1, 1}, std::vector<SquareRecord>{lone})[0].items.size() == 4);
}

TEST_CASE("transactions: every item comes from exactly one record field") {
  GeometryGen gen(kSeed + 1, 500.0);
  std::mt19937& rng = gen.rng();
  for (int trial = 0; trial < 100; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<SpatialObject> objs;
    for (int i = 0; i < k; ++i) {
      const auto type = static_cast<ObjectType>(std::uniform_int_distribution<int>(1, 11)(rng));
      objs.push_back(make_object("O" + std::to_string(i + 1), type, gen.any()));
    }
    std::vector<const SpatialObject*> ptrs;
    for (const auto& o : objs) ptrs.push_back(&o);
    const auto recs = build_square_database(ptrs, DistanceBins{});
    const auto tx = encode_transactions({1, 1}, recs);
    REQUIRE(tx.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& rec = recs[i];
      std::size_t expected = 4 + rec.direction.has_value() + rec.position.has_value() + rec.distance.has_value();
      CHECK(tx[i].items.size() == expected);
      CHECK(find_item(tx[i], Attribute::Type)->code == static_cast<int>(rec.type));
      CHECK(find_item(tx[i], Attribute::Size)->code == static_cast<int>(rec.size));
      if (rec.distance) {
        CHECK(find_item(tx[i], Attribute::Distance)->target == rec.distance->target);
        CHECK(find_item(tx[i], Attribute::Distance)->label == rec.distance->label);
      }
      if (rec.direction) CHECK(find_item(tx[i], Attribute::Direction)->code == static_cast<int>(rec.direction->code));
    }
  }
}
