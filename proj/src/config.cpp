#include "towerplan/config.hpp"

#include <fstream>
#include <set>

#include "towerplan/error.hpp"

namespace towerplan {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + " file " + path.string() + ": " + e.what());
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config field '" + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config field '" + key + "' must be an integer");
  return v.get<int>();
}

Point parse_point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(where + ": coordinate must be [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Geometry parse_geometry(const json& g, const std::string& where) {
  if (!g.is_object() || !g.contains("kind") || !g.contains("coords")) {
    throw ConfigError(where + ": geometry needs 'kind' and 'coords'");
  }
  const std::string kind = g["kind"].get<std::string>();
  const json& c = g["coords"];
  if (kind == "point") {
    // Accept both [x, y] and [[x, y]].
    if (c.is_array() && c.size() == 1 && c[0].is_array()) return parse_point(c[0], where);
    return parse_point(c, where);
  }
  if (!c.is_array()) throw ConfigError(where + ": coords must be an array of [x, y]");
  std::vector<Point> pts;
  for (const auto& p : c) pts.push_back(parse_point(p, where));
  if (kind == "polyline" || kind == "line") return Polyline{std::move(pts)};
  if (kind == "polygon") return Polygon{std::move(pts)};
  throw ConfigError(where + ": unknown geometry kind '" + kind + "'");
}

}  // namespace

void PlanConfig::validate() const {
  if (!(cell_side_m > 0)) throw ConfigError("cell_side_m must be positive");
  if (!(antenna_radius_m > 0)) throw ConfigError("antenna_radius_m must be positive");
  if (square_side_m && !(*square_side_m > 0)) throw ConfigError("square_side_m must be positive");
  if (!(minsup > 0 && minsup <= 1)) throw ConfigError("minsup must lie in (0, 1]");
  if (!(minconf > 0 && minconf <= 1)) throw ConfigError("minconf must lie in (0, 1]");
  if (threshold < 0) throw ConfigError("threshold must be non-negative");
  if (jobs && *jobs < 1) throw ConfigError("jobs must be at least 1");
  suitability.validate();
}

PlanConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> kKnown{
      "raster",        "objects",         "cell_side_m",  "antenna_radius_m", "square_side_m", "minsup",
      "minconf",       "threshold",       "suitability",  "empty_default",    "terrain_percent",
      "point_weight",  "line_weight",     "distance_bins_m", "out",           "svg",           "jobs"};
  for (const auto& [key, _] : doc.items()) {
    if (!kKnown.count(key)) throw ConfigError("unknown config field '" + key + "'");
  }

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  PlanConfig cfg;
  if (doc.contains("raster")) {
    cfg.raster = doc["raster"].get<std::string>();
    cfg.raster_path = resolve(cfg.raster);
  }
  if (doc.contains("objects")) {
    cfg.objects = doc["objects"].get<std::string>();
    cfg.objects_path = resolve(cfg.objects);
  }
  if (doc.contains("cell_side_m")) cfg.cell_side_m = number(doc["cell_side_m"], "cell_side_m");
  if (doc.contains("antenna_radius_m")) cfg.antenna_radius_m = number(doc["antenna_radius_m"], "antenna_radius_m");
  if (doc.contains("square_side_m") && !doc["square_side_m"].is_null()) {
    cfg.square_side_m = number(doc["square_side_m"], "square_side_m");
  }
  if (doc.contains("minsup")) cfg.minsup = number(doc["minsup"], "minsup");
  if (doc.contains("minconf")) cfg.minconf = number(doc["minconf"], "minconf");
  if (doc.contains("threshold")) cfg.threshold = integer(doc["threshold"], "threshold");
  if (doc.contains("suitability")) {
    const json& s = doc["suitability"];
    if (!s.is_object()) throw ConfigError("suitability must map type codes to percents");
    for (const auto& [key, v] : s.items()) {
      int code = 0;
      try {
        code = std::stoi(key);
      } catch (const std::exception&) {
        throw ConfigError("suitability key '" + key + "' is not a type code");
      }
      if (code < 1 || code > kObjectTypeCount || std::to_string(code) != key) {
        throw ConfigError("suitability key '" + key + "' is not a type code 1..11");
      }
      cfg.suitability.percent[static_cast<std::size_t>(code) - 1] = integer(v, "suitability." + key);
    }
  }
  if (doc.contains("empty_default")) cfg.suitability.empty_default = integer(doc["empty_default"], "empty_default");
  if (doc.contains("terrain_percent")) {
    cfg.suitability.terrain_percent = integer(doc["terrain_percent"], "terrain_percent");
  }
  if (doc.contains("point_weight")) cfg.suitability.point_weight = number(doc["point_weight"], "point_weight");
  if (doc.contains("line_weight")) cfg.suitability.line_weight = number(doc["line_weight"], "line_weight");
  if (doc.contains("distance_bins_m")) {
    std::vector<double> bins;
    for (const auto& v : doc["distance_bins_m"]) bins.push_back(number(v, "distance_bins_m"));
    cfg.distance_bins = DistanceBins(std::move(bins));
  }
  if (doc.contains("out")) cfg.out_path = resolve(doc["out"].get<std::string>());
  if (doc.contains("svg")) cfg.svg_path = resolve(doc["svg"].get<std::string>());
  if (doc.contains("jobs")) cfg.jobs = integer(doc["jobs"], "jobs");
  return cfg;
}

PlanConfig load_config(const std::filesystem::path& path) {
  try {
    return parse_config(read_json(path, "config"), path.parent_path());
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
}

std::vector<SpatialObject> parse_objects(const json& doc) {
  if (!doc.is_array()) throw ConfigError("objects file must hold a JSON array");
  std::vector<SpatialObject> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    std::string where = "objects[" + std::to_string(i) + "]";
    try {
      SpatialObject obj;
      obj.id = e.at("id").get<std::string>();
      where += " (" + obj.id + ")";
      if (!ids.insert(obj.id).second) throw ConfigError("duplicate object id");
      obj.type = static_cast<ObjectType>(e.at("type").get<int>());
      obj.size = static_cast<SizeCode>(e.at("size").get<int>());
      obj.shape = static_cast<ShapeCode>(e.at("shape").get<int>());
      obj.geometry = parse_geometry(e.at("geometry"), where);
      auto pop = parse_level(e.at("population").get<std::string>());
      auto emp = parse_level(e.at("employment").get<std::string>());
      if (!pop || !emp) throw ConfigError("population/employment must be high, medium or low");
      obj.population = *pop;
      obj.employment = *emp;
      out.push_back(validated(std::move(obj)));
    } catch (const ConfigError& err) {
      if (std::string(err.what()).rfind(where, 0) == 0) throw;
      throw ConfigError(where + ": " + err.what());
    } catch (const std::exception& err) {
      throw ConfigError(where + ": " + err.what());
    }
  }
  return out;
}

std::vector<SpatialObject> load_objects(const std::filesystem::path& path) {
  return parse_objects(read_json(path, "objects"));
}

json objects_to_json(const std::vector<SpatialObject>& objects) {
  json arr = json::array();
  for (const auto& o : objects) {
    json g;
    if (const auto* p = std::get_if<Point>(&o.geometry)) {
      g = {{"kind", "point"}, {"coords", {p->x, p->y}}};
    } else {
      const auto& pts = std::holds_alternative<Polyline>(o.geometry) ? std::get<Polyline>(o.geometry).points
                                                                     : std::get<Polygon>(o.geometry).ring;
      json coords = json::array();
      for (Point p : pts) coords.push_back({p.x, p.y});
      g = {{"kind", std::holds_alternative<Polyline>(o.geometry) ? "polyline" : "polygon"}, {"coords", coords}};
    }
    arr.push_back({{"id", o.id},
                   {"type", static_cast<int>(o.type)},
                   {"size", static_cast<int>(o.size)},
                   {"shape", static_cast<int>(o.shape)},
                   {"geometry", g},
                   {"population", std::string(to_string(o.population))},
                   {"employment", std::string(to_string(o.employment))}});
  }
  return arr;
}

}  // namespace towerplan
