#include "towerplan/report.hpp"

#include <algorithm>
#include <cstdio>

#include "towerplan/error.hpp"

namespace towerplan {

namespace {

ReportJson cell_json(CellId id) { return ReportJson::array({id.row, id.col}); }
ReportJson pos_json(SquarePos p) { return ReportJson::array({p.x, p.y}); }

ReportJson itemset_json(const Itemset& s, const std::vector<Item>& items) {
  ReportJson arr = ReportJson::array();
  for (ItemId id : s) arr.push_back(to_string(items[id]));
  return arr;
}

ReportJson rule_json(const AssociationRule& r, const std::vector<Item>& items) {
  return {{"antecedent", itemset_json(r.antecedent, items)},
          {"consequent", itemset_json(r.consequent, items)},
          {"support", r.support().to_double()},
          {"confidence", r.confidence().to_double()},
          {"counts", {{"union", r.union_count}, {"antecedent", r.antecedent_count}, {"transactions", r.total}}}};
}

ReportJson goodness_json(const GoodnessScore& g) {
  return {{"class", g.class_component}, {"suitability", g.suitability_component}, {"total", g.total()}};
}

ReportJson record_json(const SquareRecord& r) {
  ReportJson j;
  j["object"] = r.object_id;
  j["type"] = static_cast<int>(r.type);
  j["size"] = static_cast<int>(r.size);
  j["shape"] = static_cast<int>(r.shape);
  j["direction"] = r.direction ? ReportJson::array({std::string(to_string(r.direction->code)), r.direction->target})
                               : ReportJson(nullptr);
  j["position"] = r.position ? ReportJson::array({std::string(to_string(r.position->code)), r.position->target})
                             : ReportJson(nullptr);
  if (r.distance) {
    j["distance"] = {{"target", r.distance->target}, {"meters", r.distance->meters}, {"bin", r.distance->label}};
  } else {
    j["distance"] = nullptr;
  }
  j["population"] = std::string(to_string(r.population));
  j["employment"] = std::string(to_string(r.employment));
  return j;
}

ReportJson config_json(const PlanConfig& c) {
  ReportJson suit = ReportJson::object();
  for (int code = 1; code <= kObjectTypeCount; ++code) {
    suit[std::to_string(code)] = c.suitability.percent[static_cast<std::size_t>(code) - 1];
  }
  return {{"raster", c.raster},
          {"objects", c.objects},
          {"cell_side_m", c.cell_side_m},
          {"antenna_radius_m", c.antenna_radius_m},
          {"square_side_m", c.square_side_m ? ReportJson(*c.square_side_m) : ReportJson(nullptr)},
          {"minsup", c.minsup},
          {"minconf", c.minconf},
          {"threshold", c.threshold},
          {"suitability", suit},
          {"empty_default", c.suitability.empty_default},
          {"terrain_percent", c.suitability.terrain_percent},
          {"point_weight", c.suitability.point_weight},
          {"line_weight", c.suitability.line_weight},
          {"distance_bins_m", c.distance_bins.thresholds_m()}};
}

void require_depth(const PlanResult& r, Depth d, const char* what) {
  if (static_cast<int>(r.depth) < static_cast<int>(d)) throw Error(std::string(what) + " needs a deeper pipeline run");
}

}  // namespace

ReportJson classify_document(const PlanResult& result) {
  ReportJson arr = ReportJson::array();
  for (const auto& c : result.cells) {
    ReportJson squares = ReportJson::array();
    int first = 0;
    for (const auto& sq : c.squares) {
      if (sq.priority == PriorityClass::First) ++first;
      squares.push_back({{"square", pos_json(sq.pos)}, {"class", std::string(to_string(sq.priority))}});
    }
    arr.push_back({{"cell", cell_json(c.id)},
                   {"n", c.n},
                   {"partial", c.partial},
                   {"first", first},
                   {"second", static_cast<int>(c.squares.size()) - first},
                   {"squares", squares}});
  }
  return arr;
}

ReportJson mine_document(const PlanResult& result) {
  require_depth(result, Depth::Mine, "mine document");
  ReportJson arr = ReportJson::array();
  for (const auto& c : result.cells) {
    for (const auto& sq : c.squares) {
      if (sq.transactions == 0) continue;
      ReportJson rules = ReportJson::array();
      for (const auto& r : sq.rules) rules.push_back(rule_json(r, sq.items));
      arr.push_back({{"cell", cell_json(c.id)},
                     {"square", pos_json(sq.pos)},
                     {"transactions", sq.transactions},
                     {"rules", rules}});
    }
  }
  return arr;
}

ReportJson plan_report(const PlanResult& result) {
  require_depth(result, Depth::Full, "plan report");
  ReportJson doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["config"] = config_json(result.config);

  const Rect& b = result.grid.bounds;
  doc["grid"] = {{"rows", result.grid.rows},
                 {"cols", result.grid.cols},
                 {"cell_side_m", result.grid.cell_side_m},
                 {"square_side_m", result.grid.cells.front().internal.square_side_m()},
                 {"bounds", {b.min_x, b.min_y, b.max_x, b.max_y}},
                 {"coordinate_convention",
                  "cell [row, col] 0-based from the top-left; square [x, y] 1-based with x the row from the top "
                  "and y the column from the left"}};
  doc["classify"] = classify_document(result);
  doc["mine"] = mine_document(result);

  ReportJson cells = ReportJson::array();
  for (const auto& c : result.cells) {
    ReportJson squares = ReportJson::array();
    for (const auto& sq : c.squares) {
      ReportJson records = ReportJson::array();
      for (const auto& r : sq.records) records.push_back(record_json(r));
      ReportJson weights = ReportJson::array();
      for (const auto& w : sq.weights) weights.push_back({{"type", static_cast<int>(w.type)}, {"weight", w.weight}});
      ReportJson by_rules = ReportJson::array();
      for (ObjectType t : sq.suitability.dominant_by_rules) by_rules.push_back(static_cast<int>(t));
      squares.push_back(
          {{"square", pos_json(sq.pos)},
           {"class", std::string(to_string(sq.priority))},
           {"elevation_m", sq.elevation_m ? ReportJson(*sq.elevation_m) : ReportJson(nullptr)},
           {"records", records},
           {"weights", weights},
           {"suitability", sq.suitability.percent},
           {"dominant_type_by_area",
            sq.suitability.dominant_by_area ? ReportJson(static_cast<int>(*sq.suitability.dominant_by_area))
                                            : ReportJson(nullptr)},
           {"dominant_types_by_rules", by_rules},
           {"rule_count", sq.rules.size()},
           {"goodness", goodness_json(sq.score)}});
    }
    cells.push_back({{"cell", cell_json(c.id)}, {"n", c.n}, {"partial", c.partial}, {"squares", squares}});
  }
  doc["squares"] = cells;

  ReportJson placements = ReportJson::array();
  for (const auto& c : result.cells) {
    const Placement& p = *c.placement;
    ReportJson chosen = ReportJson::array();
    for (std::size_t i = 0; i < p.squares.size(); ++i) {
      chosen.push_back({{"square", pos_json(p.squares[i])},
                        {"goodness", goodness_json(p.scores[i])},
                        {"rules", {{"count", p.digests[i].rule_count}, {"top", p.digests[i].top_rules}}}});
    }
    placements.push_back({{"cell", cell_json(p.cell)},
                          {"mode", std::string(to_string(p.mode))},
                          {"meets_threshold", p.meets_threshold},
                          {"squares", chosen}});
  }
  doc["placements"] = placements;

  const CoverageReport& cov = *result.coverage;
  ReportJson cov_cells = ReportJson::array();
  for (const auto& c : cov.cells) {
    ReportJson unc = ReportJson::array();
    for (SquarePos p : c.uncovered) unc.push_back(pos_json(p));
    cov_cells.push_back({{"cell", cell_json(c.cell)},
                         {"covered", c.covered},
                         {"total", c.total},
                         {"fraction", c.fraction()},
                         {"full", c.full()},
                         {"uncovered", unc}});
  }
  doc["coverage"] = {{"antennas", cov.antennas},
                     {"covered_squares", cov.covered_squares},
                     {"total_squares", cov.total_squares},
                     {"fraction", cov.total_squares ? static_cast<double>(cov.covered_squares) /
                                                          static_cast<double>(cov.total_squares)
                                                    : 0.0},
                     {"full", cov.full()},
                     {"cells", cov_cells}};
  doc["warnings"] = result.warnings;
  return doc;
}

std::string dump(const ReportJson& doc) { return doc.dump(2) + "\n"; }

std::string render_svg(const PlanResult& result) {
  require_depth(result, Depth::Full, "SVG rendering");
  const Rect& ext = result.grid.bounds;
  const double scale = 800.0 / std::max(ext.width(), ext.height());
  const double width = ext.width() * scale;
  const double height = ext.height() * scale;

  std::string out;
  char buf[256];
  auto rect = [&](const char* cls, const Rect& r, const char* extra) {
    std::snprintf(buf, sizeof buf, "  <rect class=\"%s\" x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"%s/>\n", cls,
                  (r.min_x - ext.min_x) * scale, (ext.max_y - r.max_y) * scale, r.width() * scale,
                  r.height() * scale, extra);
    out += buf;
  };

  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.3f\" height=\"%.3f\" viewBox=\"0 0 %.3f %.3f\">\n",
                width, height, width, height);
  out += buf;
  out +=
      "  <defs>\n"
      "    <pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
      "patternTransform=\"rotate(45)\">\n"
      "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n"
      "    </pattern>\n"
      "  </defs>\n"
      "  <style>\n"
      "    .square { fill: none; stroke: #bbbbbb; stroke-width: 0.5; }\n"
      "    .cell { fill: none; stroke: #333333; stroke-width: 2; }\n"
      "    .footprint { fill: #2e86de; fill-opacity: 0.25; stroke: none; }\n"
      "    .uncovered { fill: url(#hatch); stroke: none; }\n"
      "    .highlight { fill: #f39c12; fill-opacity: 0.8; stroke: #000000; stroke-width: 1; }\n"
      "  </style>\n";

  for (const auto& c : result.cells) {
    const Cell& cell = result.grid.at(c.id);
    const InternalGrid& g = cell.internal;
    std::snprintf(buf, sizeof buf, "  <g id=\"cell-%d-%d\">\n", c.id.row, c.id.col);
    out += buf;
    for (const auto& sq : g.squares()) rect("square", sq.bounds, "");
    std::vector<char> hit(g.size(), 0);
    for (SquarePos p : c.placement->squares) {
      for (SquarePos q : footprint(p, g).covered) hit[g.index(q)] = 1;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (hit[i]) rect("footprint", g.bounds(g.position(i)), "");
    }
    for (SquarePos p : c.coverage->uncovered) rect("uncovered", g.bounds(p), "");
    for (SquarePos p : c.placement->squares) rect("highlight", g.bounds(p), "");
    rect("cell", cell.bounds, "");
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace towerplan
