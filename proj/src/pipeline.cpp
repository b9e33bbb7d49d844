#include "towerplan/pipeline.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <exception>
#include <map>

#include <omp.h>

#include "towerplan/error.hpp"

namespace towerplan {

namespace {

std::string cell_locus(CellId id) { return "cell (" + std::to_string(id.row) + "," + std::to_string(id.col) + ")"; }

std::string square_locus(CellId id, SquarePos pos) {
  return cell_locus(id) + " square (" + std::to_string(pos.x) + "," + std::to_string(pos.y) + ")";
}

template <class F>
auto in_stage(const char* stage, const std::string& locus, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, locus, e.what());
  }
}

std::string fmt_fraction(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string type_names(const std::vector<ObjectType>& types) {
  std::string s;
  for (ObjectType t : types) {
    if (!s.empty()) s += "/";
    s += to_string(t);
  }
  return s;
}

void mine_square(SquareResult& sq, std::span<const SpatialObject* const> present, const PlanParams& params) {
  sq.records = build_square_database(present, params.distance_bins);
  const auto transactions = encode_transactions(sq.pos, sq.records);
  sq.transactions = transactions.size();

  std::vector<std::vector<Item>> rows;
  rows.reserve(transactions.size());
  for (const auto& t : transactions) rows.push_back(t.items);
  auto catalog = ItemCatalog<Item>::build(rows);
  sq.items = std::move(catalog.universe);
  // Fewer than two transactions carry no co-occurrence evidence.
  if (transactions.size() < 2) return;
  const auto frequent = apriori(catalog.transactions, params.minsup);
  sq.rules = generate_rules(frequent, params.minconf);
}

std::vector<RuleTypeSupport> rule_type_support(const SquareResult& sq) {
  std::map<ObjectType, Rational> best;
  for (const auto& rule : sq.rules) {
    for (const Itemset* side : {&rule.antecedent, &rule.consequent}) {
      for (ItemId id : *side) {
        const Item& item = sq.items[id];
        if (item.attribute != Attribute::Type) continue;
        const auto type = static_cast<ObjectType>(item.code);
        auto [it, inserted] = best.try_emplace(type, rule.support());
        if (!inserted) it->second = std::max(it->second, rule.support());
      }
    }
  }
  std::vector<RuleTypeSupport> out;
  for (const auto& [type, s] : best) out.push_back({type, s});
  return out;
}

RulesDigest digest(const SquareResult& sq) {
  RulesDigest d{sq.rules.size(), {}};
  std::vector<const AssociationRule*> order;
  for (const auto& r : sq.rules) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const AssociationRule* a, const AssociationRule* b) {
    if (a->confidence() != b->confidence()) return a->confidence() > b->confidence();
    return a->support() > b->support();
  });
  for (std::size_t i = 0; i < std::min<std::size_t>(3, order.size()); ++i) {
    d.top_rules.push_back(describe_rule(*order[i], sq.items));
  }
  return d;
}

}  // namespace

PlanParams PlanParams::from_config(const PlanConfig& cfg) {
  PlanParams p;
  p.minsup = Threshold::from_fraction(cfg.minsup);
  p.minconf = Threshold::from_fraction(cfg.minconf);
  p.threshold = cfg.threshold;
  p.suitability = cfg.suitability;
  p.distance_bins = cfg.distance_bins;
  return p;
}

std::string describe_rule(const AssociationRule& rule, std::span<const Item> items) {
  auto side = [&](const Itemset& s) {
    std::string out;
    for (ItemId id : s) {
      if (!out.empty()) out += " ^ ";
      out += to_string(items[id]);
    }
    return out;
  };
  return side(rule.antecedent) + " => " + side(rule.consequent) + " (s=" + fmt_fraction(rule.support().to_double()) +
         ", c=" + fmt_fraction(rule.confidence().to_double()) + ")";
}

CellResult process_cell(const Cell& cell, std::span<const SpatialObject> objects, const PlanParams& params,
                        Depth depth) {
  const InternalGrid& grid = cell.internal;
  const std::string locus = cell_locus(cell.id);

  CellResult out;
  out.id = cell.id;
  out.partial = cell.partial;
  out.n = grid.n();
  out.squares.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto& sq = out.squares[i];
    sq.pos = grid.position(i);
    sq.priority = in_stage("scoring", locus, [&] { return classify(sq.pos, grid.n()); });
    sq.elevation_m = grid.elevation(sq.pos);
  }
  if (depth == Depth::Classify) return out;

  const Assignment assignment = in_stage("spatialdb", locus, [&] { return assign_objects(objects, grid); });
  out.omitted = assignment.omitted;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto& sq = out.squares[i];
    const auto& placed = assignment.per_square[i];
    std::vector<const SpatialObject*> present;
    present.reserve(placed.size());
    for (const auto& p : placed) present.push_back(&objects[p.object]);
    in_stage("miner", square_locus(cell.id, sq.pos), [&] { mine_square(sq, present, params); });

    if (depth == Depth::Full) {
      in_stage("scoring", square_locus(cell.id, sq.pos), [&] {
        sq.weights = square_type_weights(objects, placed, grid.bounds(sq.pos), params.suitability);
        sq.suitability = suitability(sq.weights, rule_type_support(sq), params.suitability);
        sq.score = goodness(sq.pos, grid.n(), sq.suitability.percent);
      });
      if (!sq.suitability.consistent) {
        out.warnings.push_back(square_locus(cell.id, sq.pos) + ": rules point to " +
                               type_names(sq.suitability.dominant_by_rules) + " but area is dominated by " +
                               std::string(to_string(*sq.suitability.dominant_by_area)) + "; area wins");
      }
    }
  }
  if (depth == Depth::Mine) return out;

  std::vector<ScoredSquare> scored;
  scored.reserve(out.squares.size());
  for (const auto& sq : out.squares) scored.push_back({sq.pos, sq.score});
  Placement placement = in_stage("scoring", locus, [&] { return select_placement(grid, scored, params.threshold); });
  for (SquarePos p : placement.squares) placement.digests.push_back(digest(out.squares[grid.index(p)]));
  if (!placement.meets_threshold && placement.mode == PlacementMode::Single) {
    out.warnings.push_back(locus + ": best goodness " + std::to_string(placement.scores.front().total()) +
                           " below threshold and fewer than two border squares; kept a single antenna");
  }
  out.coverage = in_stage("coverage", locus, [&] { return cell_coverage(grid, placement.squares); });
  out.placement = std::move(placement);
  return out;
}

std::vector<CellResult> process_cells_serial(const ExternalGrid& grid, std::span<const SpatialObject> objects,
                                             const PlanParams& params, Depth depth) {
  std::vector<CellResult> results;
  results.reserve(grid.cells.size());
  for (const auto& cell : grid.cells) results.push_back(process_cell(cell, objects, params, depth));
  return results;
}

std::vector<CellResult> process_cells_parallel(const ExternalGrid& grid, std::span<const SpatialObject> objects,
                                               const PlanParams& params, Depth depth, int jobs) {
  const auto count = static_cast<std::ptrdiff_t>(grid.cells.size());
  std::vector<CellResult> results(grid.cells.size());
  std::vector<std::exception_ptr> errors(grid.cells.size());

#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = process_cell(grid.cells[static_cast<std::size_t>(i)], objects, params, depth);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }

  // Report the first failure in cell order so errors are deterministic too.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

PlanResult plan(const PlanConfig& config, const ElevationRaster& raster, std::vector<SpatialObject> objects,
                Depth depth, int jobs) {
  in_stage("config", "config", [&] { config.validate(); });
  PlanResult result;
  result.config = config;
  result.depth = depth;
  result.objects = std::move(objects);
  const PlanParams params = in_stage("config", "config", [&] { return PlanParams::from_config(config); });

  result.grid = in_stage("grid", config.raster.empty() ? "raster" : config.raster, [&] {
    return subdivide(build_external_grid(raster, config.cell_side_m), raster, config.antenna_radius_m,
                     config.square_side_m);
  });

  result.cells = jobs <= 1 ? process_cells_serial(result.grid, result.objects, params, depth)
                           : process_cells_parallel(result.grid, result.objects, params, depth, jobs);

  if (depth != Depth::Classify) {
    std::vector<std::size_t> misses(result.objects.size(), 0);
    for (const auto& c : result.cells) {
      for (std::size_t k : c.omitted) ++misses[k];
    }
    for (std::size_t k = 0; k < misses.size(); ++k) {
      if (misses[k] == result.cells.size()) {
        result.warnings.push_back("object " + result.objects[k].id + " lies outside every cell; omitted");
      }
    }
  }
  for (const auto& c : result.cells) {
    result.warnings.insert(result.warnings.end(), c.warnings.begin(), c.warnings.end());
  }

  if (depth == Depth::Full) {
    std::vector<Placement> placements;
    placements.reserve(result.cells.size());
    for (const auto& c : result.cells) placements.push_back(*c.placement);
    result.coverage = in_stage("coverage", "grid", [&] { return coverage(placements, result.grid); });
  }
  return result;
}

PlanResult plan(const PlanConfig& config, Depth depth, int jobs) {
  const ElevationRaster raster =
      in_stage("grid", config.raster_path.string(), [&] { return ingest_raster(config.raster_path); });
  std::vector<SpatialObject> objects;
  if (!config.objects_path.empty()) {
    objects = in_stage("spatialdb", config.objects_path.string(), [&] { return load_objects(config.objects_path); });
  }
  return plan(config, raster, std::move(objects), depth, jobs);
}

}  // namespace towerplan
