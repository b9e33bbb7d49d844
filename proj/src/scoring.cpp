#include "towerplan/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "towerplan/error.hpp"

namespace towerplan {

std::string_view to_string(PriorityClass c) { return c == PriorityClass::First ? "FIRST" : "SECOND"; }

std::string_view to_string(PlacementMode m) { return m == PlacementMode::Single ? "single" : "dual"; }

PriorityClass classify(SquarePos pos, int n) {
  if (n < 1 || pos.x < 1 || pos.x > n || pos.y < 1 || pos.y > n) {
    throw ScoringError("position (" + std::to_string(pos.x) + "," + std::to_string(pos.y) + ") outside 1.." +
                       std::to_string(n));
  }
  if (pos.x == 1 || pos.x == n || pos.y == 1 || pos.y == n) return PriorityClass::Second;
  return PriorityClass::First;
}

int class_score(PriorityClass c) { return c == PriorityClass::First ? 100 : 50; }

void SuitabilityTable::validate() const {
  for (int p : percent) {
    if (p < 0 || p > 100) throw ConfigError("suitability entries must lie in [0, 100]");
  }
  if (empty_default < 0 || empty_default > 100 || terrain_percent < 0 || terrain_percent > 100) {
    throw ConfigError("suitability defaults must lie in [0, 100]");
  }
  if (!(point_weight >= 0) || !(line_weight >= 0)) throw ConfigError("nominal weights must be non-negative");
}

std::vector<TypeWeight> square_type_weights(std::span<const SpatialObject> objects,
                                            std::span<const PlacedObject> placed, const Rect& square,
                                            const SuitabilityTable& table) {
  std::array<double, kObjectTypeCount> acc{};
  std::array<bool, kObjectTypeCount> seen{};
  for (const auto& p : placed) {
    const SpatialObject& obj = objects[p.object];
    double w = 0.0;
    switch (obj.shape) {
      case ShapeCode::Point: w = table.point_weight; break;
      case ShapeCode::Line: w = table.line_weight; break;
      case ShapeCode::Polygon: w = p.clipped_area_m2 / square.area(); break;
    }
    const auto k = static_cast<std::size_t>(obj.type) - 1;
    acc[k] += w;
    seen[k] = true;
  }
  std::vector<TypeWeight> out;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (seen[k]) out.push_back({static_cast<ObjectType>(k + 1), acc[k]});
  }
  return out;
}

Suitability suitability(std::span<const TypeWeight> weights, std::span<const RuleTypeSupport> rule_types,
                        const SuitabilityTable& table) {
  Suitability s;
  if (weights.empty()) {
    s.percent = table.empty_default;
  } else {
    double claimed = 0.0;
    double sum = 0.0;
    const TypeWeight* top = nullptr;
    for (const auto& tw : weights) {
      claimed += tw.weight;
      sum += tw.weight * table.at(tw.type);
      if (!top || tw.weight > top->weight) top = &tw;
    }
    s.dominant_by_area = top->type;
    double mean = 0.0;
    if (claimed < 1.0) {
      mean = sum + (1.0 - claimed) * table.terrain_percent;
    } else {
      mean = sum / claimed;
    }
    s.percent = std::clamp(static_cast<int>(std::lround(mean)), 0, 100);
  }

  if (!rule_types.empty()) {
    Rational best = rule_types.front().support;
    for (const auto& r : rule_types) best = std::max(best, r.support);
    for (const auto& r : rule_types) {
      if (r.support == best && std::find(s.dominant_by_rules.begin(), s.dominant_by_rules.end(), r.type) ==
                                   s.dominant_by_rules.end()) {
        s.dominant_by_rules.push_back(r.type);
      }
    }
    std::sort(s.dominant_by_rules.begin(), s.dominant_by_rules.end());
    s.consistent = s.dominant_by_area && std::find(s.dominant_by_rules.begin(), s.dominant_by_rules.end(),
                                                   *s.dominant_by_area) != s.dominant_by_rules.end();
  }
  return s;
}

GoodnessScore goodness(SquarePos pos, int n, int suitability_percent) {
  return {class_score(classify(pos, n)), std::clamp(suitability_percent, 0, 100)};
}

Placement select_placement(const InternalGrid& grid, std::span<const ScoredSquare> scores, int threshold) {
  if (scores.empty()) throw ScoringError("cell has no scored squares");
  const int n = grid.n();
  std::vector<const ScoredSquare*> by_index(grid.size(), nullptr);
  for (const auto& s : scores) {
    if (!grid.valid(s.pos)) throw ScoringError("scored square outside the internal grid");
    auto& slot = by_index[grid.index(s.pos)];
    if (slot) throw ScoringError("square scored twice");
    slot = &s;
  }
  if (std::find(by_index.begin(), by_index.end(), nullptr) != by_index.end()) {
    throw ScoringError("not every square of the cell is scored");
  }

  const Rect& cb = grid.cell_bounds();
  const double tile_h = cb.height() / n;
  const double tile_w = cb.width() / n;
  auto center_dist2 = [&](SquarePos p) {
    const double dx = (2 * p.x - n - 1) * tile_h;
    const double dy = (2 * p.y - n - 1) * tile_w;
    return dx * dx + dy * dy;
  };

  const ScoredSquare* best = nullptr;
  for (const ScoredSquare* s : by_index) {
    if (!best) {
      best = s;
      continue;
    }
    const int st = s->score.total();
    const int bt = best->score.total();
    if (st != bt) {
      if (st > bt) best = s;
      continue;
    }
    const double sd = center_dist2(s->pos);
    const double bd = center_dist2(best->pos);
    if (sd < bd || (sd == bd && s->pos < best->pos)) best = s;
  }

  Placement out;
  out.cell = grid.cell();
  if (best->score.total() >= threshold) {
    out.squares = {best->pos};
    out.scores = {best->score};
    return out;
  }

  out.meets_threshold = false;
  std::vector<const ScoredSquare*> border;
  for (const ScoredSquare* s : by_index) {
    if (classify(s->pos, n) == PriorityClass::Second) border.push_back(s);
  }
  if (border.size() < 2) {
    out.squares = {best->pos};
    out.scores = {best->score};
    return out;
  }

  // by_index is row-major, so (i, j) with i < j enumerates pairs in
  // lexicographic order and the first maximum is the smallest pair.
  std::size_t best_union = 0;
  int best_sum = -1;
  std::pair<const ScoredSquare*, const ScoredSquare*> pick{nullptr, nullptr};
  for (std::size_t i = 0; i < border.size(); ++i) {
    for (std::size_t j = i + 1; j < border.size(); ++j) {
      const std::array<SquarePos, 2> pair{border[i]->pos, border[j]->pos};
      const std::size_t u = union_size(pair, grid);
      const int sum = border[i]->score.total() + border[j]->score.total();
      if (u > best_union || (u == best_union && sum > best_sum)) {
        best_union = u;
        best_sum = sum;
        pick = {border[i], border[j]};
      }
    }
  }
  out.mode = PlacementMode::Dual;
  out.squares = {pick.first->pos, pick.second->pos};
  out.scores = {pick.first->score, pick.second->score};
  return out;
}

}  // namespace towerplan
