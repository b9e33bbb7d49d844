#include "towerplan/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace towerplan {

namespace {

// floor/ceil that ignore representation noise of exact multiples.
int floor_ratio(double num, double den) { return static_cast<int>(std::floor(num / den + 1e-9)); }
int ceil_ratio(double num, double den) { return static_cast<int>(std::ceil(num / den - 1e-9)); }

}  // namespace

InternalGrid::InternalGrid(CellId cell, Rect cell_bounds, int n, double square_side_m)
    : cell_(cell), cell_bounds_(cell_bounds), n_(n), square_side_m_(square_side_m), elevation_(size()) {
  if (n < 1) throw GridError("internal grid needs n >= 1");
}

double InternalGrid::x_edge(int k) const {
  if (k == n_) return cell_bounds_.max_x;
  return cell_bounds_.min_x + cell_bounds_.width() * k / n_;
}

double InternalGrid::y_edge(int k) const {
  if (k == n_) return cell_bounds_.min_y;
  return cell_bounds_.max_y - cell_bounds_.height() * k / n_;
}

Rect InternalGrid::bounds(SquarePos pos) const {
  if (!valid(pos)) {
    throw GridError("square (" + std::to_string(pos.x) + "," + std::to_string(pos.y) + ") outside 1.." +
                    std::to_string(n_));
  }
  return {x_edge(pos.y - 1), y_edge(pos.x), x_edge(pos.y), y_edge(pos.x - 1)};
}

std::vector<SquareId> InternalGrid::squares() const {
  std::vector<SquareId> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(square(position(i)));
  return out;
}

std::optional<SquarePos> InternalGrid::locate(Point p) const {
  if (!cell_bounds_.contains(p)) return std::nullopt;
  int col = static_cast<int>(std::floor((p.x - cell_bounds_.min_x) / cell_bounds_.width() * n_));
  int row = static_cast<int>(std::floor((cell_bounds_.max_y - p.y) / cell_bounds_.height() * n_));
  col = std::clamp(col, 0, n_ - 1);
  row = std::clamp(row, 0, n_ - 1);
  // Correct for rounding against the exact edges used by bounds().
  if (col + 1 < n_ && p.x >= x_edge(col + 1)) ++col;
  if (col > 0 && p.x < x_edge(col)) --col;
  if (row + 1 < n_ && p.y <= y_edge(row + 1)) ++row;
  if (row > 0 && p.y > y_edge(row)) --row;
  return SquarePos{row + 1, col + 1};
}

std::optional<double> InternalGrid::elevation(SquarePos pos) const {
  if (!valid(pos)) throw GridError("square outside internal grid");
  return elevation_[index(pos)];
}

InternalGrid InternalGrid::with_elevation(const ElevationRaster& raster) const {
  InternalGrid out = *this;
  std::vector<double> sum(size(), 0.0);
  std::vector<int> count(size(), 0);
  for (int row = 0; row < raster.nrows; ++row) {
    for (int col = 0; col < raster.ncols; ++col) {
      const double v = raster.at(row, col);
      if (raster.is_nodata(v)) continue;
      const Point c = raster.cell_center(row, col);
      // Centers on a shared cell edge belong to the neighbor to the east/south.
      if (c.x == cell_bounds_.max_x && cell_bounds_.max_x < raster.extent().max_x) continue;
      if (c.y == cell_bounds_.min_y && cell_bounds_.min_y > raster.extent().min_y) continue;
      if (auto pos = locate(c)) {
        sum[index(*pos)] += v;
        ++count[index(*pos)];
      }
    }
  }
  for (std::size_t i = 0; i < size(); ++i) {
    out.elevation_[i] = count[i] ? std::optional<double>(sum[i] / count[i]) : std::nullopt;
  }
  return out;
}

double square_side_for_radius(double antenna_radius_m) {
  if (!(antenna_radius_m > 0)) throw GridError("antenna radius must be positive");
  return 2.0 * antenna_radius_m / (3.0 * std::sqrt(2.0));
}

ExternalGrid build_external_grid(const ElevationRaster& raster, double cell_side_m) {
  if (!(cell_side_m > 0)) throw GridError("cell side must be positive");
  const Rect ext = raster.extent();
  if (cell_side_m > ext.width() || cell_side_m > ext.height()) {
    throw GridError("cell side " + std::to_string(cell_side_m) + " m exceeds raster extent " +
                    std::to_string(ext.width()) + " x " + std::to_string(ext.height()) + " m");
  }

  ExternalGrid grid;
  grid.cell_side_m = cell_side_m;
  grid.bounds = ext;
  grid.cols = ceil_ratio(ext.width(), cell_side_m);
  grid.rows = ceil_ratio(ext.height(), cell_side_m);
  grid.cells.reserve(static_cast<std::size_t>(grid.rows) * grid.cols);
  for (int row = 0; row < grid.rows; ++row) {
    for (int col = 0; col < grid.cols; ++col) {
      const bool last_col = col + 1 == grid.cols;
      const bool last_row = row + 1 == grid.rows;
      Rect b{ext.min_x + col * cell_side_m, last_row ? ext.min_y : ext.max_y - (row + 1) * cell_side_m,
             last_col ? ext.max_x : ext.min_x + (col + 1) * cell_side_m, ext.max_y - row * cell_side_m};
      const bool partial = b.width() < cell_side_m * (1 - 1e-9) || b.height() < cell_side_m * (1 - 1e-9);
      const CellId id{row, col};
      grid.cells.push_back(Cell{id, b, cell_side_m, partial, InternalGrid(id, b, 1, cell_side_m)});
    }
  }
  return grid;
}

InternalGrid build_internal_grid(const Cell& cell, double antenna_radius_m, std::optional<double> square_side_override) {
  if (!(antenna_radius_m > 0)) throw GridError("antenna radius must be positive");
  double side = square_side_for_radius(antenna_radius_m);
  if (square_side_override) {
    if (!(*square_side_override > 0)) throw GridError("square side override must be positive");
    side = *square_side_override;
  }
  const int n = std::max(1, floor_ratio(cell.nominal_side_m, side));
  return InternalGrid(cell.id, cell.bounds, n, side);
}

ExternalGrid subdivide(ExternalGrid grid, const ElevationRaster& raster, double antenna_radius_m,
                       std::optional<double> square_side_override) {
  for (auto& cell : grid.cells) {
    cell.internal = build_internal_grid(cell, antenna_radius_m, square_side_override).with_elevation(raster);
  }
  return grid;
}

ClassPosition square_class_position(const SquareId& square, const InternalGrid& grid) {
  if (!grid.valid(square.pos)) throw GridError("square outside internal grid");
  return {square.pos, grid.n()};
}

}  // namespace towerplan
